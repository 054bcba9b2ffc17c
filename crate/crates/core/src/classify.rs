//! Geometric reading of each involution from the Seifert data of its quotient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::families::GroupSpec;
use crate::involutions::{classes, InvolutionClass};
use crate::seifert::{SeifertInvariants, Surface};
use crate::tables::Flag;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Underlying {
    Sphere,
    Lens(u64, i64),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MontesinosLink {
    pub half_twists: BigInt,
    /// c_i/b_i as (c_i, b_i) with |c_i| ≤ b_i/2.
    pub tangles: Vec<(i64, u64)>,
}

#[derive(Clone, Debug)]
pub struct InvolutionReport {
    pub class: InvolutionClass,
    pub fibration: SeifertInvariants,
    pub acts_freely: bool,
    pub hyperelliptic: bool,
    pub underlying: Underlying,
    pub montesinos: Option<MontesinosLink>,
}

impl InvolutionReport {
    /// Free-action cell as the table prints it, falling back to the computed value for blank cells.
    pub fn table_free(&self) -> bool {
        match self.class.row.free {
            Flag::Yes => true,
            Flag::No => false,
            Flag::Computed => self.acts_freely,
        }
    }

    pub fn table_hyperelliptic(&self) -> bool {
        match self.class.row.hyperelliptic {
            Flag::Yes => true,
            Flag::No => false,
            Flag::Computed => self.hyperelliptic,
        }
    }
}

/// Free iff no fibre is singular: the singular index of a fibre with invariant p/a is gcd(p,a).
pub fn acts_freely(fib: &SeifertInvariants) -> bool {
    if fib.base.surface == Surface::D2 {
        return false;
    }
    fib.point_singular_indices().iter().all(|&k| k == 1) && fib.singular_component_indices.iter().all(|&k| k == 1)
}

fn denom(x: &BigRational) -> u64 {
    x.denom().try_into().expect("cone order fits u64")
}

pub fn underlying_space(fib: &SeifertInvariants) -> Underlying {
    if let Some((l, q)) = fib.underlying_lens {
        return if l == 1 { Underlying::Sphere } else { Underlying::Lens(l, q) };
    }
    let cones = fib.base.interior_cone_orders.len();
    let cone_invs = &fib.local_invariants[..cones];
    match fib.base.surface {
        Surface::D2 => {
            let sphere = match cone_invs {
                [] => true,
                [x] => x.is_integer(),
                _ => false,
            };
            if sphere {
                Underlying::Sphere
            } else {
                Underlying::Other
            }
        }
        Surface::S2 => {
            // the underlying space keeps the rational invariants, with orders their reduced denominators
            let orders: Vec<u64> = cone_invs.iter().map(denom).filter(|&d| d > 1).collect();
            if orders.len() > 2 {
                return Underlying::Other;
            }
            let h1 = orders.iter().fold(fib.euler.abs(), |acc, &d| acc * BigRational::from_integer(d.into()));
            if h1.is_one() {
                Underlying::Sphere
            } else {
                Underlying::Other
            }
        }
        Surface::RP2 => Underlying::Other,
    }
}

/// Tangle data of the branching link of a hyperelliptic quotient over a disk.
pub fn montesinos(fib: &SeifertInvariants) -> Result<MontesinosLink> {
    if fib.base.surface != Surface::D2 {
        return Err(Error::RefibrationRequired(format!("{} is not a disk base", fib.base)));
    }
    if !fib.base.interior_cone_orders.is_empty() {
        return Err(Error::Precondition(format!("{} has interior cone points", fib.base)));
    }
    if underlying_space(fib) != Underlying::Sphere {
        return Err(Error::Precondition("quotient is not S³".into()));
    }
    let mut sum = BigRational::zero();
    let mut tangles = Vec::new();
    for (x, &b) in fib.local_invariants.iter().zip(&fib.base.corner_orders) {
        let c = x * BigRational::from_integer(b.into());
        let c: i64 = c.to_integer().try_into().map_err(|_| Error::Arithmetic("tangle numerator".into()))?;
        // representative in (−b/2, b/2]; b/2 itself only occurs for b = 2
        let c = if 2 * c > b as i64 { c - b as i64 } else { c };
        sum += BigRational::new(c.into(), b.into());
        tangles.push((c, b));
    }
    let k = -BigRational::from_integer(2.into()) * &fib.euler - sum;
    if !k.is_integer() {
        return Err(Error::Consistency(format!("half-twist count {} is not an integer", k)));
    }
    if tangles.len() > 3 {
        return Err(Error::Consistency(format!("{} tangles", tangles.len())));
    }
    Ok(MontesinosLink { half_twists: k.to_integer(), tangles })
}

/// Classes, quotients and their geometric flags for a free-acting spec.
pub fn build_report(spec: &GroupSpec) -> Result<Vec<InvolutionReport>> {
    let mut out = Vec::new();
    for class in classes(spec)? {
        let fibration = class.row.fibration()?;
        let underlying = underlying_space(&fibration);
        let hyperelliptic = underlying == Underlying::Sphere;
        let montesinos = if hyperelliptic && fibration.base.surface == Surface::D2 {
            Some(montesinos(&fibration)?)
        } else {
            None
        };
        out.push(InvolutionReport {
            acts_freely: acts_freely(&fibration),
            hyperelliptic,
            underlying,
            montesinos,
            fibration,
            class,
        });
    }
    let hyper = out.iter().filter(|r| r.hyperelliptic).count();
    if hyper != 1 {
        return Err(Error::Consistency(format!("{}: {} hyperelliptic classes", spec, hyper)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::seifert::{frac, BaseOrbifold};

    fn fib(base: BaseOrbifold, inv: &[(i64, i64)], e: (i64, i64)) -> SeifertInvariants {
        SeifertInvariants::new(base, inv.iter().map(|&(p, q)| frac(p, q)).collect(), frac(e.0, e.1)).unwrap()
    }

    #[test]
    fn free_and_not_free() {
        let f = fib(BaseOrbifold::sphere(&[2, 2, 4]), &[(3, 2), (3, 2), (3, 4)], (-3, 4));
        assert!(acts_freely(&f));
        let f = fib(BaseOrbifold::sphere(&[2, 3, 3]), &[(10, 2), (10, 3), (10, 3)], (-5, 3));
        assert!(!acts_freely(&f));
        let f = fib(BaseOrbifold::disk(&[], &[2, 3, 5]), &[(1, 2), (1, 3), (1, 5)], (-1, 60));
        assert!(!acts_freely(&f));
    }

    #[test]
    fn sphere_detection() {
        let f = fib(BaseOrbifold::sphere(&[2, 2, 7]), &[(2, 2), (2, 2), (1, 7)], (-1, 7));
        assert_eq!(underlying_space(&f), Underlying::Sphere);
        let f = fib(BaseOrbifold::disk(&[], &[2, 3, 5]), &[(1, 2), (1, 3), (1, 5)], (-1, 60));
        assert_eq!(underlying_space(&f), Underlying::Sphere);
        let f = fib(BaseOrbifold::sphere(&[2, 3, 5]), &[(1, 2), (1, 3), (1, 5)], (-1, 30));
        assert_eq!(underlying_space(&f), Underlying::Other);
    }

    #[test]
    fn montesinos_anchors() {
        let f = fib(BaseOrbifold::disk(&[], &[2, 3, 4]), &[(1, 2), (1, 3), (1, 4)], (-1, 24));
        let m = montesinos(&f).unwrap();
        assert_eq!(m.half_twists, BigInt::from(-1));
        assert_eq!(m.tangles, vec![(1, 2), (1, 3), (1, 4)]);
        let f = fib(BaseOrbifold::disk(&[], &[]), &[], (-1, 1));
        let m = montesinos(&f).unwrap();
        assert_eq!((m.half_twists, m.tangles.len()), (BigInt::from(2), 0));
        let f = fib(BaseOrbifold::sphere(&[2, 2, 7]), &[(2, 2), (2, 2), (1, 7)], (-1, 7));
        assert!(matches!(montesinos(&f), Err(Error::RefibrationRequired(_))));
    }

    #[test]
    fn reports() {
        let r = build_report(&GroupSpec::of(Family::F9, &[1])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].class.extension.to_string(), "(C4/C4,I*/I*)");
        assert!(r[0].hyperelliptic && !r[0].acts_freely);
        let r = build_report(&GroupSpec::of(Family::F2, &[3, 4])).unwrap();
        assert_eq!(r.len(), 5);
        let free: Vec<_> = r.iter().filter(|x| x.acts_freely).collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].class.extension.to_string(), "(C6/C6,D*32/D*32)");
        let r = build_report(&GroupSpec::of(Family::F7, &[5])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| !x.acts_freely));
    }
}
