//! Seifert invariants of quotient orbifolds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use serde::{Deserialize, Serialize};

use crate::families::{Family, GroupSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    S2,
    D2,
    RP2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseOrbifold {
    pub surface: Surface,
    pub interior_cone_orders: Vec<u64>,
    pub corner_orders: Vec<u64>,
}

impl BaseOrbifold {
    pub fn new(surface: Surface, cones: &[u64], corners: &[u64]) -> BaseOrbifold {
        assert!(corners.is_empty() || surface == Surface::D2);
        BaseOrbifold {
            surface,
            interior_cone_orders: cones.to_vec(),
            corner_orders: corners.to_vec(),
        }
    }

    pub fn sphere(cones: &[u64]) -> BaseOrbifold {
        BaseOrbifold::new(Surface::S2, cones, &[])
    }

    pub fn disk(cones: &[u64], corners: &[u64]) -> BaseOrbifold {
        BaseOrbifold::new(Surface::D2, cones, corners)
    }

    pub fn projective(cones: &[u64]) -> BaseOrbifold {
        BaseOrbifold::new(Surface::RP2, cones, &[])
    }

    pub fn point_count(&self) -> usize {
        self.interior_cone_orders.len() + self.corner_orders.len()
    }

    /// Cone orders followed by corner orders, in the order local invariants are stored.
    pub fn point_orders(&self) -> Vec<u64> {
        let mut v = self.interior_cone_orders.clone();
        v.extend(&self.corner_orders);
        v
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for BaseOrbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.surface {
            Surface::S2 => "S²",
            Surface::D2 => "D²",
            Surface::RP2 => "RP²",
        };
        write!(f, "{}", name)?;
        if self.surface == Surface::D2 {
            if self.point_count() > 0 {
                write!(f, "({};{})", join(&self.interior_cone_orders), join(&self.corner_orders))?;
            }
        } else if !self.interior_cone_orders.is_empty() {
            write!(f, "({})", join(&self.interior_cone_orders))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub base: BaseOrbifold,
    /// One per cone point then one per corner point, reduced into [0,1).
    pub local_invariants: Vec<BigRational>,
    pub euler: BigRational,
    pub singular_component_indices: Vec<u64>,
    pub underlying_lens: Option<(u64, i64)>,
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl SeifertInvariants {
    pub fn new(base: BaseOrbifold, invariants: Vec<BigRational>, euler: BigRational) -> Result<SeifertInvariants> {
        if invariants.len() != base.point_count() {
            return Err(Error::Structural(format!(
                "{} needs {} local invariants, got {}",
                base,
                base.point_count(),
                invariants.len()
            )));
        }
        Ok(SeifertInvariants {
            base,
            local_invariants: invariants.iter().map(mod_one).collect(),
            euler,
            singular_component_indices: Vec::new(),
            underlying_lens: None,
        })
    }

    /// Singular index of the fibre over each cone or corner point, read off the reduced invariant.
    pub fn point_singular_indices(&self) -> Vec<u64> {
        self.base
            .point_orders()
            .iter()
            .zip(&self.local_invariants)
            .map(|(&a, x)| {
                let den: u64 = x.denom().try_into().unwrap_or(1);
                a / den.max(1)
            })
            .collect()
    }

    pub fn obstruction(&self) -> BigRational {
        self.local_invariants.iter().fold(self.euler.clone(), |acc, x| acc + x)
    }

    pub fn is_integral(&self) -> bool {
        self.obstruction().is_integer()
    }
}

fn show_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv: Vec<String> = self.local_invariants.iter().map(show_rat).collect();
        write!(f, "{} [{}] e={}", self.base, inv.join(", "), show_rat(&self.euler))?;
        if let Some((l, q)) = self.underlying_lens {
            write!(f, " L({},{})", l, q)?;
        }
        Ok(())
    }
}

/// Intermediate values of the gcd chain for the cyclic twisted families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub h: i128,
    pub m1: i128,
    pub n1: i128,
    pub s: i128,
    pub a: i128,
    pub b1: i128,
    pub b2: i128,
    pub nu: i128,
    pub l1: i128,
    pub l2: i128,
    pub d: i128,
    pub g: i128,
    pub l: i128,
    pub gbar: i128,
    pub cbar: i128,
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    a.gcd(&b).gcd(&c)
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if den == 0 || num % den != 0 {
        return Err(Error::Arithmetic(format!("{} = {}/{} is not an integer", what, num, den)));
    }
    Ok(num / den)
}

/// Inverse modulo `m` in [0,m); modulus 1 gives 0.
pub fn mod_inverse(x: i128, m: i128) -> Result<i128> {
    if m == 1 {
        return Ok(0);
    }
    let e = x.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return Err(Error::Arithmetic(format!("{} has no inverse mod {}", x, m)));
    }
    Ok(e.x.rem_euclid(m))
}

/// Smallest divisor `nu` of `top` with gcd(top/nu, other) = 1.
fn minimal_nu(top: i128, other: i128) -> Result<i128> {
    (1..=top)
        .find(|nu| top % nu == 0 && (top / nu).gcd(&other) == 1)
        .ok_or_else(|| Error::Arithmetic(format!("no admissible nu for {} and {}", top, other)))
}

/// s odd representative: when r is odd and s even, r - s gives a conjugate group.
fn odd_twist(r: i128, s: i128) -> i128 {
    let s = if r == 1 { 1 } else { s.rem_euclid(r) };
    if s % 2 == 0 && r % 2 == 1 {
        r - s
    } else {
        s
    }
}

pub fn chain_family1(m: u64, n: u64, r: u64, s: u64) -> Result<Chain> {
    let (m, n, r) = (m as i128, n as i128, r as i128);
    let s = odd_twist(r, s as i128);
    let h = m.gcd(&n);
    let (m1, n1) = (m / h, n / h);
    let big = 2 * m1 * n1 * r;
    let a = gcd3(n1 - s * m1, n1 + s * m1, big);
    let b1 = ((n1 - s * m1) / a).gcd(&(big / a));
    let b2 = ((n1 + s * m1) / a).gcd(&(big / a));
    let (nu, l1, l2);
    if (m1 * n1) % 2 == 0 {
        nu = minimal_nu(exact_div(n1, a, "n'/a")?, a)?;
        l1 = 1;
        l2 = 1;
    } else {
        nu = minimal_nu(exact_div(2 * n1, a, "2n'/a")?, a / 2)?;
        let li = |b: i128| -> Result<i128> { Ok(if exact_div(r, b, "r/b")? % 2 == 0 { 2 } else { 1 }) };
        l1 = li(b1)?;
        l2 = li(b2)?;
    }
    let d = exact_div(nu * nu * a * (n1 + s * m1) + 2 * n1 * m1 * r, l2 * a * nu * b2, "d")?;
    let g = exact_div(nu * nu * a * (n1 - s * m1) - 2 * n1 * m1 * r, l1 * a * nu * b1, "g")?;
    let l = exact_div(big, l1 * l2 * b1 * b2, "l")?;
    finish_chain(Chain { h, m1, n1, s, a, b1, b2, nu, l1, l2, d, g, l, gbar: 0, cbar: 0 }, r)
}

pub fn chain_family1prime(m: u64, n: u64, r: u64, s: u64) -> Result<Chain> {
    let (m, n, r, s) = (m as i128, n as i128, r as i128, (s % r) as i128);
    let h = m.gcd(&n);
    let (m1, n1) = (m / h, n / h);
    let big = m1 * n1 * r;
    let a = gcd3(n1 - s * m1, n1 + s * m1, big);
    let b1 = ((n1 - s * m1) / a).gcd(&(big / a));
    let b2 = ((n1 + s * m1) / a).gcd(&(big / a));
    let nu = minimal_nu(exact_div(2 * n1, a, "2n'/a")?, exact_div(a, 2, "a/2")?)?;
    let d = exact_div(nu * nu * a * (n1 + s * m1) + 2 * n1 * m1 * r, 2 * a * nu * b2, "d")?;
    let g = exact_div(nu * nu * a * (n1 - s * m1) - 2 * n1 * m1 * r, 2 * a * nu * b1, "g")?;
    let l = exact_div(big, 2 * b1 * b2, "l")?;
    finish_chain(Chain { h, m1, n1, s, a, b1, b2, nu, l1: 1, l2: 1, d, g, l, gbar: 0, cbar: 0 }, r)
}

fn finish_chain(mut c: Chain, r: i128) -> Result<Chain> {
    c.gbar = mod_inverse(c.g, c.l)?;
    let k = exact_div(2 * c.n1, c.a * c.nu, "2n'/(a nu)")?;
    c.cbar = mod_inverse(c.nu * c.s + r * k, c.n1 * r)?;
    Ok(c)
}

fn rat(p: i128, q: i128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Shared tail of the cyclic and dihedral formulas. `order` is the cone order at both points.
fn assemble(c: &Chain, order: i128, euler: BigRational, disk: bool) -> Result<SeifertInvariants> {
    let k2 = c.l2 * c.b2 * c.h;
    let k1 = c.l1 * c.b1 * c.h;
    let x2 = rat(c.d * c.cbar * k2, order);
    let x1 = rat(-c.g * c.cbar * k1, order);
    let (invs, orders) = if order >= 2 {
        (vec![x2, x1], vec![order as u64, order as u64])
    } else {
        (vec![], vec![])
    };
    let base = if disk {
        BaseOrbifold::disk(&[], &orders)
    } else {
        BaseOrbifold::sphere(&orders)
    };
    let mut fib = SeifertInvariants::new(base, invs, euler)?;
    fib.singular_component_indices = vec![k2 as u64, k1 as u64];
    fib.underlying_lens = Some(if disk {
        (1, 0)
    } else {
        (c.l as u64, (c.d * c.gbar).rem_euclid(c.l) as i64)
    });
    Ok(fib)
}

pub fn fibration_family1(m: u64, n: u64, r: u64, s: u64) -> Result<SeifertInvariants> {
    let c = chain_family1(m, n, r, s)?;
    let nr = (n * r) as i128;
    assemble(&c, nr, rat(-2 * m as i128, nr), false)
}

pub fn fibration_family1prime(m: u64, n: u64, r: u64, s: u64) -> Result<SeifertInvariants> {
    if m % 2 == 0 || n % 2 == 0 || r % 2 == 1 || s.gcd(&r) != 1 {
        return Err(Error::Precondition(format!("Family 1' needs m,n odd, r even, gcd(s,r)=1: {} {} {} {}", m, n, r, s)));
    }
    let c = chain_family1prime(m, n, r, s)?;
    let nr = (n * r) as i128;
    assemble(&c, nr / 2, rat(-2 * m as i128, nr), false)
}

pub fn fibration_family11(m: u64, n: u64, r: u64, s: u64, prime: bool) -> Result<SeifertInvariants> {
    let nr = (n * r) as i128;
    let e = rat(-(m as i128), nr);
    if prime {
        let c = chain_family1prime(m, n, r, s)?;
        assemble(&c, nr / 2, e, true)
    } else {
        let c = chain_family1(m, n, r, s)?;
        assemble(&c, nr, e, true)
    }
}

/// Formula dispatch for the four twisted cyclic/dihedral families.
pub fn fibration_twisted(spec: &GroupSpec) -> Result<SeifertInvariants> {
    let (m, n, r, s) = (spec.m, spec.n, spec.r, spec.s);
    match spec.family {
        Family::F1 => fibration_family1(m, n, r, s),
        Family::F1p => fibration_family1prime(m, n, r, s),
        Family::F11 => fibration_family11(m, n, r, s, false),
        Family::F11p => fibration_family11(m, n, r, s, true),
        _ => Err(Error::Precondition(format!("{} is not a twisted family", spec))),
    }
}

/// Seifert data of the quotient by `ext`, read from the fibration table row of `parent`.
pub fn fibration_from_row(ext: &GroupSpec, parent: &GroupSpec) -> Result<SeifertInvariants> {
    let row = crate::tables::find_row(parent, ext)?;
    row.fibration()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family1_unit() {
        let c = chain_family1(1, 1, 1, 1).unwrap();
        assert_eq!((c.h, c.a, c.b1, c.b2, c.nu, c.l1, c.l2, c.d, c.g, c.l), (1, 2, 1, 1, 1, 1, 1, 3, -1, 2));
        let f = fibration_family1(1, 1, 1, 1).unwrap();
        assert_eq!(f.underlying_lens, Some((2, 1)));
        assert_eq!(f.euler, frac(-2, 1));
        assert!(f.local_invariants.is_empty());
    }

    #[test]
    fn family1_r2() {
        let c = chain_family1(1, 1, 2, 1).unwrap();
        assert_eq!((c.a, c.b1, c.b2, c.l1, c.l2, c.d, c.g, c.l), (2, 2, 1, 1, 2, 2, -1, 1));
        let f = fibration_family1(1, 1, 2, 1).unwrap();
        assert_eq!(f.singular_component_indices, vec![2, 2]);
        assert_eq!(f.point_singular_indices(), vec![2, 2]);
    }

    #[test]
    fn family1prime_unit() {
        let c = chain_family1prime(1, 1, 2, 1).unwrap();
        assert_eq!((c.a, c.b1, c.b2, c.l), (2, 1, 1, 1));
        let f = fibration_family1prime(1, 1, 2, 1).unwrap();
        assert_eq!(f.underlying_lens.unwrap().0, 1);
        assert_eq!(f.euler, frac(-1, 1));
    }

    #[test]
    fn family11_shape() {
        let f = fibration_family11(1, 3, 2, 1, false).unwrap();
        assert_eq!(f.base, BaseOrbifold::disk(&[], &[6, 6]));
        assert_eq!(f.euler, frac(-1, 6));
        assert_eq!(f.underlying_lens, Some((1, 0)));
        let g = fibration_family11(1, 3, 2, 1, true).unwrap();
        assert_eq!(g.base, BaseOrbifold::disk(&[], &[3, 3]));
    }

    #[test]
    fn display() {
        let b = BaseOrbifold::disk(&[3], &[2]);
        assert_eq!(b.to_string(), "D²(3;2)");
        assert_eq!(BaseOrbifold::sphere(&[]).to_string(), "S²");
        let f = SeifertInvariants::new(BaseOrbifold::sphere(&[2, 3, 5]), vec![frac(2, 2), frac(2, 3), frac(2, 5)], frac(-1, 15)).unwrap();
        assert_eq!(f.to_string(), "S²(2,3,5) [0, 2/3, 2/5] e=-1/15");
        assert!(f.is_integral());
    }
}
