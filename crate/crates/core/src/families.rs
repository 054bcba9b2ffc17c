//! Table-1 families: parameters, constructors and free-action predicates.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::quintuple::{canonical_s, Quintuple};
use crate::s3groups::{Elem, S3SubgroupKind};
use crate::{Error, Result};

use S3SubgroupKind::*;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Family {
    F1,
    F1p,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F11p,
    F12,
    F13,
    F14,
    F15,
    F16,
    F17,
    F18,
    F19,
    F33,
    F34,
}

impl Family {
    pub const ALL: [Family; 23] = [
        Family::F1,
        Family::F1p,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5,
        Family::F6,
        Family::F7,
        Family::F8,
        Family::F9,
        Family::F10,
        Family::F11,
        Family::F11p,
        Family::F12,
        Family::F13,
        Family::F14,
        Family::F15,
        Family::F16,
        Family::F17,
        Family::F18,
        Family::F19,
        Family::F33,
        Family::F34,
    ];

    /// Number of integer parameters the family takes.
    pub fn arity(self) -> usize {
        use Family::*;
        match self {
            F1 | F1p | F11 | F11p => 4,
            F2 | F3 | F4 | F10 | F12 | F13 | F33 | F34 => 2,
            _ => 1,
        }
    }

    pub fn number(self) -> &'static str {
        use Family::*;
        match self {
            F1 => "1",
            F1p => "1p",
            F2 => "2",
            F3 => "3",
            F4 => "4",
            F5 => "5",
            F6 => "6",
            F7 => "7",
            F8 => "8",
            F9 => "9",
            F10 => "10",
            F11 => "11",
            F11p => "11p",
            F12 => "12",
            F13 => "13",
            F14 => "14",
            F15 => "15",
            F16 => "16",
            F17 => "17",
            F18 => "18",
            F19 => "19",
            F33 => "33",
            F34 => "34",
        }
    }

    pub fn from_number(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.number() == s)
    }

    pub fn has_twist(self) -> bool {
        matches!(self, Family::F1 | Family::F1p | Family::F11 | Family::F11p)
    }
}

/// A family with parameters; absent parameters are 1.
///
/// A `bis` spec (m, n) is the base family at (n, m) with the factors
/// exchanged, so the parameters read left to right as printed.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub bis: bool,
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub s: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum ManifoldClass {
    Lens,
    Prism,
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl ManifoldClass {
    pub fn name(self) -> &'static str {
        match self {
            ManifoldClass::Lens => "lens",
            ManifoldClass::Prism => "prism",
            ManifoldClass::Tetrahedral => "tetrahedral",
            ManifoldClass::Octahedral => "octahedral",
            ManifoldClass::Icosahedral => "icosahedral",
        }
    }

    pub fn parse(s: &str) -> Option<ManifoldClass> {
        [Self::Lens, Self::Prism, Self::Tetrahedral, Self::Octahedral, Self::Icosahedral]
            .into_iter()
            .find(|c| c.name() == s.to_ascii_lowercase())
    }

    /// Range of involution-class counts.
    pub fn class_count_range(self) -> (usize, usize) {
        match self {
            ManifoldClass::Lens => (3, 8),
            ManifoldClass::Prism => (3, 5),
            ManifoldClass::Tetrahedral => (2, 5),
            _ => (1, 2),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = [self.m, self.n, self.r, self.s];
        let args: Vec<String> = args[..self.family.arity()].iter().map(|a| a.to_string()).collect();
        write!(f, "F{}{}({})", self.family.number(), if self.bis { "bis" } else { "" }, args.join(","))
    }
}

fn dihedral(n: u64) -> S3SubgroupKind {
    S3SubgroupKind::dihedral(n).expect("n >= 1")
}

impl GroupSpec {
    pub fn new(family: Family, bis: bool, m: u64, n: u64, r: u64, s: u64) -> GroupSpec {
        GroupSpec { family, bis, m, n, r, s }
    }

    /// Spec with the given leading parameters, the rest set to 1.
    pub fn of(family: Family, params: &[u64]) -> GroupSpec {
        let p = |k: usize| params.get(k).copied().unwrap_or(1);
        GroupSpec { family, bis: false, m: p(0), n: p(1), r: p(2), s: p(3) }
    }

    pub fn bis(mut self) -> GroupSpec {
        self.bis = true;
        self
    }

    /// The unswapped spec underlying a bis spec.
    fn base(&self) -> GroupSpec {
        if self.bis {
            GroupSpec { bis: false, m: self.n, n: self.m, ..*self }
        } else {
            *self
        }
    }

    /// Checks the parameter conditions, returning the violated one.
    pub fn validate(&self) -> Result<()> {
        match self.violation() {
            Some(msg) => Err(Error::InvalidParameters(format!("{}: {}", self, msg))),
            None => Ok(()),
        }
    }

    fn violation(&self) -> Option<&'static str> {
        use Family::*;
        let g = self.base();
        let (m, n, r, s) = (g.m, g.n, g.r, g.s);
        let fail = Some;
        let ar = self.family.arity();
        if [m, n, r, s][..ar].contains(&0) {
            return fail("parameters must be positive");
        }
        if self.bis && ar == 4 {
            return fail("bis is not used for the twisted families");
        }
        match self.family {
            F1 | F11 if s.gcd(&r) != 1 => return fail("gcd(s,r)=1 required"),
            F1p | F11p => {
                if s.gcd(&r) != 1 {
                    return fail("gcd(s,r)=1 required");
                }
                if m % 2 == 0 || n % 2 == 0 {
                    return fail("m and n must be odd");
                }
                if r % 2 != 0 {
                    return fail("r must be even");
                }
            }
            F34 if m % 2 == 0 || n % 2 == 0 => return fail("m and n must be odd"),
            _ => {}
        }
        let need_dihedral = match self.family {
            F2 | F3 | F34 => n >= 2,
            F10 | F33 => m >= 2 && n >= 2,
            F13 => n >= 2,
            F14 | F15 | F16 | F19 => m >= 2,
            F11 => m * r >= 2,
            F11p => m * r >= 4,
            _ => true,
        };
        if !need_dihedral {
            return fail("binary dihedral factor D*_4n needs n >= 2");
        }
        None
    }

    /// Order of Φ(G) from the closed-form order of the family.
    pub fn rotation_order(&self) -> u64 {
        use Family::*;
        let g = self.base();
        let (m, n, r) = (g.m, g.n, g.r);
        match self.family {
            F1 => 2 * m * n * r,
            F1p => m * n * r / 2,
            F2 | F3 => 4 * m * n,
            F4 | F10 | F13 | F33 => 8 * m * n,
            F5 | F6 => 24 * m,
            F7 | F8 | F14 | F16 | F18 => 48 * m,
            F9 => 120 * m,
            F11 => 4 * m * n * r,
            F11p => m * n * r,
            F12 => 16 * m * n,
            F15 | F17 => 96 * m,
            F19 => 240 * m,
            F34 => 2 * m * n,
        }
    }

    /// Canonical twist (±s mod r).
    pub fn canonical(&self) -> GroupSpec {
        let mut g = *self;
        if g.family.has_twist() {
            g.s = canonical_s(g.s as i64, g.r);
        }
        g
    }

    /// Builds the quintuple in canonical position.
    pub fn construct(&self) -> Result<Quintuple> {
        use Family::*;
        self.validate()?;
        let g = self.base();
        let (m, n, r, s) = (g.m, g.n, g.r, g.s as i64);
        let root = Elem::root;
        let q = |l, lk, rr, rk, phi| Quintuple::standard(l, lk, rr, rk, phi);
        // generator of D*_8k modulo D*_4k; for k = 1 the kernel is <i>, so use j
        let step = |k: u64| if k >= 2 { root(1, 4 * k) } else { Elem::J };
        let out = match self.family {
            F1 => q(Cyclic(2 * m * r), Cyclic(2 * m), Cyclic(2 * n * r), Cyclic(2 * n), vec![(root(1, 2 * m * r), root(s, 2 * n * r))]),
            F1p => q(Cyclic(m * r), Cyclic(m), Cyclic(n * r), Cyclic(n), vec![(root(1, m * r), root(s, n * r))]),
            F2 => q(Cyclic(2 * m), Cyclic(2 * m), dihedral(n), dihedral(n), vec![]),
            F3 => q(Cyclic(4 * m), Cyclic(2 * m), dihedral(n), Cyclic(2 * n), vec![(root(1, 4 * m), Elem::J)]),
            F4 => q(Cyclic(4 * m), Cyclic(2 * m), dihedral(2 * n), dihedral(n), vec![(root(1, 4 * m), step(n))]),
            F5 => q(Cyclic(2 * m), Cyclic(2 * m), BinaryTetrahedral, BinaryTetrahedral, vec![]),
            F6 => q(Cyclic(6 * m), Cyclic(2 * m), BinaryTetrahedral, BinaryDihedral(8), vec![(root(1, 6 * m), Elem::alpha())]),
            F7 => q(Cyclic(2 * m), Cyclic(2 * m), BinaryOctahedral, BinaryOctahedral, vec![]),
            F8 => q(Cyclic(4 * m), Cyclic(2 * m), BinaryOctahedral, BinaryTetrahedral, vec![(root(1, 4 * m), Elem::beta())]),
            F9 => q(Cyclic(2 * m), Cyclic(2 * m), BinaryIcosahedral, BinaryIcosahedral, vec![]),
            F10 => q(dihedral(m), dihedral(m), dihedral(n), dihedral(n), vec![]),
            F11 => q(
                dihedral(m * r),
                Cyclic(2 * m),
                dihedral(n * r),
                Cyclic(2 * n),
                vec![(root(1, 2 * m * r), root(s, 2 * n * r)), (Elem::J, Elem::J)],
            ),
            F11p => q(
                dihedral(m * r / 2),
                Cyclic(m),
                dihedral(n * r / 2),
                Cyclic(n),
                vec![(root(1, m * r), root(s, n * r)), (Elem::J, Elem::J)],
            ),
            F12 => q(dihedral(2 * m), dihedral(m), dihedral(2 * n), dihedral(n), vec![(step(m), step(n))]),
            F13 => q(dihedral(2 * m), dihedral(m), dihedral(n), Cyclic(2 * n), vec![(step(m), Elem::J)]),
            F14 => q(dihedral(m), dihedral(m), BinaryTetrahedral, BinaryTetrahedral, vec![]),
            F15 => q(dihedral(m), dihedral(m), BinaryOctahedral, BinaryOctahedral, vec![]),
            F16 => q(dihedral(m), Cyclic(2 * m), BinaryOctahedral, BinaryTetrahedral, vec![(Elem::J, Elem::beta())]),
            F17 => q(dihedral(2 * m), dihedral(m), BinaryOctahedral, BinaryTetrahedral, vec![(step(m), Elem::beta())]),
            F18 => q(
                dihedral(3 * m),
                Cyclic(2 * m),
                BinaryOctahedral,
                BinaryDihedral(8),
                vec![(root(1, 6 * m), Elem::alpha()), (Elem::J, Elem::beta())],
            ),
            F19 => q(dihedral(m), dihedral(m), BinaryIcosahedral, BinaryIcosahedral, vec![]),
            // the cyclic part on each side goes to the non-cyclic coset on the other
            F33 => q(dihedral(2 * m), Cyclic(2 * m), dihedral(2 * n), Cyclic(2 * n), vec![(root(1, 4 * m), Elem::J), (Elem::J, root(1, 4 * n))]),
            F34 => q(Cyclic(4 * m), Cyclic(m), dihedral(n), Cyclic(n), vec![(root(1, 4 * m), Elem::J)]),
        };
        Ok(if self.bis { out.swap() } else { out })
    }

    /// The free-action criteria for the manifold families.
    ///
    /// Family 6 has no usable closed form, so the exact fixed-point scan decides.
    pub fn acts_freely_on_sphere(&self) -> bool {
        use Family::*;
        if self.violation().is_some() {
            return false;
        }
        if self.bis {
            // the factor swap is conjugation by an orientation-reversing isometry
            return self.base().acts_freely_on_sphere();
        }
        let (m, n, r, s) = (self.m, self.n, self.r, self.s);
        match self.family {
            F1 => {
                s.gcd(&r) == 1
                    && m.gcd(&n) == 1
                    && (m * n % 2 == 0 || r % 2 == 1)
                    && gcd_i(n as i64 - (s * m) as i64, 2 * m * n * r) == gcd_i((n + s * m) as i64, 2 * m * n * r)
            }
            F1p => {
                m % 2 == 1
                    && n % 2 == 1
                    && r % 2 == 0
                    && s.gcd(&r) == 1
                    && m.gcd(&n) == 1
                    && gcd_i(n as i64 - (s * m) as i64, m * n * r) == gcd_i((n + s * m) as i64, m * n * r)
            }
            F2 => m.gcd(&(2 * n)) == 1,
            F3 => m.gcd(&n) == 1 && m % 2 == 0,
            F5 | F7 => m.gcd(&6) == 1,
            F6 => self
                .construct()
                .and_then(|q| q.realize())
                .map(|h| crate::oracle::acts_freely_bruteforce(&h))
                .unwrap_or(false),
            F9 => m.gcd(&30) == 1,
            _ => false,
        }
    }

    pub fn manifold_class(&self) -> Result<ManifoldClass> {
        use Family::*;
        if !self.acts_freely_on_sphere() {
            return Err(Error::Precondition(format!("{} does not act freely", self)));
        }
        Ok(match self.family {
            F1 | F1p => ManifoldClass::Lens,
            F2 | F3 => ManifoldClass::Prism,
            F5 | F6 => ManifoldClass::Tetrahedral,
            F7 => ManifoldClass::Octahedral,
            _ => ManifoldClass::Icosahedral,
        })
    }

    /// Du Val notation of the spec.
    pub fn du_val(&self) -> String {
        match self.construct() {
            Ok(q) => {
                let base = format!("({}/{},{}/{})", q.l, q.lk, q.r, q.rk);
                if self.family.has_twist() && self.r > 2 {
                    format!("{}_{}", base, self.s)
                } else {
                    base
                }
            }
            Err(_) => self.to_string(),
        }
    }
}

pub fn gcd_i(a: i64, b: u64) -> u64 {
    (a.unsigned_abs()).gcd(&b)
}

/// Parses `F<k>[p|bis](a,b,...)`. Errors carry the byte offset.
pub fn parse_spec(text: &str) -> std::result::Result<GroupSpec, (usize, String)> {
    let t = text.trim();
    let open = t.find('(').ok_or((t.len(), "expected '('".to_string()))?;
    if !t.ends_with(')') {
        return Err((t.len(), "expected ')'".into()));
    }
    let head = &t[..open];
    let Some(tag) = head.strip_prefix('F').or_else(|| head.strip_prefix('f')) else {
        return Err((0, "expected 'F'".into()));
    };
    let (num, bis) = match tag.strip_suffix("bis") {
        Some(x) => (x, true),
        None => (tag, false),
    };
    let family = Family::from_number(num).ok_or((1, format!("unknown family '{}'", tag)))?;
    let inner = &t[open + 1..t.len() - 1];
    let mut params = Vec::new();
    let mut pos = open + 1;
    for part in inner.split(',') {
        let v: u64 = part.trim().parse().map_err(|_| (pos, format!("expected a non-negative integer, got '{}'", part.trim())))?;
        params.push(v);
        pos += part.len() + 1;
    }
    if params.len() != family.arity() {
        return Err((open, format!("F{} takes {} parameters, got {}", family.number(), family.arity(), params.len())));
    }
    let mut g = GroupSpec::of(family, &params);
    g.bis = bis;
    Ok(g)
}

/// All valid specs of the free-acting families with rotation order ≤ bound.
pub fn manifold_specs(bound: u64) -> Vec<GroupSpec> {
    use Family::*;
    let mut out = Vec::new();
    for fam in [F1, F1p, F2, F3, F5, F6, F7, F9] {
        for g in specs_of(fam, bound) {
            if g.acts_freely_on_sphere() {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}

/// All valid canonical specs of a family with rotation order ≤ bound.
pub fn specs_of(fam: Family, bound: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    let probe = |p: &[u64]| GroupSpec::of(fam, p);
    match fam.arity() {
        1 => {
            for m in 1.. {
                let g = probe(&[m]);
                if g.rotation_order() > bound {
                    break;
                }
                if g.violation().is_none() {
                    out.push(g);
                }
            }
        }
        2 => {
            for m in 1.. {
                if probe(&[m, 1]).rotation_order() > bound {
                    break;
                }
                for n in 1.. {
                    let g = probe(&[m, n]);
                    if g.rotation_order() > bound {
                        break;
                    }
                    if g.violation().is_none() {
                        out.push(g);
                    }
                }
            }
        }
        _ => {
            // m·n·r is bounded by k for these four families
            let k = match fam {
                Family::F1 => bound / 2,
                Family::F1p => 2 * bound,
                Family::F11 => bound / 4,
                _ => bound,
            };
            for m in 1..=k {
                for n in 1..=k / m {
                    for r in 1..=k / (m * n) {
                        let smax = if r <= 2 { 1 } else { r / 2 };
                        for s in 1..=smax {
                            let g = probe(&[m, n, r, s]);
                            if g.violation().is_none() && g.rotation_order() <= bound {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for t in ["F1(1,2,3,1)", "F1p(3,5,2,1)", "F2bis(1,2)", "F9(1)", "F11p(1,1,4,1)"] {
            assert_eq!(parse_spec(t).unwrap().to_string(), t);
        }
        assert!(parse_spec("G1(1)").is_err());
        assert!(parse_spec("F1(1,2)").is_err());
        assert!(parse_spec("F99(1)").is_err());
    }

    #[test]
    fn validation() {
        assert!(GroupSpec::of(Family::F1, &[0, 1, 1, 1]).validate().is_err());
        assert!(GroupSpec::of(Family::F1, &[1, 1, 4, 2]).validate().is_err());
        assert!(GroupSpec::of(Family::F1p, &[1, 1, 3, 1]).validate().is_err());
        assert!(GroupSpec::of(Family::F2, &[1, 1]).validate().is_err());
        assert!(GroupSpec::of(Family::F2, &[1, 2]).validate().is_ok());
    }

    #[test]
    fn free_examples() {
        assert!(GroupSpec::of(Family::F2, &[1, 2]).acts_freely_on_sphere());
        assert!(!GroupSpec::of(Family::F5, &[2]).acts_freely_on_sphere());
        assert!(!GroupSpec::of(Family::F1, &[1, 1, 3, 1]).acts_freely_on_sphere());
        assert_eq!(GroupSpec::of(Family::F3, &[2, 3]).manifold_class(), Ok(ManifoldClass::Prism));
        assert_eq!(GroupSpec::of(Family::F9, &[1]).manifold_class(), Ok(ManifoldClass::Icosahedral));
        assert_eq!(GroupSpec::of(Family::F1, &[1, 1, 1, 1]).manifold_class(), Ok(ManifoldClass::Lens));
    }

    #[test]
    fn constructed_orders() {
        for fam in Family::ALL {
            for g in specs_of(fam, 100) {
                let q = g.construct().unwrap();
                let h = q.realize().unwrap_or_else(|e| panic!("{}: {}", g, e));
                assert_eq!(h.rotation_order() as u64, g.rotation_order(), "{}", g);
            }
        }
    }
}
