//! Finite subgroups of S³×S³ containing ±(1,1) in the (L, L_K, R, R_K, φ) model.

use rustc_hash::FxHashSet as HashSet;

use crate::families::{Family, GroupSpec};
use crate::s3groups::{cyclic_parts, identify_kind, Elem, S3SubgroupKind, Turn};
use crate::{Error, Result};

use S3SubgroupKind::*;

pub type Pair = (Elem, Elem);

/// A subgroup H = {(x,y) ∈ L×R : φ(xL_K) = yR_K}.
///
/// The kernels are given by generators and φ by images of coset generators,
/// so the same type also describes groups that are not in canonical position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quintuple {
    pub l: S3SubgroupKind,
    pub lk: S3SubgroupKind,
    pub r: S3SubgroupKind,
    pub rk: S3SubgroupKind,
    pub lk_gens: Vec<Elem>,
    pub rk_gens: Vec<Elem>,
    pub phi: Vec<Pair>,
}

/// Canonical generators of a finite kind.
pub fn kind_generators(k: S3SubgroupKind) -> Vec<Elem> {
    match k {
        Cyclic(n) => vec![Elem::root(1, n)],
        BinaryDihedral(o) => vec![Elem::root(1, o / 2), Elem::J],
        BinaryTetrahedral => vec![Elem::I, Elem::J, Elem::alpha()],
        BinaryOctahedral => vec![Elem::I, Elem::J, Elem::alpha(), Elem::beta()],
        BinaryIcosahedral => vec![Elem::I, Elem::J, Elem::alpha(), Elem::gamma()],
        _ => vec![],
    }
}

impl Quintuple {
    pub fn kinds(&self) -> [S3SubgroupKind; 4] {
        [self.l, self.lk, self.r, self.rk]
    }

    /// Canonical-position quintuple with φ given on coset generators.
    pub fn standard(
        l: S3SubgroupKind,
        lk: S3SubgroupKind,
        r: S3SubgroupKind,
        rk: S3SubgroupKind,
        phi: Vec<Pair>,
    ) -> Quintuple {
        Quintuple { l, lk, r, rk, lk_gens: kind_generators(lk), rk_gens: kind_generators(rk), phi }
    }

    /// Exchanges the two factors.
    pub fn swap(&self) -> Quintuple {
        Quintuple {
            l: self.r,
            lk: self.rk,
            r: self.l,
            rk: self.lk,
            lk_gens: self.rk_gens.clone(),
            rk_gens: self.lk_gens.clone(),
            phi: self.phi.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    fn orders(&self) -> Result<(u64, u64, u64, u64)> {
        let o = |k: S3SubgroupKind| k.order().ok_or_else(|| Error::Structural(format!("{} is not finite", k)));
        Ok((o(self.l)?, o(self.lk)?, o(self.r)?, o(self.rk)?))
    }

    /// |H|/2, the order of the rotation group Φ(H).
    pub fn rotation_order(&self) -> u64 {
        let (l, _, _, rk) = self.orders().expect("finite quintuple");
        l * rk / 2
    }

    fn generators(&self) -> Vec<Pair> {
        let mut g: Vec<Pair> = self.lk_gens.iter().map(|&a| (a, Elem::ONE)).collect();
        g.extend(self.rk_gens.iter().map(|&b| (Elem::ONE, b)));
        g.extend(self.phi.iter().copied());
        g.push((Elem::MINUS_ONE, Elem::MINUS_ONE));
        g
    }

    /// Enumerates H exactly.
    pub fn realize(&self) -> Result<PairGroup> {
        let (l, lk, r, rk) = self.orders()?;
        if l / lk != r / rk || l % lk != 0 || r % rk != 0 {
            return Err(Error::Structural(format!(
                "coset counts differ: |{}/{}| vs |{}/{}|",
                self.l, self.lk, self.r, self.rk
            )));
        }
        let expect = (l * rk) as usize;
        let g = PairGroup::generate(&self.generators(), Some(expect))?;
        if g.len() != expect {
            return Err(Error::Structural(format!("phi is not a homomorphism: |H| = {} not {}", g.len(), expect)));
        }
        let kinds = g.projections().map(|s| identify_kind(&s).expect("finite subgroup of S3"));
        if kinds != self.kinds() {
            let [a, b, c, d] = kinds;
            return Err(Error::Structural(format!("realized ({}/{},{}/{}) differs from {}", a, b, c, d, self)));
        }
        Ok(g)
    }
}

impl std::fmt::Display for Quintuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}/{},{}/{})", self.l, self.lk, self.r, self.rk)
    }
}

/// An explicit finite subgroup of S³×S³.
#[derive(Clone, Debug)]
pub struct PairGroup {
    elems: Vec<Pair>,
    set: HashSet<Pair>,
    gens: Vec<Pair>,
}

impl PairGroup {
    /// Closure of `gens` under multiplication; fails once `limit` is exceeded.
    pub fn generate(gens: &[Pair], limit: Option<usize>) -> Result<PairGroup> {
        let one = (Elem::ONE, Elem::ONE);
        let mut elems = vec![one];
        let mut set: HashSet<Pair> = HashSet::from_iter([one]);
        let mut k = 0;
        while k < elems.len() {
            let (a, b) = elems[k];
            for &(x, y) in gens {
                let p = (a.mul(x), b.mul(y));
                if set.insert(p) {
                    elems.push(p);
                    if limit.is_some_and(|l| elems.len() > l) {
                        return Err(Error::Structural(format!("group exceeds {} elements", limit.unwrap())));
                    }
                }
            }
            k += 1;
        }
        Ok(PairGroup { elems, set, gens: gens.to_vec() })
    }

    /// The generators the group was built from.
    pub fn gens(&self) -> &[Pair] {
        &self.gens
    }

    pub fn elems(&self) -> &[Pair] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, p: &Pair) -> bool {
        self.set.contains(p)
    }

    pub fn rotation_order(&self) -> usize {
        self.elems.len() / 2
    }

    /// Does (p,q) normalize this group? Checking the generators suffices.
    pub fn normalized_by(&self, f: Pair) -> bool {
        let fi = (f.0.inv(), f.1.inv());
        self.gens.iter().all(|&(a, b)| self.set.contains(&(fi.0.mul(a).mul(f.0), fi.1.mul(b).mul(f.1))))
    }

    /// The group generated by this one and `f`.
    pub fn extend(&self, f: Pair) -> Result<PairGroup> {
        let mut gens = self.small_generators();
        gens.push(f);
        PairGroup::generate(&gens, Some(2 * self.len()))
    }

    /// H ∪ f·H, for f normalizing H with f² ∈ H and f ∉ H; the caller guarantees these.
    pub fn adjoin_coset(&self, f: Pair) -> PairGroup {
        let mut elems = self.elems.clone();
        elems.extend(self.elems.iter().map(|&(a, b)| (f.0.mul(a), f.1.mul(b))));
        let set = elems.iter().copied().collect();
        let mut gens = self.gens.clone();
        gens.push(f);
        PairGroup { elems, set, gens }
    }

    /// The image under exchanging the factors.
    pub fn swapped(&self) -> PairGroup {
        let sw = |v: &[Pair]| v.iter().map(|&(a, b)| (b, a)).collect::<Vec<_>>();
        let elems = sw(&self.elems);
        let set = elems.iter().copied().collect();
        PairGroup { elems, set, gens: sw(&self.gens) }
    }

    /// A generating set picked greedily from the elements.
    pub fn small_generators(&self) -> Vec<Pair> {
        let mut gens: Vec<Pair> = Vec::new();
        let mut covered: HashSet<Pair> = HashSet::from_iter([(Elem::ONE, Elem::ONE)]);
        let mut order: Vec<Pair> = self.elems.clone();
        // high-order elements first keeps the list short
        order.sort_by_key(|(a, b)| std::cmp::Reverse(a.order().max(b.order())));
        for p in order {
            if covered.contains(&p) {
                continue;
            }
            gens.push(p);
            covered = PairGroup::generate(&gens, None).unwrap().set;
            if covered.len() == self.len() {
                break;
            }
        }
        gens
    }

    fn left(&self) -> Vec<Elem> {
        dedup(self.elems.iter().map(|p| p.0))
    }

    fn right(&self) -> Vec<Elem> {
        dedup(self.elems.iter().map(|p| p.1))
    }

    // pairs are distinct, so the kernels need no deduplication
    fn left_kernel(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elems.iter().filter(|p| p.1 == Elem::ONE).map(|p| p.0).collect();
        v.sort_unstable();
        v
    }

    fn right_kernel(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.elems.iter().filter(|p| p.0 == Elem::ONE).map(|p| p.1).collect();
        v.sort_unstable();
        v
    }

    /// Element sets (L, L_K, R, R_K).
    pub fn projections(&self) -> [Vec<Elem>; 4] {
        [self.left(), self.left_kernel(), self.right(), self.right_kernel()]
    }

    /// Extracts the quintuple: kinds of the projections and kernels and φ on generators.
    pub fn quintuple(&self) -> Quintuple {
        self.quintuple_from(self.projections())
    }

    /// As `quintuple`, reusing already computed projections.
    pub fn quintuple_from(&self, projections: [Vec<Elem>; 4]) -> Quintuple {
        let [l, lk, r, rk] = projections;
        let kind = |s: &[Elem]| identify_kind(s).expect("finite subgroup of S3");
        let lk_gens = set_generators(&lk);
        let rk_gens = set_generators(&rk);
        let mut phi = Vec::new();
        let mut covered: HashSet<Elem> = lk.iter().copied().collect();
        let mut by_order = l.clone();
        by_order.sort_by_key(|e| std::cmp::Reverse(e.order()));
        for &x in &by_order {
            if covered.contains(&x) {
                continue;
            }
            let y = self.elems.iter().find(|p| p.0 == x).unwrap().1;
            phi.push((x, y));
            let mut gens = lk_gens.clone();
            gens.extend(phi.iter().map(|p| p.0));
            covered = closure(&gens).into_iter().collect();
        }
        Quintuple { l: kind(&l), lk: kind(&lk), r: kind(&r), rk: kind(&rk), lk_gens, rk_gens, phi }
    }
}

fn dedup(it: impl Iterator<Item = Elem>) -> Vec<Elem> {
    let mut v: Vec<Elem> = it.collect::<HashSet<_>>().into_iter().collect();
    v.sort_unstable();
    v
}

/// Subgroup of S³ generated by `gens`.
pub fn closure(gens: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ONE];
    let mut seen: HashSet<Elem> = HashSet::from_iter([Elem::ONE]);
    let mut k = 0;
    while k < out.len() {
        for &g in gens {
            let p = out[k].mul(g);
            if seen.insert(p) {
                out.push(p);
            }
        }
        k += 1;
    }
    out
}

fn set_generators(set: &[Elem]) -> Vec<Elem> {
    let mut sorted = set.to_vec();
    sorted.sort_by_key(|e| std::cmp::Reverse(e.order()));
    let mut gens = Vec::new();
    let mut covered: HashSet<Elem> = HashSet::from_iter([Elem::ONE]);
    for x in sorted {
        if covered.contains(&x) {
            continue;
        }
        gens.push(x);
        covered = closure(&gens).into_iter().collect();
        if covered.len() == set.len() {
            break;
        }
    }
    gens
}

fn conj_set(set: &[Elem], g: Elem) -> HashSet<Elem> {
    let gi = g.inv();
    set.iter().map(|&x| gi.mul(x).mul(g)).collect()
}

/// Checks the conjugation lemma conditions for (g, f) carrying q to q'.
pub fn is_conjugating_witness(q: &Quintuple, q2: &Quintuple, g: Elem, f: Elem) -> bool {
    if (q.l.order(), q.lk.order(), q.r.order(), q.rk.order())
        != (q2.l.order(), q2.lk.order(), q2.r.order(), q2.rk.order())
    {
        return false;
    }
    let (Ok(h), Ok(h2)) = (q.realize(), q2.realize()) else {
        return false;
    };
    let a = h.projections();
    let b = h2.projections();
    for (k, x) in [g, g, f, f].iter().enumerate() {
        let set_b: HashSet<Elem> = b[k].iter().copied().collect();
        if conj_set(&a[k], *x) != set_b {
            return false;
        }
    }
    let (gi, fi) = (g.inv(), f.inv());
    q.phi.iter().all(|&(x, y)| h2.contains(&(gi.mul(x).mul(g), fi.mul(y).mul(f))))
}

/// Recovers the twist parameter: the folded angle of a partner of a
/// generator of the cyclic part of L with angle exactly 1/|C|.
fn twist(h: &PairGroup, lc: &[Elem], rc_order: u64, r: u64) -> Result<u64> {
    let lo = lc.len() as u64;
    let x = *lc
        .iter()
        .find(|e| e.theta() == Turn::new(1, lo))
        .ok_or_else(|| Error::Unclassified("no generator of the cyclic part".into()))?;
    let y = h.elems().iter().find(|p| p.0 == x).unwrap().1;
    let t = y.theta();
    if rc_order % t.den() != 0 {
        return Err(Error::Unclassified("partner outside the cyclic part".into()));
    }
    let t = t.num() * (rc_order / t.den());
    Ok(canonical_s(t as i64, r))
}

/// Canonical representative of ±s mod r in [1, r/2] (1 when r ≤ 2).
pub fn canonical_s(s: i64, r: u64) -> u64 {
    if r <= 2 {
        return 1;
    }
    let a = s.rem_euclid(r as i64) as u64;
    a.min(r - a)
}

fn dihedral_twisted(a: u64, b: u64, c: u64, d: u64) -> Option<(Family, u64, u64, u64)> {
    let rr = a / (2 * b);
    if a % (2 * b) != 0 || c != 2 * d * rr {
        None
    } else if b % 2 == 0 && d % 2 == 0 {
        Some((Family::F11, b / 2, d / 2, rr))
    } else if b % 2 == 1 && d % 2 == 1 && rr % 2 == 0 {
        Some((Family::F11p, b, d, rr))
    } else {
        None
    }
}

fn shape(
    l: S3SubgroupKind,
    lk: S3SubgroupKind,
    r: S3SubgroupKind,
    rk: S3SubgroupKind,
) -> Option<(Family, u64, u64, u64)> {
    use Family::*;
    let o = |k: S3SubgroupKind| k.order().unwrap();
    let (a, b, c, d) = (o(l), o(lk), o(r), o(rk));
    match (l, lk, r, rk) {
        (Cyclic(_), Cyclic(_), Cyclic(_), Cyclic(_)) => {
            let rr = a / b;
            if b % 2 == 0 && d % 2 == 0 {
                Some((F1, b / 2, d / 2, rr))
            } else if b % 2 == 1 && d % 2 == 1 && rr % 2 == 0 {
                Some((F1p, b, d, rr))
            } else {
                None
            }
        }
        (Cyclic(_), Cyclic(_), BinaryDihedral(_), BinaryDihedral(_)) if a == b && c == d => Some((F2, a / 2, c / 4, 1)),
        (Cyclic(_), Cyclic(_), BinaryDihedral(_), Cyclic(_)) if a == 2 * b && b % 2 == 0 && c == 2 * d => {
            Some((F3, b / 2, c / 4, 1))
        }
        (Cyclic(_), Cyclic(_), BinaryDihedral(_), Cyclic(_)) if a == 4 * b && b % 2 == 1 && c == 4 * d && d % 2 == 1 => {
            Some((F34, b, d, 1))
        }
        (Cyclic(_), Cyclic(_), BinaryDihedral(_), BinaryDihedral(_)) if a == 2 * b && c == 2 * d => {
            Some((F4, a / 4, c / 8, 1))
        }
        (Cyclic(_), Cyclic(_), BinaryTetrahedral, BinaryTetrahedral) if a == b => Some((F5, a / 2, 1, 1)),
        (Cyclic(_), Cyclic(_), BinaryTetrahedral, BinaryDihedral(8)) if a == 3 * b && b % 2 == 0 => {
            Some((F6, b / 2, 1, 1))
        }
        (Cyclic(_), Cyclic(_), BinaryOctahedral, BinaryOctahedral) if a == b => Some((F7, a / 2, 1, 1)),
        (Cyclic(_), Cyclic(_), BinaryOctahedral, BinaryTetrahedral) if a == 2 * b && b % 2 == 0 => {
            Some((F8, b / 2, 1, 1))
        }
        (Cyclic(_), Cyclic(_), BinaryIcosahedral, BinaryIcosahedral) if a == b => Some((F9, a / 2, 1, 1)),
        (BinaryDihedral(_), BinaryDihedral(_), BinaryDihedral(_), BinaryDihedral(_)) if a == b && c == d => {
            Some((F10, a / 4, c / 4, 1))
        }
        (BinaryDihedral(_), Cyclic(_), BinaryDihedral(_), Cyclic(_)) if dihedral_twisted(a, b, c, d).is_some() => {
            dihedral_twisted(a, b, c, d)
        }
        (BinaryDihedral(_), BinaryDihedral(_) | Cyclic(4), BinaryDihedral(_), BinaryDihedral(_) | Cyclic(4))
            if a == 2 * b && c == 2 * d =>
        {
            Some((F12, a / 8, c / 8, 1))
        }
        (BinaryDihedral(_), BinaryDihedral(_) | Cyclic(4), BinaryDihedral(_), Cyclic(_)) if a == 2 * b && c == 2 * d => {
            Some((F13, a / 8, c / 4, 1))
        }
        (BinaryDihedral(_), BinaryDihedral(_), BinaryTetrahedral, BinaryTetrahedral) if a == b => Some((F14, a / 4, 1, 1)),
        (BinaryDihedral(_), BinaryDihedral(_), BinaryOctahedral, BinaryOctahedral) if a == b => Some((F15, a / 4, 1, 1)),
        (BinaryDihedral(_), Cyclic(_), BinaryOctahedral, BinaryTetrahedral) if a == 2 * b => Some((F16, a / 4, 1, 1)),
        (BinaryDihedral(_), BinaryDihedral(_) | Cyclic(4), BinaryOctahedral, BinaryTetrahedral) if a == 2 * b => {
            Some((F17, a / 8, 1, 1))
        }
        (BinaryDihedral(_), Cyclic(_), BinaryOctahedral, BinaryDihedral(8)) if a == 6 * b => Some((F18, a / 12, 1, 1)),
        (BinaryDihedral(_), BinaryDihedral(_), BinaryIcosahedral, BinaryIcosahedral) if a == b => Some((F19, a / 4, 1, 1)),
        _ => None,
    }
}

/// Names the Table-1 family of a realized group, with canonical parameters.
pub fn identify_group(h: &PairGroup) -> Result<GroupSpec> {
    identify_realized(h, &h.quintuple())
}

/// As `identify_group`, with the quintuple of `h` already known.
pub fn identify_realized(h: &PairGroup, q: &Quintuple) -> Result<GroupSpec> {
    let (found, swapped) = match shape(q.l, q.lk, q.r, q.rk) {
        Some(f) => (f, false),
        None => match shape(q.r, q.rk, q.l, q.lk) {
            Some(f) => (f, true),
            None => {
                return Err(Error::Unclassified(format!("({}/{},{}/{})", q.l, q.lk, q.r, q.rk)));
            }
        },
    };
    let (mut family, m, n, r) = found;
    let hh;
    let h = if swapped {
        hh = h.swapped();
        &hh
    } else {
        h
    };
    let [l, _, rset, _] = h.projections();
    let s = match family {
        Family::F1 | Family::F1p => twist(h, &l, rset.len() as u64, r)?,
        Family::F11 | Family::F11p => {
            // the cyclic parts must correspond under φ; in Q₈ there are three candidates
            let (lcs, rcs) = (cyclic_parts(&l), cyclic_parts(&rset));
            let matched = lcs.iter().flat_map(|lc| rcs.iter().map(move |rc| (lc, rc))).find(|(lc, rc)| {
                h.elems().iter().all(|p| lc.binary_search(&p.0).is_ok() == rc.binary_search(&p.1).is_ok())
            });
            match matched.map(|(lc, rc)| twist(h, lc, rc.len() as u64, r)) {
                Some(Ok(s)) => s,
                None if family == Family::F11 && r == 2 => {
                    family = Family::F33;
                    1
                }
                _ => return Err(Error::Unclassified("cyclic parts do not correspond".into())),
            }
        }
        _ => 1,
    };
    let r = if family == Family::F33 { 1 } else { r };
    if swapped && family == Family::F33 {
        Ok(GroupSpec::new(family, false, n, m, 1, 1))
    } else if swapped {
        Ok(GroupSpec::new(family, true, n, m, r, s))
    } else {
        Ok(GroupSpec::new(family, false, m, n, r, s))
    }
}

/// identify_group applied to a quintuple.
pub fn identify_family(q: &Quintuple) -> Result<GroupSpec> {
    identify_group(&q.realize()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_realizations() {
        let q = Quintuple::standard(Cyclic(2), Cyclic(2), BinaryDihedral(8), BinaryDihedral(8), vec![]);
        let h = q.realize().unwrap();
        assert_eq!(h.len(), 16);
        assert_eq!(q.rotation_order(), 8);

        let q = Quintuple::standard(Cyclic(2), Cyclic(1), Cyclic(2), Cyclic(1), vec![(Elem::MINUS_ONE, Elem::MINUS_ONE)]);
        assert_eq!(q.realize().unwrap().len(), 2);

        let q = Quintuple::standard(Cyclic(4), Cyclic(2), Cyclic(4), Cyclic(2), vec![(Elem::I, Elem::I)]);
        let h = q.realize().unwrap();
        assert_eq!(h.len(), 8);
        // exhaustive membership over C4 x C4
        let c4 = Cyclic(4).elems().unwrap();
        let count = c4
            .iter()
            .flat_map(|a| c4.iter().map(move |b| (*a, *b)))
            .filter(|(a, b)| (a.order() == 4) == (b.order() == 4))
            .count();
        assert_eq!(count, 8);

        let q = Quintuple::standard(Cyclic(2), Cyclic(2), Cyclic(2), Cyclic(2), vec![]);
        assert_eq!(q.rotation_order(), 2);
    }

    #[test]
    fn bad_phi_is_rejected() {
        let q = Quintuple::standard(Cyclic(4), Cyclic(2), Cyclic(6), Cyclic(2), vec![]);
        assert!(q.realize().is_err());
        let q = Quintuple::standard(Cyclic(4), Cyclic(2), Cyclic(4), Cyclic(2), vec![(Elem::I, Elem::ONE)]);
        assert!(q.realize().is_err());
    }

    #[test]
    fn witnesses() {
        let q = Quintuple::standard(Cyclic(4), Cyclic(4), BinaryDihedral(8), BinaryDihedral(8), vec![]);
        assert!(is_conjugating_witness(&q, &q, Elem::ONE, Elem::ONE));
        assert!(is_conjugating_witness(&q, &q, Elem::ONE, Elem::beta()));
        let q2 = Quintuple::standard(BinaryDihedral(8), BinaryDihedral(8), BinaryDihedral(8), BinaryDihedral(8), vec![]);
        assert!(!is_conjugating_witness(&q, &q2, Elem::ONE, Elem::ONE));
    }

    #[test]
    fn identify_basic() {
        let q = Quintuple::standard(Cyclic(2), Cyclic(2), BinaryDihedral(8), BinaryDihedral(8), vec![]);
        let s = identify_family(&q).unwrap();
        assert_eq!((s.family, s.m, s.n), (Family::F2, 1, 2));
    }
}
