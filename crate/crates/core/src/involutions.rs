//! Involution classes of Isom⁺(S³/G): isometry-group labels, class representatives,
//! explicit lifts to S³×S³ and the index-2 extensions they generate.

use std::fmt;

use crate::families::{Family, GroupSpec};
use crate::quintuple::{identify_group, identify_realized, Pair, PairGroup, Quintuple};
use crate::s3groups::Elem;
use crate::tables::{find_row, Row};
use crate::{Error, Result};

/// Building blocks of the isometry groups.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Z2,
    D6,
    S1,
    O2,
    O2Star,
    S3,
    SO3,
    SO4,
    PSO4,
    DihTorus,
}

impl Atom {
    pub fn name(self) -> &'static str {
        match self {
            Atom::Z2 => "Z₂",
            Atom::D6 => "D₆",
            Atom::S1 => "S¹",
            Atom::O2 => "O(2)",
            Atom::O2Star => "O(2)*",
            Atom::S3 => "S³",
            Atom::SO3 => "SO(3)",
            Atom::SO4 => "SO(4)",
            Atom::PSO4 => "PSO(4)",
            Atom::DihTorus => "Dih(S¹×S¹)",
        }
    }

    fn identity(self) -> &'static str {
        match self {
            Atom::Z2 => "[0]",
            Atom::SO3 => "I₃",
            _ => "1",
        }
    }

    /// Representatives of the involution classes.
    pub fn involutions(self) -> Vec<&'static str> {
        match self {
            Atom::Z2 => vec!["[1]"],
            Atom::D6 => vec!["s"],
            Atom::S1 | Atom::O2Star | Atom::S3 => vec!["-1"],
            Atom::O2 => vec!["-1", "c"],
            Atom::SO3 => vec!["R_π"],
            // T_{π,0} is conjugate to T_{0,π} by a rotation exchanging the two planes
            Atom::SO4 => vec!["T_{0,π}", "T_{π,π}"],
            Atom::PSO4 => vec!["[T_{0,π}]", "[T_{π/2,π/2}]", "[T_{π/2,-π/2}]"],
            Atom::DihTorus => vec!["((-1,1),[0])", "((1,-1),[0])", "((-1,-1),[0])", "((1,1),[1])"],
        }
    }

    /// Representatives of the classes of square roots of the central involution.
    pub fn rac(self) -> Vec<&'static str> {
        match self {
            Atom::S1 | Atom::O2 | Atom::S3 => vec!["i"],
            Atom::O2Star => vec!["i", "j"],
            _ => vec![],
        }
    }

    fn has_central_involution(self) -> bool {
        matches!(self, Atom::S1 | Atom::O2 | Atom::O2Star | Atom::S3)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum IsometryGroupLabel {
    Atom(Atom),
    Direct(Atom, Atom),
    /// A×B/{±(1,1)}.
    Central(Atom, Atom),
}

impl fmt::Display for IsometryGroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsometryGroupLabel::Atom(a) => write!(f, "{}", a.name()),
            IsometryGroupLabel::Direct(a, b) => write!(f, "{}×{}", a.name(), b.name()),
            IsometryGroupLabel::Central(a, b) => write!(f, "{}~×{}", a.name(), b.name()),
        }
    }
}

/// One factor of a product, with the lift of each representative.
struct Factor {
    atom: Atom,
    inv: Vec<(&'static str, Elem)>,
    rac: Vec<(&'static str, Elem)>,
}

impl Factor {
    fn bare(atom: Atom) -> Factor {
        Factor {
            atom,
            inv: atom.involutions().into_iter().map(|l| (l, Elem::ONE)).collect(),
            rac: atom.rac().into_iter().map(|l| (l, Elem::ONE)).collect(),
        }
    }

    fn lifted(atom: Atom, inv: &[Elem], rac: &[Elem]) -> Factor {
        let pair = |labels: Vec<&'static str>, e: &[Elem]| {
            assert_eq!(labels.len(), e.len(), "{} lift count", atom.name());
            labels.into_iter().zip(e.iter().copied()).collect()
        };
        Factor { atom, inv: pair(atom.involutions(), inv), rac: pair(atom.rac(), rac) }
    }

    /// Elements labelled {1} ∪ involutions.
    fn with_one(&self) -> Vec<(&'static str, Elem)> {
        let mut v = vec![(self.atom.identity(), Elem::ONE)];
        v.extend(self.inv.iter().copied());
        v
    }
}

fn neg(label: &str) -> &str {
    match label {
        "1" => "-1",
        "-1" => "1",
        other => other,
    }
}

fn product_reps(central: bool, a: &Factor, b: &Factor) -> Result<Vec<(String, Pair)>> {
    let mut out = Vec::new();
    if !central {
        for &(x, lx) in &a.inv {
            out.push((format!("({},{})", x, b.atom.identity()), (lx, Elem::ONE)));
        }
        for &(y, ly) in &b.inv {
            out.push((format!("({},{})", a.atom.identity(), y), (Elem::ONE, ly)));
        }
        for &(x, lx) in &a.inv {
            for &(y, ly) in &b.inv {
                out.push((format!("({},{})", x, y), (lx, ly)));
            }
        }
        return Ok(out);
    }
    if !a.atom.has_central_involution() || !b.atom.has_central_involution() {
        return Err(Error::Structural(format!("{}~×{} has no common central involution", a.atom.name(), b.atom.name())));
    }
    // (x,y) and (-x,-y) give the same coset; keep the member containing 1,
    // and for the pair (±1,∓1) the one whose nontrivial entry has company.
    let prefer_left = a.inv.len() > 1;
    let mut seen: Vec<(&str, &str)> = Vec::new();
    for &(x, lx) in &a.with_one() {
        for &(y, ly) in &b.with_one() {
            if (x == "1" && y == "1") || (x == "-1" && y == "-1") {
                continue;
            }
            let partner = (neg(x), neg(y));
            if seen.contains(&(x, y)) || seen.contains(&partner) {
                continue;
            }
            let keep_this = match (x, y) {
                ("-1", "1") => prefer_left,
                ("1", "-1") => !prefer_left,
                _ => x == "1" || y == "1" || (x != "-1" && y != "-1"),
            };
            if keep_this {
                seen.push((x, y));
                out.push((format!("({},{})", x, y), (lx, ly)));
            }
        }
    }
    for &(x, lx) in &a.rac {
        for &(y, ly) in &b.rac {
            out.push((format!("({},{})", x, y), (lx, ly)));
        }
    }
    Ok(out)
}

/// Complete set of representatives of the involution classes of a labelled group.
pub fn involution_reps(label: IsometryGroupLabel) -> Result<Vec<String>> {
    let reps = match label {
        IsometryGroupLabel::Atom(a) => a.involutions().into_iter().map(String::from).collect(),
        IsometryGroupLabel::Direct(a, b) => {
            product_reps(false, &Factor::bare(a), &Factor::bare(b))?.into_iter().map(|r| r.0).collect()
        }
        IsometryGroupLabel::Central(a, b) => {
            product_reps(true, &Factor::bare(a), &Factor::bare(b))?.into_iter().map(|r| r.0).collect()
        }
    };
    Ok(reps)
}

fn free_parent(spec: &GroupSpec) -> Result<GroupSpec> {
    let p = spec.canonical();
    if p.bis || !spec.acts_freely_on_sphere() {
        return Err(Error::Precondition(format!("{} is not a manifold group of the tables", spec)));
    }
    Ok(p)
}

/// Isom⁺(S³/G) for a free-acting spec.
pub fn isometry_label(spec: &GroupSpec) -> Result<IsometryGroupLabel> {
    use Atom::*;
    use Family::*;
    use IsometryGroupLabel as L;
    let p = free_parent(spec)?;
    let (m, n, r) = (p.m, p.n, p.r);
    let o2_or = |k: u64, small: Atom, big: Atom| if k == 1 { small } else { big };
    let label = match p.family {
        F1 if r == 1 && m == 1 && n == 1 => L::Atom(PSO4),
        F1 if r == 1 => L::Direct(o2_or(m, SO3, O2), o2_or(n, SO3, O2)),
        F1 if r == 2 => L::Central(O2, O2),
        F1p if r == 2 && m == 1 && n == 1 => L::Atom(SO4),
        F1p if r == 2 => L::Central(o2_or(m, S3, O2Star), o2_or(n, S3, O2Star)),
        F1 | F1p => L::Atom(DihTorus),
        F2 => L::Direct(o2_or(m, SO3, O2), if n == 2 { D6 } else { Z2 }),
        F3 => L::Direct(O2, Z2),
        F5 => L::Direct(o2_or(m, SO3, O2), Z2),
        F6 => L::Atom(O2),
        F7 | F9 => L::Atom(o2_or(m, SO3, O2)),
        _ => return Err(Error::Precondition(format!("{} does not act freely", spec))),
    };
    Ok(label)
}

fn z(k: i64, n: u64) -> Elem {
    Elem::root(k, n)
}

/// The spec whose construction the lifts refer to: for Family 1 with r odd
/// the twist is taken odd.
pub fn lift_parent(spec: &GroupSpec) -> Result<GroupSpec> {
    let mut p = free_parent(spec)?;
    if p.family == Family::F1 && p.r > 2 && p.r % 2 == 1 && p.s % 2 == 0 {
        p.s = p.r - p.s;
    }
    Ok(p)
}

/// One lift (p,q) ∈ S³×S³ per involution class, labelled as in `involution_reps`.
pub fn lifts(spec: &GroupSpec) -> Result<Vec<(String, Pair)>> {
    use Atom::*;
    use Family::*;
    let p = lift_parent(spec)?;
    let (m, n, r, s) = (p.m, p.n, p.r, p.s as i64);
    let label = isometry_label(&p)?;
    let one = Elem::ONE;
    // the two kinds of circle factor, with the lift of each representative
    let circle = |atom: Atom, k: u64| match atom {
        SO3 => Factor::lifted(SO3, &[Elem::I], &[]),
        S3 => Factor::lifted(S3, &[Elem::MINUS_ONE], &[Elem::I]),
        O2 => Factor::lifted(O2, &[z(1, 4 * k), Elem::J], &[z(1, 8 * k)]),
        O2Star => Factor::lifted(O2Star, &[Elem::MINUS_ONE], &[z(1, 4 * k), Elem::J]),
        _ => unreachable!("not a circle factor"),
    };
    let direct_or_central = |central: bool, a: Factor, b: Factor| product_reps(central, &a, &b);
    let atom_lifts = |v: Vec<Pair>| -> Vec<(String, Pair)> {
        let IsometryGroupLabel::Atom(a) = label else { unreachable!() };
        a.involutions().into_iter().map(String::from).zip(v).collect()
    };
    let out = match (p.family, label) {
        (F1 | F1p, IsometryGroupLabel::Atom(DihTorus)) => {
            // F1 lives in C_{4mr}×C_{4nr}, F1' in C_{2mr}×C_{2nr}
            let c = if p.family == F1 { 4 } else { 2 };
            atom_lifts(vec![
                (z(1, c * m * r), z(s, c * n * r)),
                (z(1, c * m), z(s + 1, c * n)),
                (z(1 + r as i64, c * m * r), z(r as i64 * s + r as i64 + s, c * n * r)),
                (Elem::J, Elem::J),
            ])
        }
        (F1, IsometryGroupLabel::Atom(PSO4)) => atom_lifts(vec![(Elem::I, Elem::I), (Elem::I, one), (one, Elem::I)]),
        (F1p, IsometryGroupLabel::Atom(SO4)) => atom_lifts(vec![(Elem::I, Elem::I), (one, Elem::MINUS_ONE)]),
        (F1 | F1p, IsometryGroupLabel::Direct(a, b)) => direct_or_central(false, circle(a, m), circle(b, n))?,
        (F1 | F1p, IsometryGroupLabel::Central(a, b)) => direct_or_central(true, circle(a, m), circle(b, n))?,
        (F2 | F3 | F5, IsometryGroupLabel::Direct(a, b)) => {
            let right = if p.family == F5 { Elem::beta() } else { z(1, 4 * n) };
            direct_or_central(false, circle(a, m), Factor::lifted(b, &[right], &[]))?
        }
        (F6, _) => atom_lifts(vec![(z(1, 4 * m), one), (Elem::J, Elem::beta())]),
        (F7 | F9, IsometryGroupLabel::Atom(O2)) => atom_lifts(vec![(z(1, 4 * m), one), (Elem::J, one)]),
        (F7 | F9, IsometryGroupLabel::Atom(SO3)) => atom_lifts(vec![(Elem::I, one)]),
        _ => return Err(Error::Structural(format!("no lifts for {} with {}", spec, label))),
    };
    Ok(out)
}

/// The group generated by H and a lift, returned as a quintuple.
///
/// Checks the lift is a genuine involution of S³/G and that the projections
/// grow as predicted: L' = L ∪ pL, with R_K doubled when p ∈ L and unchanged
/// otherwise (and symmetrically on the right).
pub fn extend(h: &PairGroup, lift: Pair) -> Result<(PairGroup, Quintuple)> {
    extend_known(h, &h.projections(), lift)
}

fn extend_known(h: &PairGroup, hproj: &[Vec<Elem>; 4], lift: Pair) -> Result<(PairGroup, Quintuple)> {
    if h.contains(&lift) {
        return Err(Error::Precondition("lift lies in the group".into()));
    }
    if !h.contains(&(lift.0.mul(lift.0), lift.1.mul(lift.1))) {
        return Err(Error::Precondition("lift squared is not in the group".into()));
    }
    if !h.normalized_by(lift) {
        return Err(Error::Precondition("lift does not normalize the group".into()));
    }
    // closed: f normalizes H and f² ∈ H
    let big = h.adjoin_coset(lift);
    if big.len() != 2 * h.len() {
        return Err(Error::Consistency(format!("extension has order {} not {}", big.len(), 2 * h.len())));
    }
    let [l, lk, r, rk] = hproj;
    let [l2, lk2, r2, rk2] = big.projections();
    // p ∈ L: L' = L and the opposite kernel doubles; p ∉ L: L' doubles and the opposite kernel stays
    let grows = |side: &[Elem], side2: &[Elem], other_kernel: &[Elem], ok2: &[Elem], x: Elem| {
        if side.contains(&x) {
            side2.len() == side.len() && ok2.len() == 2 * other_kernel.len()
        } else {
            side2.len() == 2 * side.len() && ok2.len() == other_kernel.len()
        }
    };
    if !grows(l, &l2, rk, &rk2, lift.0) || !grows(r, &r2, lk, &lk2, lift.1) {
        return Err(Error::Consistency("projections of the extension break the index-2 rules".into()));
    }
    let q = big.quintuple_from([l2, lk2, r2, rk2]);
    Ok((big, q))
}

/// Family and parameters of H ∪ lift·H.
pub fn extension_spec(h: &PairGroup, lift: Pair) -> Result<GroupSpec> {
    identify_group(&extend(h, lift)?.0)
}

#[derive(Clone, Debug)]
pub struct InvolutionClass {
    pub class_label: String,
    pub lift: Pair,
    pub extension: Quintuple,
    pub extension_spec: GroupSpec,
    /// H ∪ lift·H, enumerated.
    pub extension_group: PairGroup,
    /// The table row describing the quotient.
    pub row: Row,
}

/// All involution classes of S³/G with their extensions, each matched to its table row.
pub fn classes(spec: &GroupSpec) -> Result<Vec<InvolutionClass>> {
    let p = lift_parent(spec)?;
    let h = p.construct()?.realize()?;
    let reps = involution_reps(isometry_label(&p)?)?;
    let ls = lifts(&p)?;
    if reps.len() != ls.len() || reps.iter().zip(&ls).any(|(a, b)| *a != b.0) {
        return Err(Error::Consistency(format!("{}: lift labels differ from the class representatives", spec)));
    }
    let hproj = h.projections();
    let mut out = Vec::with_capacity(ls.len());
    for (label, lift) in ls {
        let (big, q) = extend_known(&h, &hproj, lift)?;
        let ext = identify_realized(&big, &q)?;
        let row = find_row(&p, &ext)?;
        out.push(InvolutionClass {
            class_label: label,
            lift,
            extension: q,
            extension_spec: ext,
            extension_group: big,
            row,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Atom::*;
    use IsometryGroupLabel as L;

    #[test]
    fn table_three_counts() {
        assert_eq!(involution_reps(L::Atom(SO3)).unwrap(), vec!["R_π"]);
        assert_eq!(involution_reps(L::Central(O2, O2)).unwrap(), vec!["(1,c)", "(-1,1)", "(c,1)", "(c,c)", "(i,i)"]);
        let r = involution_reps(L::Central(O2Star, O2Star)).unwrap();
        assert_eq!(r, vec!["(1,-1)", "(i,i)", "(i,j)", "(j,i)", "(j,j)"]);
        assert_eq!(involution_reps(L::Central(S3, O2Star)).unwrap(), vec!["(1,-1)", "(i,i)", "(i,j)"]);
        assert_eq!(involution_reps(L::Direct(O2, O2)).unwrap().len(), 8);
        assert_eq!(involution_reps(L::Direct(SO3, Z2)).unwrap(), vec!["(R_π,[0])", "(I₃,[1])", "(R_π,[1])"]);
        assert!(involution_reps(L::Central(SO3, Z2)).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(isometry_label(&GroupSpec::of(Family::F7, &[5])).unwrap(), L::Atom(O2));
        assert_eq!(isometry_label(&GroupSpec::of(Family::F1, &[3, 5, 7, 2])).unwrap(), L::Atom(DihTorus));
        assert_eq!(isometry_label(&GroupSpec::of(Family::F2, &[1, 3])).unwrap(), L::Direct(SO3, Z2));
        assert_eq!(L::Central(O2, O2).to_string(), "O(2)~×O(2)");
    }

    #[test]
    fn family2_small_lifts() {
        let g = GroupSpec::of(Family::F2, &[1, 3]);
        let ls = lifts(&g).unwrap();
        assert_eq!(ls[0], ("(R_π,[0])".to_string(), (Elem::I, Elem::ONE)));
        assert_eq!(ls[1], ("(I₃,[1])".to_string(), (Elem::ONE, Elem::root(1, 12))));
        let cs = classes(&g).unwrap();
        let q = &cs[0].extension;
        assert_eq!(q.kinds().map(|k| k.to_string()), ["C4", "C4", "D*12", "D*12"].map(String::from));
        let q = &cs[2].extension;
        assert_eq!(q.kinds().map(|k| k.to_string()), ["C4", "C2", "D*24", "D*12"].map(String::from));
    }

    #[test]
    fn family1prime_general() {
        let g = crate::families::manifold_specs(60)
            .into_iter()
            .find(|g| g.family == Family::F1p && g.r > 2 && g.m > 1)
            .unwrap();
        let cs = classes(&g).unwrap();
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[3].lift, (Elem::J, Elem::J));
        assert_eq!(cs[0].extension_spec.family, Family::F1p);
    }

    #[test]
    fn rejects_non_involutions() {
        let g = GroupSpec::of(Family::F2, &[1, 3]);
        let h = g.construct().unwrap().realize().unwrap();
        assert!(extend(&h, (Elem::ONE, Elem::MINUS_ONE)).is_err());
        assert!(extend(&h, (Elem::root(1, 8), Elem::ONE)).is_err());
    }
}
