//! Finite subgroups of S³ and their elements.
//!
//! Elements are kept in a canonical exact form: `Elem::Mono` is e^{2πit} or
//! e^{2πit}·j with t a rational number of turns, multiplied symbolically;
//! `Elem::Poly` indexes a table of the remaining elements of O* ∪ I*, whose
//! coordinates and products were computed in Q(ζ₄₀).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::exactmath::{golden_ratio, rational, sqrt2, CyclotomicNumber, UnitQuaternion};
use crate::{Error, Result};

/// A rational angle in turns, reduced to [0, 1).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    num: u64,
    den: u64,
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Turn {
    pub const ZERO: Turn = Turn { num: 0, den: 1 };
    pub const HALF: Turn = Turn { num: 1, den: 2 };
    pub const QUARTER: Turn = Turn { num: 1, den: 4 };

    pub fn new(k: i64, n: u64) -> Turn {
        assert!(n > 0);
        let num = k.rem_euclid(n as i64) as u64;
        let g = num.gcd(&n);
        Turn { num: num / g, den: n / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn add(self, o: Turn) -> Turn {
        if o.num == 0 {
            return self;
        }
        if self.num == 0 {
            return o;
        }
        let l = if self.den == o.den { self.den } else { self.den.lcm(&o.den) };
        let mut s = self.num * (l / self.den) + o.num * (l / o.den);
        if s >= l {
            s -= l;
        }
        let g = s.gcd(&l);
        Turn { num: s / g, den: l / g }
    }

    pub fn neg(self) -> Turn {
        if self.num == 0 {
            self
        } else {
            // gcd(den - num, den) = gcd(num, den) = 1
            Turn { num: self.den - self.num, den: self.den }
        }
    }

    pub fn times(self, k: i64) -> Turn {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Turn::new(n as i64, self.den)
    }

    /// The angle folded into [0, 1/2], i.e. the class of cos(2πt).
    pub fn fold(self) -> Turn {
        if 2 * self.num > self.den {
            self.neg()
        } else {
            self
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Elem::Mono { t, j } => {
                let base = match (t.num, t.den) {
                    (0, 1) => String::new(),
                    (1, 2) => "-".to_string(),
                    (1, 4) => "i".to_string(),
                    (3, 4) => "-i".to_string(),
                    (k, n) => format!("ζ{}^{}", n, k),
                };
                match (base.as_str(), j) {
                    ("", false) => write!(f, "1"),
                    ("-", false) => write!(f, "-1"),
                    (b, false) => write!(f, "{}", b),
                    ("" | "-", true) => write!(f, "{}j", base),
                    (b, true) => write!(f, "{}·j", b),
                }
            }
            Elem::Poly(_) => {
                let names = [(Elem::alpha(), "α"), (Elem::beta(), "β"), (Elem::gamma(), "γ")];
                match names.iter().find(|(e, _)| e == self) {
                    Some((_, n)) => write!(f, "{}", n),
                    None => write!(f, "{:?}", self.to_quaternion()),
                }
            }
        }
    }
}

/// A canonical exact element of a finite subgroup of S³.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Elem {
    Mono { t: Turn, j: bool },
    Poly(u16),
}

impl Elem {
    pub const ONE: Elem = Elem::Mono { t: Turn::ZERO, j: false };
    pub const MINUS_ONE: Elem = Elem::Mono { t: Turn::HALF, j: false };
    pub const I: Elem = Elem::Mono { t: Turn::QUARTER, j: false };
    pub const J: Elem = Elem::Mono { t: Turn::ZERO, j: true };

    /// e^{2πik/n}.
    pub fn root(k: i64, n: u64) -> Elem {
        Elem::Mono { t: Turn::new(k, n), j: false }
    }

    /// e^{2πik/n}·j.
    pub fn root_j(k: i64, n: u64) -> Elem {
        Elem::Mono { t: Turn::new(k, n), j: true }
    }

    pub fn alpha() -> Elem {
        universe().named[0]
    }

    pub fn beta() -> Elem {
        universe().named[1]
    }

    pub fn gamma() -> Elem {
        universe().named[2]
    }

    pub fn mul(self, o: Elem) -> Elem {
        match (self, o) {
            (Elem::Mono { t: a, j: ea }, Elem::Mono { t: b, j: eb }) => {
                let b = if ea { b.neg() } else { b };
                let mut t = a.add(b);
                if ea && eb {
                    t = t.add(Turn::HALF);
                }
                Elem::Mono { t, j: ea ^ eb }
            }
            _ => {
                let u = universe();
                let (x, y) = (u.id_of(self), u.id_of(o));
                let (ex, ey) = (&u.entries[x as usize], &u.entries[y as usize]);
                let z = match (ex.octa, ey.octa, ex.icosa, ey.icosa) {
                    (Some(a), Some(b), _, _) => u.octa_mul[a as usize][b as usize],
                    (_, _, Some(a), Some(b)) => u.icosa_mul[a as usize][b as usize],
                    _ => panic!("product of {:?} and {:?} leaves O* and I*", self, o),
                };
                u.canonical(z)
            }
        }
    }

    pub fn inv(self) -> Elem {
        match self {
            Elem::Mono { t, j: false } => Elem::Mono { t: t.neg(), j: false },
            Elem::Mono { t, j: true } => Elem::Mono { t: t.add(Turn::HALF), j: true },
            Elem::Poly(x) => {
                let u = universe();
                u.canonical(u.entries[x as usize].inv)
            }
        }
    }

    pub fn neg(self) -> Elem {
        self.mul(Elem::MINUS_ONE)
    }

    pub fn pow(self, k: i64) -> Elem {
        let (b, k) = if k < 0 { (self.inv(), -k) } else { (self, k) };
        let mut out = Elem::ONE;
        for _ in 0..k {
            out = out.mul(b);
        }
        out
    }

    /// The folded angle θ with Re(q) = cos 2πθ; conjugacy invariant in S³.
    pub fn theta(self) -> Turn {
        match self {
            Elem::Mono { t, j: false } => t.fold(),
            Elem::Mono { j: true, .. } => Turn::QUARTER,
            Elem::Poly(x) => universe().entries[x as usize].theta,
        }
    }

    pub fn order(self) -> u64 {
        self.theta().den
    }

    /// Exact quaternion coordinates.
    pub fn to_quaternion(self) -> UnitQuaternion {
        match self {
            Elem::Mono { t, j } => {
                let m = t.den.lcm(&4);
                UnitQuaternion::monomial(t.num as i64, t.den, j, m).unwrap()
            }
            Elem::Poly(x) => universe().entries[x as usize].q.clone(),
        }
    }
}

struct Entry {
    q: UnitQuaternion,
    theta: Turn,
    mono: Option<Elem>,
    octa: Option<u8>,
    icosa: Option<u8>,
    inv: u16,
}

struct Universe {
    entries: Vec<Entry>,
    index: HashMap<UnitQuaternion, u16>,
    mono_index: HashMap<Elem, u16>,
    octa_mul: Vec<Vec<u16>>,
    icosa_mul: Vec<Vec<u16>>,
    tetra: Vec<Elem>,
    octa: Vec<Elem>,
    icosa: Vec<Elem>,
    named: [Elem; 3],
}

const UNIVERSE_CONDUCTOR: u64 = 40;

impl Universe {
    fn id_of(&self, e: Elem) -> u16 {
        match e {
            Elem::Poly(x) => x,
            m => *self
                .mono_index
                .get(&m)
                .unwrap_or_else(|| panic!("{:?} is not an element of O* or I*", m)),
        }
    }

    fn canonical(&self, x: u16) -> Elem {
        self.entries[x as usize].mono.unwrap_or(Elem::Poly(x))
    }
}

/// Breadth-first closure of `gens`, returning elements (identity first) and
/// for each element its parent and the generator that reached it.
fn closure(gens: &[UnitQuaternion], m: u64) -> (Vec<UnitQuaternion>, Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let mut elems = vec![UnitQuaternion::one(m)];
    let mut parent = vec![(0, 0)];
    let mut index: HashMap<UnitQuaternion, usize> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < elems.len() {
        for (gi, g) in gens.iter().enumerate() {
            let p = elems[k].mul(g);
            let id = match index.get(&p) {
                Some(&id) => id,
                None => {
                    let id = elems.len();
                    index.insert(p.clone(), id);
                    elems.push(p);
                    parent.push((k, gi));
                    id
                }
            };
            right[gi].push(id);
        }
        k += 1;
    }
    (elems, parent, right)
}

/// Full product table from right-multiplication permutations by generators.
fn product_table(parent: &[(usize, usize)], right: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = parent.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        table[a][0] = a;
        for b in 1..n {
            let (pb, g) = parent[b];
            table[a][b] = right[g][table[a][pb]];
        }
    }
    table
}

struct Generators {
    i: UnitQuaternion,
    j: UnitQuaternion,
    alpha: UnitQuaternion,
    beta: Option<UnitQuaternion>,
    gamma: Option<UnitQuaternion>,
}

/// i, j, α = (1+i+j+k)/2, β = (1+j)/√2 and γ = (τ⁻¹ + τj + k)/2 over Q(ζ_M).
fn generators(m: u64) -> Generators {
    let half = rational(1, 2);
    let i = CyclotomicNumber::root(1, 4, m).unwrap();
    let one_plus_i = CyclotomicNumber::one(m).add(&i);
    let alpha = UnitQuaternion::new(one_plus_i.scale(&half), one_plus_i.scale(&half));
    let beta = (m % 8 == 0).then(|| {
        let s = sqrt2(m).scale(&half);
        UnitQuaternion::new(s.clone(), s)
    });
    let gamma = (m % 20 == 0).then(|| {
        let tau = golden_ratio(m);
        assert!(tau.mul(&tau).eq_exact(&tau.add(&CyclotomicNumber::one(m))), "golden ratio check");
        UnitQuaternion::new(tau.inv().unwrap().scale(&half), tau.add(&i).scale(&half))
    });
    Generators { i: UnitQuaternion::i(m), j: UnitQuaternion::j(m), alpha, beta, gamma }
}

fn build_universe() -> Universe {
    let m = UNIVERSE_CONDUCTOR;
    let half = rational(1, 2);
    let g = generators(m);
    let (i, j, alpha) = (g.i, g.j, g.alpha);
    let (beta, gamma) = (g.beta.unwrap(), g.gamma.unwrap());

    let (octa_q, octa_parent, octa_right) = closure(&[i.clone(), j.clone(), alpha.clone(), beta.clone()], m);
    let (icosa_q, icosa_parent, icosa_right) = closure(&[i.clone(), j.clone(), alpha.clone(), gamma.clone()], m);
    assert_eq!(octa_q.len(), 48, "O* closure");
    assert_eq!(icosa_q.len(), 120, "I* closure");
    let (tetra_q, _, _) = closure(&[i, j, alpha.clone()], m);
    assert_eq!(tetra_q.len(), 24, "T* closure");

    let mut entries: Vec<Entry> = Vec::new();
    let mut index: HashMap<UnitQuaternion, u16> = HashMap::new();
    let mut add = |q: &UnitQuaternion, entries: &mut Vec<Entry>| -> u16 {
        if let Some(&x) = index.get(q) {
            return x;
        }
        let x = entries.len() as u16;
        index.insert(q.clone(), x);
        entries.push(Entry { q: q.clone(), theta: Turn::ZERO, mono: None, octa: None, icosa: None, inv: 0 });
        x
    };
    let octa_ids: Vec<u16> = octa_q.iter().map(|q| add(q, &mut entries)).collect();
    let icosa_ids: Vec<u16> = icosa_q.iter().map(|q| add(q, &mut entries)).collect();
    for (k, &x) in octa_ids.iter().enumerate() {
        entries[x as usize].octa = Some(k as u8);
    }
    for (k, &x) in icosa_ids.iter().enumerate() {
        entries[x as usize].icosa = Some(k as u8);
    }
    let octa_mul: Vec<Vec<u16>> = product_table(&octa_parent, &octa_right)
        .into_iter()
        .map(|row| row.into_iter().map(|k| octa_ids[k]).collect())
        .collect();
    let icosa_mul: Vec<Vec<u16>> = product_table(&icosa_parent, &icosa_right)
        .into_iter()
        .map(|row| row.into_iter().map(|k| icosa_ids[k]).collect())
        .collect();

    let roots: Vec<CyclotomicNumber> = (0..m as i64).map(|k| CyclotomicNumber::root(k, m, m).unwrap()).collect();
    let mut mono_index = HashMap::new();
    for x in 0..entries.len() {
        let q = entries[x].q.clone();
        let conj = q.conj();
        entries[x].inv = index[&conj];
        let find = |z: &CyclotomicNumber| roots.iter().position(|r| r == z);
        entries[x].mono = if q.z2.is_zero() {
            find(&q.z1).map(|k| Elem::Mono { t: Turn::new(k as i64, m), j: false })
        } else if q.z1.is_zero() {
            find(&q.z2).map(|k| Elem::Mono { t: Turn::new(k as i64, m), j: true })
        } else {
            None
        };
        if let Some(e) = entries[x].mono {
            mono_index.insert(e, x as u16);
        }
        let order = q.order(12).expect("finite order");
        let re = q.real_part();
        let theta = (0..=order / 2)
            .filter(|t| t.gcd(&order) == 1 || order == 1)
            .find(|&t| {
                let l = m.lcm(&order);
                let z = CyclotomicNumber::root(t as i64, order, l).unwrap();
                z.add(&z.conj()).scale(&half).eq_exact(&re)
            })
            .expect("angle of a finite-order element");
        entries[x].theta = Turn::new(theta as i64, order);
    }
    let mut u = Universe {
        entries,
        index: HashMap::new(),
        mono_index,
        octa_mul,
        icosa_mul,
        tetra: vec![],
        octa: vec![],
        icosa: vec![],
        named: [Elem::ONE; 3],
    };
    let tetra: Vec<Elem> = tetra_q.iter().map(|q| u.canonical(index[q])).collect();
    let octa: Vec<Elem> = octa_ids.iter().map(|&x| u.canonical(x)).collect();
    let icosa: Vec<Elem> = icosa_ids.iter().map(|&x| u.canonical(x)).collect();
    u.named = [u.canonical(index[&alpha]), u.canonical(index[&beta]), u.canonical(index[&gamma])];
    u.tetra = tetra;
    u.octa = octa;
    u.icosa = icosa;
    u.index = index;
    u
}

static UNIVERSE: Lazy<Universe> = Lazy::new(build_universe);

fn universe() -> &'static Universe {
    &UNIVERSE
}

/// Looks up an exact quaternion among the supported finite-order elements.
pub fn elem_from_quaternion(q: &UnitQuaternion) -> Option<Elem> {
    if q.z2.is_zero() || q.z1.is_zero() {
        let z = if q.z2.is_zero() { &q.z1 } else { &q.z2 };
        let m = z.conductor();
        let l = m.lcm(&2);
        for k in 0..l as i64 {
            if CyclotomicNumber::root(k, l, l).unwrap().eq_exact(z) {
                return Some(Elem::Mono { t: Turn::new(k, l), j: q.z1.is_zero() });
            }
        }
        return None;
    }
    let q40 = q.embed(UNIVERSE_CONDUCTOR.lcm(&q.conductor())).ok()?;
    let u = universe();
    let q40 = if q40.conductor() == UNIVERSE_CONDUCTOR { q40 } else { return None };
    u.index.get(&q40).map(|&x| u.canonical(x))
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum S3SubgroupKind {
    Cyclic(u64),
    /// Binary dihedral group of the given order 4n, n ≥ 2.
    BinaryDihedral(u64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    Circle,
    PinCircle,
    Full,
}

use S3SubgroupKind::*;

impl S3SubgroupKind {
    /// Binary dihedral of order 4n, collapsing D*₄ to C₄.
    pub fn dihedral(n: u64) -> Result<S3SubgroupKind> {
        match n {
            0 => Err(Error::InvalidParameters("D*_0".into())),
            1 => Ok(Cyclic(4)),
            _ => Ok(BinaryDihedral(4 * n)),
        }
    }

    pub fn order(&self) -> Option<u64> {
        match *self {
            Cyclic(n) => Some(n),
            BinaryDihedral(n) => Some(n),
            BinaryTetrahedral => Some(24),
            BinaryOctahedral => Some(48),
            BinaryIcosahedral => Some(120),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn normalizer(&self) -> S3SubgroupKind {
        match *self {
            Cyclic(n) if n <= 2 => Full,
            Cyclic(_) => PinCircle,
            BinaryDihedral(8) => BinaryOctahedral,
            BinaryDihedral(n) => BinaryDihedral(2 * n),
            BinaryTetrahedral | BinaryOctahedral => BinaryOctahedral,
            BinaryIcosahedral => BinaryIcosahedral,
            Circle | PinCircle => PinCircle,
            Full => Full,
        }
    }

    /// Elements in canonical position.
    pub fn elems(&self) -> Result<Vec<Elem>> {
        Ok(match *self {
            Cyclic(n) if n > 0 => (0..n as i64).map(|k| Elem::root(k, n)).collect(),
            BinaryDihedral(o) if o % 4 == 0 && o >= 8 => {
                let c = o / 2;
                let mut v: Vec<Elem> = (0..c as i64).map(|k| Elem::root(k, c)).collect();
                v.extend((0..c as i64).map(|k| Elem::root_j(k, c)));
                v
            }
            BinaryTetrahedral => universe().tetra.clone(),
            BinaryOctahedral => universe().octa.clone(),
            BinaryIcosahedral => universe().icosa.clone(),
            k => return Err(Error::Structural(format!("{} has no finite element list", k))),
        })
    }

    /// Conductor sufficient for the coordinates of `elements`.
    pub fn min_conductor(&self) -> u64 {
        match *self {
            Cyclic(n) => n,
            BinaryDihedral(o) => o / 2,
            BinaryTetrahedral => 4,
            BinaryOctahedral => 8,
            _ => 20,
        }
    }
}

impl fmt::Display for S3SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cyclic(n) => write!(f, "C{}", n),
            BinaryDihedral(n) => write!(f, "D*{}", n),
            BinaryTetrahedral => write!(f, "T*"),
            BinaryOctahedral => write!(f, "O*"),
            BinaryIcosahedral => write!(f, "I*"),
            Circle => write!(f, "S1"),
            PinCircle => write!(f, "O(2)*"),
            Full => write!(f, "S3"),
        }
    }
}

static ELEMENT_CACHE: Lazy<RwLock<HashMap<(S3SubgroupKind, u64), Arc<Vec<UnitQuaternion>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Exact quaternion elements of a finite kind with coordinates in Q(ζ_M).
pub fn elements(kind: S3SubgroupKind, conductor: u64) -> Result<Arc<Vec<UnitQuaternion>>> {
    if let Some(v) = ELEMENT_CACHE.read().get(&(kind, conductor)) {
        return Ok(v.clone());
    }
    let order = kind.order().ok_or_else(|| Error::Structural(format!("{} is infinite", kind)))?;
    let need = kind.min_conductor();
    if conductor % need != 0 {
        return Err(Error::ConductorMismatch(format!("{} needs a conductor divisible by {}", kind, need)));
    }
    let m = conductor;
    let v = match kind {
        Cyclic(_) | BinaryDihedral(_) => kind
            .elems()?
            .into_iter()
            .map(|e| match e {
                Elem::Mono { t, j } => UnitQuaternion::monomial(t.num as i64, t.den, j, m),
                Elem::Poly(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?,
        _ => {
            let g = generators(m);
            let gens = match kind {
                BinaryTetrahedral => vec![g.i, g.j, g.alpha],
                BinaryOctahedral => vec![g.i, g.j, g.alpha, g.beta.unwrap()],
                _ => vec![g.i, g.j, g.alpha, g.gamma.unwrap()],
            };
            closure(&gens, m).0
        }
    };
    if v.len() as u64 != order {
        return Err(Error::Consistency(format!("{} enumerated {} elements", kind, v.len())));
    }
    let v = Arc::new(v);
    ELEMENT_CACHE.write().insert((kind, conductor), v.clone());
    Ok(v)
}

/// Identifies a finite subgroup of S³ from its element set, up to conjugacy.
pub fn identify_kind(set: &[Elem]) -> Option<S3SubgroupKind> {
    let n = set.len() as u64;
    let maxord = set.iter().map(|e| e.order()).max()?;
    if maxord == n {
        Some(Cyclic(n))
    } else if 2 * maxord == n && n >= 8 {
        Some(BinaryDihedral(n))
    } else {
        match n {
            24 => Some(BinaryTetrahedral),
            48 => Some(BinaryOctahedral),
            120 => Some(BinaryIcosahedral),
            _ => None,
        }
    }
}

/// The index-2 cyclic subgroup generated by an element of maximal order.
pub fn cyclic_part(set: &[Elem]) -> Vec<Elem> {
    let g = *set.iter().max_by_key(|e| e.order()).expect("nonempty");
    let mut out = vec![Elem::ONE];
    let mut x = g;
    while x != Elem::ONE {
        out.push(x);
        x = x.mul(g);
    }
    out
}

/// Every cyclic subgroup of index 2 (three of them in Q₈, otherwise at most one).
pub fn cyclic_parts(set: &[Elem]) -> Vec<Vec<Elem>> {
    let half = set.len() as u64 / 2;
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for &g in set.iter().filter(|e| e.order() == half) {
        if out.iter().any(|c| c.binary_search(&g).is_ok()) {
            continue;
        }
        let mut c = cyclic_part(&[g]);
        c.sort();
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn orders_of_polyhedral_groups() {
        assert_eq!(BinaryTetrahedral.elems().unwrap().len(), 24);
        assert_eq!(BinaryOctahedral.elems().unwrap().len(), 48);
        assert_eq!(BinaryIcosahedral.elems().unwrap().len(), 120);
    }

    #[test]
    fn icosahedral_closed() {
        let v = BinaryIcosahedral.elems().unwrap();
        let s: HashSet<Elem> = v.iter().copied().collect();
        for a in &v {
            assert!(s.contains(&a.inv()));
            for b in &v {
                assert!(s.contains(&a.mul(*b)));
            }
        }
    }

    #[test]
    fn inclusions() {
        let o: HashSet<Elem> = BinaryOctahedral.elems().unwrap().into_iter().collect();
        let t: HashSet<Elem> = BinaryTetrahedral.elems().unwrap().into_iter().collect();
        let q8 = BinaryDihedral(8).elems().unwrap();
        assert!(t.is_subset(&o));
        assert!(q8.iter().all(|e| t.contains(e)));
        assert!(!t.contains(&Elem::beta()));
        assert!(t.contains(&Elem::beta().mul(Elem::beta())));
    }

    #[test]
    fn generator_orders() {
        assert_eq!(Elem::alpha().order(), 6);
        assert_eq!(Elem::beta().order(), 8);
        assert_eq!(Elem::gamma().order(), 5);
        assert_eq!(Elem::alpha().pow(3), Elem::MINUS_ONE);
    }

    #[test]
    fn cyclic_four() {
        let v = Cyclic(4).elems().unwrap();
        assert_eq!(v, vec![Elem::ONE, Elem::I, Elem::MINUS_ONE, Elem::I.neg()]);
    }

    #[test]
    fn normalizers() {
        assert_eq!(Cyclic(2).normalizer(), Full);
        assert_eq!(Cyclic(6).normalizer(), PinCircle);
        assert_eq!(BinaryDihedral(8).normalizer(), BinaryOctahedral);
        assert_eq!(BinaryDihedral(12).normalizer(), BinaryDihedral(24));
        assert_eq!(BinaryTetrahedral.normalizer(), BinaryOctahedral);
        assert_eq!(BinaryIcosahedral.normalizer(), BinaryIcosahedral);
    }

    #[test]
    fn identify() {
        for k in [Cyclic(1), Cyclic(7), BinaryDihedral(8), BinaryDihedral(20), BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral] {
            assert_eq!(identify_kind(&k.elems().unwrap()), Some(k));
        }
    }

    #[test]
    fn symbolic_product_matches_quaternions() {
        let v = BinaryDihedral(24).elems().unwrap();
        let m = 12;
        for a in v.iter().step_by(5) {
            for b in v.iter().step_by(3) {
                let lhs = a.mul(*b).to_quaternion().embed(m).unwrap();
                let rhs = a.to_quaternion().embed(m).unwrap().mul(&b.to_quaternion().embed(m).unwrap());
                assert!(lhs.eq_exact(&rhs));
            }
        }
    }

    #[test]
    fn quaternion_elements() {
        let e = elements(BinaryOctahedral, 8).unwrap();
        assert_eq!(e.len(), 48);
        assert!(e.iter().all(|q| q.norm().as_rational() == Some(rational(1, 1))));
        let e = elements(BinaryIcosahedral, 20).unwrap();
        assert_eq!(e.len(), 120);
        assert!(elements(BinaryIcosahedral, 8).is_err());
        assert_eq!(elements(Cyclic(4), 4).unwrap().len(), 4);
    }

    #[test]
    fn dihedral_contains_cyclic_half() {
        for n in 2..8u64 {
            let d: HashSet<Elem> = BinaryDihedral(4 * n).elems().unwrap().into_iter().collect();
            assert!(Cyclic(2 * n).elems().unwrap().iter().all(|e| d.contains(e)));
            assert!(d.contains(&Elem::MINUS_ONE));
        }
    }
}
