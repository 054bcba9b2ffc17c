//! Brute-force checks by exact finite-group computation.

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::quintuple::{Pair, PairGroup};
use crate::s3groups::Elem;
use crate::seifert::SeifertInvariants;
use crate::{Error, Result};

fn is_kernel(p: &Pair) -> bool {
    (p.0 == Elem::ONE && p.1 == Elem::ONE) || (p.0 == Elem::MINUS_ONE && p.1 == Elem::MINUS_ONE)
}

/// Φ(p,q) fixes a point of S³ iff Re(p) = Re(q).
pub fn acts_freely_bruteforce(g: &PairGroup) -> bool {
    g.elems().iter().all(|p| is_kernel(p) || p.0.theta() != p.1.theta())
}

/// Order of the stabilizer of x in Φ(H): #{(p,q) : p x q⁻¹ = x} / 2.
pub fn stabilizer_order(g: &PairGroup, x: Elem) -> usize {
    g.elems().iter().filter(|(p, q)| p.mul(x) == x.mul(*q)).count() / 2
}

/// Multiplication table of Φ(H) = H/±(1,1); index 0 is the identity.
pub struct MultiplicationTable {
    pub elems: Vec<Pair>,
    pub table: Vec<Vec<u32>>,
}

impl MultiplicationTable {
    pub fn new(g: &PairGroup) -> MultiplicationTable {
        let canon = |p: Pair| -> Pair {
            let n = (p.0.neg(), p.1.neg());
            if n < p {
                n
            } else {
                p
            }
        };
        let mut index: HashMap<Pair, u32> = HashMap::default();
        let mut elems = vec![canon((Elem::ONE, Elem::ONE))];
        index.insert(elems[0], 0);
        for &p in g.elems() {
            let c = canon(p);
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry(c) {
                v.insert(elems.len() as u32);
                elems.push(c);
            }
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&canon((a.0.mul(b.0), a.1.mul(b.1)))]).collect())
            .collect();
        MultiplicationTable { elems, table }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == 0).unwrap()
    }

    /// Order of the commutator subgroup, by closure.
    pub fn commutator_subgroup_order(&self) -> usize {
        let n = self.len();
        let inv: Vec<usize> = (0..n).map(|a| self.inverse(a)).collect();
        let mut gens = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b] as usize;
                let c = self.table[self.table[ab][inv[a]] as usize][inv[b]] as usize;
                gens[c] = true;
            }
        }
        let gens: Vec<usize> = (0..n).filter(|&k| gens[k]).collect();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.table[x][g] as usize;
                if !inside[y] {
                    inside[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

/// |Φ(H)^ab| = |H₁(S³/Φ(H))|, with [Φ,Φ] the image of the normal closure of generator commutators.
pub fn abelianization_order(g: &PairGroup) -> usize {
    let mul = |a: Pair, b: Pair| (a.0.mul(b.0), a.1.mul(b.1));
    let inv = |a: Pair| (a.0.inv(), a.1.inv());
    let gens = g.gens();
    let mut seeds = vec![(Elem::MINUS_ONE, Elem::MINUS_ONE)];
    for &a in gens {
        for &b in gens {
            seeds.push(mul(mul(a, b), mul(inv(a), inv(b))));
        }
    }
    // closed under right multiplication by seeds and conjugation by generators, hence the normal closure
    let mut seen: HashSet<Pair> = HashSet::from_iter([(Elem::ONE, Elem::ONE)]);
    let mut queue = vec![(Elem::ONE, Elem::ONE)];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        let next = seeds.iter().map(|&s| mul(x, s)).chain(gens.iter().map(|&f| mul(mul(f, x), inv(f))));
        for y in next.collect::<Vec<_>>() {
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    g.len() / queue.len()
}

/// The same order read from the full multiplication table; quadratic, kept as a cross-check.
pub fn abelianization_order_by_table(g: &PairGroup) -> usize {
    let t = MultiplicationTable::new(g);
    t.len() / t.commutator_subgroup_order()
}

/// First homology order of a Seifert fibration over S² (None when infinite).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H1Order {
    Finite(u64),
    Infinite,
}

/// H₁ from the presentation a_i x_i + c_i h = 0, Σx_i + b h = 0 with e = −(b + Σ c_i/a_i).
pub fn h1_from_seifert(fib: &SeifertInvariants) -> Result<H1Order> {
    if fib.base.surface != crate::seifert::Surface::S2 || !fib.base.corner_orders.is_empty() {
        return Err(Error::Precondition("h1_from_seifert needs a sphere base".into()));
    }
    let pts: Vec<(BigInt, BigInt)> = fib
        .base
        .interior_cone_orders
        .iter()
        .zip(&fib.local_invariants)
        .map(|(&a, x)| {
            let a = BigInt::from(a);
            ((x * BigRational::from_integer(a.clone())).to_integer(), a)
        })
        .collect();
    let mut sum = BigRational::zero();
    for (c, a) in &pts {
        sum += BigRational::new(c.clone(), a.clone());
    }
    let b = -(fib.euler.clone() + sum);
    if !b.is_integer() {
        return Err(Error::Consistency(format!("b = {} is not an integer", b)));
    }
    let k = pts.len();
    let mut mat = vec![vec![BigInt::zero(); k + 1]; k + 1];
    for (i, (c, a)) in pts.iter().enumerate() {
        mat[i][i] = a.clone();
        mat[i][k] = c.clone();
        mat[k][i] = BigInt::one();
    }
    mat[k][k] = -b.to_integer();
    let d = smith_diagonal(mat);
    if d.iter().any(|x| x.is_zero()) {
        return Ok(H1Order::Infinite);
    }
    let p: BigInt = d.iter().map(|x| x.abs()).product();
    Ok(H1Order::Finite(p.try_into().map_err(|_| Error::Arithmetic("H1 order overflow".into()))?))
}

/// Diagonal of the Smith normal form of a square integer matrix.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let mut diag = Vec::new();
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend((t..n).map(|_| BigInt::zero()));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..n {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..n {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the rest by the pivot
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !(&a[i][j] % &p).is_zero());
            if let Some((i, _)) = bad {
                for j in t..n {
                    let v = a[i][j].clone();
                    a[t][j] += v;
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{specs_of, Family, GroupSpec};

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_examples() {
        let d = smith_diagonal(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(m(&[&[2, 0], &[0, 3]]));
        assert_eq!(d.iter().product::<BigInt>(), BigInt::from(6));
        let d = smith_diagonal(m(&[&[1, 2], &[2, 4]]));
        assert!(d.contains(&BigInt::zero()));
    }

    fn group(f: Family, p: &[u64]) -> PairGroup {
        GroupSpec::of(f, p).construct().unwrap().realize().unwrap()
    }

    #[test]
    fn homology_anchors() {
        assert_eq!(abelianization_order(&group(Family::F2, &[1, 2])), 4);
        assert_eq!(abelianization_order(&group(Family::F9, &[1])), 1);
        assert_eq!(abelianization_order(&group(Family::F1, &[1, 1, 1, 1])), 2);
        assert_eq!(abelianization_order_by_table(&group(Family::F9, &[1])), 1);
    }

    #[test]
    fn closure_matches_table() {
        for fam in [Family::F1, Family::F1p, Family::F2, Family::F3, Family::F5, Family::F6, Family::F10, Family::F14] {
            for g in specs_of(fam, 60) {
                let h = g.construct().unwrap().realize().unwrap();
                assert_eq!(abelianization_order(&h), abelianization_order_by_table(&h), "{}", g);
            }
        }
    }

    #[test]
    fn stabilizers_of_lens_space_groups() {
        // Φ of F1(1,1,1,1) is the antipodal map
        let h = group(Family::F1, &[1, 1, 1, 1]);
        assert!(acts_freely_bruteforce(&h));
        assert_eq!(stabilizer_order(&h, Elem::ONE), 1);
        assert_eq!(MultiplicationTable::new(&h).len(), 2);
    }
}
