//! Exact arithmetic in cyclotomic fields Q(ζ_M) and in quaternions over them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::Error;

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= t;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n0 = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n0 > 1 {
        out -= out / n0;
    }
    out
}

/// Per-conductor data: Φ_M and x^k mod Φ_M for 0 <= k < M.
struct Field {
    phi: Poly,
    powers: Vec<Vec<BigRational>>,
}

static FIELDS: Lazy<RwLock<HashMap<u64, Arc<Field>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// The M-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    field(m).phi.iter().map(|c| c.to_integer()).collect()
}

fn compute_phi(m: u64) -> Poly {
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divrem(&num, &field(d).phi);
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

fn field(m: u64) -> Arc<Field> {
    if let Some(f) = FIELDS.read().get(&m) {
        return f.clone();
    }
    let phi = compute_phi(m);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![BigRational::zero(); deg];
    cur[0] = BigRational::one();
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[deg - 1].clone();
        let mut next = vec![BigRational::zero(); deg];
        for i in (1..deg).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..deg {
                next[i] -= &top * &phi[i];
            }
        }
        cur = next;
    }
    let f = Arc::new(Field { phi, powers });
    FIELDS.write().entry(m).or_insert(f).clone()
}

/// An element of Q(ζ_M) in the power basis, reduced mod Φ_M.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*z^{}", c, i))
            .collect();
        if terms.is_empty() {
            write!(f, "0 (M={})", self.conductor)
        } else {
            write!(f, "{} (M={})", terms.join(" + "), self.conductor)
        }
    }
}

impl CyclotomicNumber {
    fn reduce(conductor: u64, p: Poly) -> Self {
        let f = field(conductor);
        let deg = f.phi.len() - 1;
        let mut p = p;
        trim(&mut p);
        if p.len() > deg {
            p = poly_divrem(&p, &f.phi).1;
        }
        p.resize(deg, BigRational::zero());
        CyclotomicNumber { conductor, coeffs: p }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_rational(q: BigRational, conductor: u64) -> Self {
        Self::reduce(conductor, vec![q])
    }

    pub fn from_int(k: i64, conductor: u64) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()), conductor)
    }

    pub fn zero(conductor: u64) -> Self {
        Self::from_int(0, conductor)
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(1, conductor)
    }

    /// e^{2πik/N} inside Q(ζ_M); requires N | M.
    pub fn root(k: i64, n: u64, m: u64) -> Result<Self, Error> {
        if n == 0 || m % n != 0 {
            return Err(Error::ConductorMismatch(format!("{} does not divide {}", n, m)));
        }
        let e = (k.rem_euclid(n as i64) as u64) * (m / n);
        let f = field(m);
        Ok(CyclotomicNumber { conductor: m, coeffs: f.powers[e as usize].clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(ζ_M') for a multiple M' of the conductor.
    pub fn embed(&self, target: u64) -> Result<Self, Error> {
        if target % self.conductor != 0 {
            return Err(Error::ConductorMismatch(format!(
                "{} does not divide {}",
                self.conductor, target
            )));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let f = field(target);
        let deg = f.phi.len() - 1;
        let mut out = vec![BigRational::zero(); deg];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[i * step]) {
                *o += c * p;
            }
        }
        Ok(CyclotomicNumber { conductor: target, coeffs: out })
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l).unwrap(), other.embed(l).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.lift_pair(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber { conductor: a.conductor, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.lift_pair(other);
        Self::reduce(a.conductor, poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let f = field(self.conductor);
        let deg = self.coeffs.len();
        let mut out = vec![BigRational::zero(); deg];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (m - i) % m;
            for (o, p) in out.iter_mut().zip(&f.powers[e]) {
                *o += c * p;
            }
        }
        CyclotomicNumber { conductor: self.conductor, coeffs: out }
    }

    /// Multiplicative inverse via extended Euclid against Φ_M.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = field(self.conductor);
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // invariant: s_i * self ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (f.phi.clone(), a);
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].clone();
        let s: Poly = s1.iter().map(|x| x / &c).collect();
        Ok(Self::reduce(self.conductor, s))
    }

    /// Exact equality across conductors.
    pub fn eq_exact(&self, other: &Self) -> bool {
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// z1 + z2 j with cyclotomic coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitQuaternion {
    pub z1: CyclotomicNumber,
    pub z2: CyclotomicNumber,
}

impl UnitQuaternion {
    /// Builds z1 + z2 j, embedding both into a common conductor.
    pub fn new(z1: CyclotomicNumber, z2: CyclotomicNumber) -> Self {
        let (z1, z2) = z1.lift_pair(&z2);
        UnitQuaternion { z1, z2 }
    }

    pub fn conductor(&self) -> u64 {
        self.z1.conductor
    }

    pub fn one(m: u64) -> Self {
        Self::new(CyclotomicNumber::one(m), CyclotomicNumber::zero(m))
    }

    pub fn i(m: u64) -> Self {
        Self::new(CyclotomicNumber::root(1, 4, m).unwrap(), CyclotomicNumber::zero(m))
    }

    pub fn j(m: u64) -> Self {
        Self::new(CyclotomicNumber::zero(m), CyclotomicNumber::one(m))
    }

    pub fn k(m: u64) -> Self {
        Self::new(CyclotomicNumber::zero(m), CyclotomicNumber::root(1, 4, m).unwrap())
    }

    /// e^{2πik/N}, optionally times j.
    pub fn monomial(k: i64, n: u64, with_j: bool, m: u64) -> Result<Self, Error> {
        let z = CyclotomicNumber::root(k, n, m)?;
        let zero = CyclotomicNumber::zero(m);
        Ok(if with_j { Self::new(zero, z) } else { Self::new(z, zero) })
    }

    pub fn embed(&self, m: u64) -> Result<Self, Error> {
        Ok(UnitQuaternion { z1: self.z1.embed(m)?, z2: self.z2.embed(m)? })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let z1 = self.z1.mul(&o.z1).sub(&self.z2.mul(&o.z2.conj()));
        let z2 = self.z1.mul(&o.z2).add(&self.z2.mul(&o.z1.conj()));
        Self::new(z1, z2)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.z1.add(&o.z1), self.z2.add(&o.z2))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        UnitQuaternion { z1: self.z1.scale(q), z2: self.z2.scale(q) }
    }

    pub fn neg(&self) -> Self {
        UnitQuaternion { z1: self.z1.neg(), z2: self.z2.neg() }
    }

    /// Quaternion conjugate, which is the inverse for unit quaternions.
    pub fn conj(&self) -> Self {
        UnitQuaternion { z1: self.z1.conj(), z2: self.z2.neg() }
    }

    pub fn norm(&self) -> CyclotomicNumber {
        self.z1.mul(&self.z1.conj()).add(&self.z2.mul(&self.z2.conj()))
    }

    pub fn real_part(&self) -> CyclotomicNumber {
        self.z1.add(&self.z1.conj()).scale(&half())
    }

    pub fn eq_exact(&self, o: &Self) -> bool {
        self.z1.eq_exact(&o.z1) && self.z2.eq_exact(&o.z2)
    }

    pub fn is_one(&self) -> bool {
        self.z2.is_zero() && self.z1.as_rational().is_some_and(|q| q.is_one())
    }

    /// Multiplicative order, searching up to `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

/// Golden ratio (1+√5)/2 as 1 + ζ₅ + ζ₅⁴, inside Q(ζ_M) with 5 | M.
pub fn golden_ratio(m: u64) -> CyclotomicNumber {
    let z = |k| CyclotomicNumber::root(k, 5, m).unwrap();
    CyclotomicNumber::one(m).add(&z(1)).add(&z(4))
}

/// √2 = ζ₈ + ζ₈⁻¹, inside Q(ζ_M) with 8 | M.
pub fn sqrt2(m: u64) -> CyclotomicNumber {
    let z = CyclotomicNumber::root(1, 8, m).unwrap();
    z.add(&z.conj())
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i4() -> CyclotomicNumber {
        CyclotomicNumber::root(1, 4, 4).unwrap()
    }

    #[test]
    fn phi_small() {
        let z: Vec<BigInt> = cyclotomic_polynomial(12);
        assert_eq!(z, [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(cyclotomic_polynomial(5).len(), 5);
        assert_eq!(totient(40), 16);
    }

    #[test]
    fn roots() {
        assert!(CyclotomicNumber::root(0, 4, 4).unwrap().as_rational().unwrap().is_one());
        let i = i4();
        assert_eq!(i.mul(&i).as_rational(), Some(rational(-1, 1)));
        let a = CyclotomicNumber::root(2, 8, 8).unwrap();
        let b = CyclotomicNumber::root(1, 4, 8).unwrap();
        assert_eq!(a, b);
        assert!(CyclotomicNumber::root(1, 3, 8).is_err());
    }

    #[test]
    fn field_ops() {
        assert!(i4().conj().eq_exact(&i4().neg()));
        let z8 = CyclotomicNumber::root(1, 8, 8).unwrap();
        assert!(z8.mul(&z8).eq_exact(&i4()));
        let x = CyclotomicNumber::root(1, 5, 5).unwrap().add(&CyclotomicNumber::one(5));
        assert!(x.mul(&x.inv().unwrap()).as_rational().unwrap().is_one());
        assert_eq!(CyclotomicNumber::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn golden_and_sqrt2() {
        let t = golden_ratio(5);
        assert!(t.mul(&t).eq_exact(&t.add(&CyclotomicNumber::one(5))));
        let s = sqrt2(8);
        assert_eq!(s.mul(&s).as_rational(), Some(rational(2, 1)));
    }

    #[test]
    fn quaternions() {
        let m = 4;
        let (i, j, k) = (UnitQuaternion::i(m), UnitQuaternion::j(m), UnitQuaternion::k(m));
        assert!(i.mul(&j).eq_exact(&k));
        assert!(j.mul(&i).eq_exact(&k.neg()));
        let h = rational(1, 2);
        let alpha = UnitQuaternion::one(m).add(&i).add(&j).add(&k).scale(&h);
        assert!(alpha.mul(&alpha).mul(&alpha).eq_exact(&UnitQuaternion::one(m).neg()));
        assert_eq!(alpha.real_part().as_rational(), Some(h.clone()));
        assert!(alpha.mul(&alpha.conj()).is_one());
        assert_eq!(i.real_part().as_rational(), Some(rational(0, 1)));
        let s = sqrt2(8).scale(&h);
        let beta = UnitQuaternion::new(s.clone(), s);
        let re = beta.real_part();
        assert_eq!(re.mul(&re).as_rational(), Some(h));
        assert_eq!(beta.order(16), Some(8));
    }

    #[test]
    fn real_part_is_class_function() {
        let m = 8;
        let h = rational(1, 2);
        let s = sqrt2(m).scale(&h);
        let beta = UnitQuaternion::new(s.clone(), s);
        let q = UnitQuaternion::monomial(1, 8, false, m).unwrap();
        let c = beta.mul(&q).mul(&beta.conj());
        assert!(c.real_part().eq_exact(&q.real_part()));
    }
}
