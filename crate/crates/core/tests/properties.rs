use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sphinv_core::exactmath::UnitQuaternion;
use sphinv_core::families::{manifold_specs, parse_spec, Family, GroupSpec};
use sphinv_core::involutions::{extend, lift_parent, lifts};
use sphinv_core::oracle::smith_diagonal;
use sphinv_core::quintuple::canonical_s;
use sphinv_core::s3groups::{Elem, Turn};
use sphinv_core::seifert::{fibration_twisted, frac, mod_one};

fn quaternion(e: Elem, m: u64) -> UnitQuaternion {
    match e {
        Elem::Mono { t, j } => UnitQuaternion::monomial(t.num() as i64, t.den(), j, m).unwrap(),
        Elem::Poly(_) => unreachable!("monomials only"),
    }
}

fn mono() -> impl Strategy<Value = (i64, u64, bool)> {
    (-50i64..50, 1u64..13, any::<bool>())
}

fn elem((k, n, j): (i64, u64, bool)) -> Elem {
    if j {
        Elem::root_j(k, n)
    } else {
        Elem::root(k, n)
    }
}

proptest! {
    #[test]
    fn turn_is_a_reduced_group(a in -60i64..60, n in 1u64..40, b in -60i64..60, k in 1u64..40) {
        let (x, y) = (Turn::new(a, n), Turn::new(b, k));
        prop_assert!(x.num() < x.den() && x.num().gcd(&x.den()) == 1);
        prop_assert_eq!(x.add(y), y.add(x));
        prop_assert_eq!(x.add(x.neg()), Turn::ZERO);
        prop_assert_eq!(x.add(y).add(x.neg()), y);
        prop_assert_eq!(x.fold(), x.neg().fold());
    }

    #[test]
    fn monomials_multiply_like_quaternions(a in mono(), b in mono()) {
        let (x, y) = (elem(a), elem(b));
        let m = (a.1 * b.1).lcm(&4);
        prop_assert_eq!(quaternion(x.mul(y), m), quaternion(x, m).mul(&quaternion(y, m)));
        prop_assert_eq!(x.mul(x.inv()), Elem::ONE);
        prop_assert_eq!(x.theta(), y.mul(x).mul(y.inv()).theta());
    }

    #[test]
    fn mod_one_lands_in_unit_interval(p in -500i64..500, q in 1i64..60) {
        let x = frac(p, q);
        let r = mod_one(&x);
        prop_assert!(!r.is_negative() && r < frac(1, 1));
        prop_assert!((x - r).is_integer());
    }

    #[test]
    fn canonical_twist_is_sign_and_shift_invariant(s in -100i64..100, r in 1u64..40) {
        let c = canonical_s(s, r);
        prop_assert_eq!(c, canonical_s(-s, r));
        prop_assert_eq!(c, canonical_s(s + r as i64, r));
        prop_assert!(r <= 2 || 2 * c <= r);
    }

    #[test]
    fn spec_text_round_trips(fam in 0usize..Family::ALL.len(), m in 1u64..30, n in 1u64..30, r in 1u64..30, s in 1u64..30) {
        let f = Family::ALL[fam];
        let g = GroupSpec::of(f, &[m, n, r, s][..f.arity()]);
        let text = g.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), g);
    }

    #[test]
    fn smith_product_is_the_determinant(a in prop::collection::vec(-9i64..10, 9)) {
        let m: Vec<Vec<BigInt>> = a.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        let d = smith_diagonal(m);
        let prod: BigInt = d.iter().product();
        prop_assert_eq!(prod.abs(), det.abs());
        for w in d.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_lift_is_an_involution_lift(k in 0usize..1000) {
        let specs = manifold_specs(120);
        let g = specs[k % specs.len()];
        let h = lift_parent(&g).unwrap().construct().unwrap().realize().unwrap();
        for (label, f) in lifts(&g).unwrap() {
            prop_assert!(!h.contains(&f), "{} {}", g, label);
            prop_assert!(h.contains(&(f.0.mul(f.0), f.1.mul(f.1))), "{} {}", g, label);
            let (big, _) = extend(&h, f).unwrap();
            prop_assert_eq!(big.len(), 2 * h.len());
        }
    }

    #[test]
    fn lens_fibrations_have_integral_euler_class(k in 0usize..1000) {
        let specs: Vec<_> = manifold_specs(300).into_iter().filter(|g| matches!(g.family, Family::F1 | Family::F1p)).collect();
        let fib = fibration_twisted(&specs[k % specs.len()]).unwrap();
        prop_assert!(fib.is_integral());
    }
}
