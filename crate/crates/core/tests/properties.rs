//! Property-based invariants of the scalar field, the rewrite engine and the printer.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qcalc::algebra::random_poly;
use qcalc::expr_io::{parse, parse_at, print};
use qcalc::scalars::{IntPoly, QScalar};
use qcalc::{presets, NCPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = QScalar> {
    let poly = prop::collection::vec(-4i64..=4, 1..4);
    (poly.clone(), poly, -3i64..=3).prop_filter_map("zero denominator", |(n, d, k)| {
        let num = IntPoly::from_coeffs(n.into_iter().map(BigInt::from).collect());
        let den = IntPoly::from_coeffs(d.into_iter().map(BigInt::from).collect());
        QScalar::new(num, den).ok().map(|s| &s * &QScalar::q_pow(k))
    })
}

/// Presets whose rule tables are confluent (the probe finds no ambiguity).
const CONFLUENT: &[&str] = &["BL2_forms", "Cq_plane", "GLq2", "GLq2_matched", "SLq2_forms", "SLq2R_sigma", "Tq_forms", "Uq2_star"];

/// A random normal-ordered polynomial in a preset, from a seed.
fn normal_poly(name: &str, seed: u64, terms: usize, len: usize) -> Option<NCPoly> {
    let p = presets::get(name).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = random_poly(&p, &mut rng, terms, len).filter(|w| !p.sig.is_null(w));
    p.normal_order(&raw).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), QScalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in scalar(), b in scalar(), n in 1i64..9, d in 1i64..9) {
        let q0 = BigRational::new(n.into(), d.into());
        if let (Ok(x), Ok(y), Ok(xy)) = (a.eval(&q0), b.eval(&q0), (&a * &b).eval(&q0)) {
            prop_assert_eq!(xy, &x * &y);
            prop_assert_eq!((&a + &b).eval(&q0).unwrap(), x + y);
        }
    }

    #[test]
    fn scalar_text_round_trips(a in scalar()) {
        let gl = presets::get("GLq2").unwrap();
        let back = parse(&a.to_string(), &gl).unwrap().as_scalar();
        prop_assert_eq!(back, Some(a));
    }

    #[test]
    fn normal_order_is_idempotent(i in 0..CONFLUENT.len(), seed in any::<u64>()) {
        let p = presets::get(CONFLUENT[i]).unwrap();
        if let Some(n) = normal_poly(CONFLUENT[i], seed, 4, 5) {
            prop_assert_eq!(p.normal_order(&n).unwrap(), n);
        }
    }

    #[test]
    fn print_then_parse_is_identity(i in 0..CONFLUENT.len(), seed in any::<u64>()) {
        let p = presets::get(CONFLUENT[i]).unwrap();
        if let Some(n) = normal_poly(CONFLUENT[i], seed, 4, 5) {
            let text = print(&p.sig, &n);
            prop_assert_eq!(parse(&text, &p).unwrap(), n, "{}", text);
        }
    }

    #[test]
    fn product_is_associative(i in 0..CONFLUENT.len(), seed in any::<u64>()) {
        let p = presets::get(CONFLUENT[i]).unwrap();
        let (Some(a), Some(b), Some(c)) = (
            normal_poly(CONFLUENT[i], seed, 2, 2),
            normal_poly(CONFLUENT[i], seed ^ 1, 2, 2),
            normal_poly(CONFLUENT[i], seed ^ 2, 2, 2),
        ) else { return Ok(()) };
        let left = p.mul(&p.mul(&a, &b).unwrap(), &c).unwrap();
        let right = p.mul(&a, &p.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn specialization_commutes_with_normal_ordering(i in 0..CONFLUENT.len(), seed in any::<u64>(), n in 2i64..9) {
        let p = presets::get(CONFLUENT[i]).unwrap();
        let q0 = BigRational::new(n.into(), 3.into());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = random_poly(&p, &mut rng, 3, 4).filter(|w| !p.sig.is_null(w));
        let text = print(&p.sig, &raw);
        let (Ok(symbolic), Ok(special)) = (parse(&text, &p), p.specialize(&q0)) else { return Ok(()) };
        let Ok(numeric) = parse_at(&text, &special, &q0) else { return Ok(()) };
        let evaluated = symbolic.map_coeffs(|c| QScalar::from_rational(&c.eval(&q0).unwrap()));
        prop_assert_eq!(numeric, evaluated);
    }

    #[test]
    fn d_squared_vanishes_on_functions(i in 0..3usize, seed in any::<u64>()) {
        let name = ["Cq_plane", "GLq2_matched", "SLq2_forms"][i];
        let p = presets::get(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = random_poly(&p, &mut rng, 3, 3).filter(|w| p.sig.word_degree(w) == 0);
        if let Ok(d1) = p.ext_d(&raw) {
            prop_assert!(p.ext_d(&d1).unwrap().is_zero(), "{}: d^2 of {}", name, print(&p.sig, &raw));
        }
    }
}
