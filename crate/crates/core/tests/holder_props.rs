use gasket_core::exact::cone::{v0, v1};
use gasket_core::exact::matrix::{generator_matrix, restrict_to_plane, word_product_bits, PlaneBasis, Symbol};
use gasket_core::exact::rational::{rat, to_f64, Rational, Vec3Q};
use gasket_core::exact::words::{enumerate_necklace_classes, transition_density};
use gasket_core::exact::Expansion;
use gasket_core::holder::{
    alpha_estimate, alpha_periodic, alpha_rational, classify_u, compare_alpha_with_one, corollary_infinite_test,
    trivial_exponent, DerivativeClass, HolderReport, MatrixNorm,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn norm_sq(v: &Vec3Q) -> Rational {
    v.0.iter().map(|x| x * x).sum()
}

/// What the exponent depends on: everything but `s` and the digits.
fn period_data(r: &HolderReport) -> (usize, BigInt, String, f64, f64) {
    (r.n, r.scaled_trace.clone(), r.lambda.to_string(), r.enclosure.lo, r.enclosure.hi)
}

fn all_classes(max: usize) -> Vec<Vec<u8>> {
    (1..=max).flat_map(|l| enumerate_necklace_classes(l, false)).collect()
}

#[test]
fn bounds_and_corollary_up_to_twelve() {
    let floor = trivial_exponent();
    for p in all_classes(12) {
        let r = alpha_periodic(&p).unwrap();
        let d = to_f64(&transition_density(&p));
        assert!(r.enclosure.lo >= floor - 1e-12, "{p:?}");
        assert!(r.enclosure.hi <= 0.7370 + d + 1e-9, "{p:?}");
        let e = Expansion::from_parts(&[], &p).unwrap();
        if corollary_infinite_test(&e) {
            assert_eq!(r.derivative_class, DerivativeClass::Infinite, "{p:?}");
        }
        let exact = compare_alpha_with_one(&p).unwrap();
        let expected = if exact.is_gt() { DerivativeClass::Zero } else { DerivativeClass::Infinite };
        assert!(!exact.is_eq());
        assert_eq!(r.derivative_class, expected, "{p:?}");
    }
}

#[test]
fn rotations_share_the_exponent() {
    for p in all_classes(9) {
        let base = period_data(&alpha_periodic(&p).unwrap());
        for k in 1..p.len() {
            let rotated = [&p[k..], &p[..k]].concat();
            assert_eq!(period_data(&alpha_periodic(&rotated).unwrap()), base, "{p:?} rot {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn preperiod_does_not_matter(q in 1i64..=500, p_seed in 0i64..=500, w in prop::collection::vec(0u8..=1, 0..=8)) {
        let s = rat(p_seed % (q + 1), q);
        let w_value = w.iter().fold(0i64, |a, &b| 2 * a + b as i64);
        // h_w(s) = (w + s) / 2^|w|
        let moved = (rat(w_value, 1) + &s) / rat(1 << w.len(), 1);
        prop_assert_eq!(
            period_data(&alpha_rational(&s).unwrap()),
            period_data(&alpha_rational(&moved).unwrap())
        );
    }

    #[test]
    fn symmetric_points_agree(q in 1i64..=500, p_seed in 0i64..=500) {
        let s = rat(p_seed % (q + 1), q);
        let mirror = rat(1, 1) - &s;
        prop_assert_eq!(period_data(&alpha_rational(&s).unwrap()), period_data(&alpha_rational(&mirror).unwrap()));
        prop_assert_eq!(classify_u(&s).unwrap(), classify_u(&mirror).unwrap());
    }
}

fn cone_vector() -> impl Strategy<Value = Vec3Q> {
    (0i64..=1000, 0i64..=1000)
        .prop_filter("nonzero", |(a, b)| a + b > 0)
        .prop_map(|(a, b)| &v0().scale(&rat(a, 1000)) + &v1().scale(&rat(b, 1000)))
}

fn plane_vector() -> impl Strategy<Value = Vec3Q> {
    (-1000i64..=1000, -1000i64..=1000)
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| Vec3Q::new(rat(a, 1000), rat(b, 1000), rat(-a - b, 1000)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn operator_bound(u in plane_vector(), bit in 0u8..=1) {
        let m = generator_matrix(Symbol::from_bit(bit));
        prop_assert!(norm_sq(&m.apply(&u)) <= rat(9, 25) * norm_sq(&u));
    }

    #[test]
    fn technical_lemma(u in cone_vector(), bit in 0u8..=1) {
        let m = generator_matrix(Symbol::from_bit(bit));
        let base = norm_sq(&u);
        let mut image = u;
        let mut factor = rat(1, 4);
        for n in 1..=30 {
            image = m.apply(&image);
            factor *= rat(9, 25);
            // ‖M^n u‖ ≥ ½ (3/5)^n ‖u‖, squared
            prop_assert!(norm_sq(&image) >= &factor * &base, "n = {}", n);
        }
    }

    #[test]
    fn matrix_vector_separation(w in prop::collection::vec(0u8..=1, 1..=20), u in cone_vector()) {
        let m3 = word_product_bits(&w);
        let m2 = restrict_to_plane(&m3, PlaneBasis::B);
        let image = norm_sq(&m3.apply(&u)).to_f64().unwrap().sqrt();
        let ratio = image / (m2.ln_frobenius().exp() * norm_sq(&u).to_f64().unwrap().sqrt());
        prop_assert!((0.25..=1.5).contains(&ratio), "ratio {}", ratio);
    }
}

#[test]
fn norms_agree_within_two_over_n() {
    let periods = ["01", "0010101", "0000001", "0", "0011", "0001011"];
    let ns: Vec<usize> = (1..=400).collect();
    for p in periods {
        let bits: Vec<u8> = p.bytes().map(|b| b - b'0').cycle().take(400).collect();
        let f = alpha_estimate(&bits, &ns, MatrixNorm::FrobeniusB);
        let m = alpha_estimate(&bits, &ns, MatrixNorm::MaxAbsB);
        for ((n, a), (_, b)) in f.points.iter().zip(&m.points) {
            assert!(a.is_finite() && b.is_finite());
            assert!((a - b).abs() <= 2.0 / *n as f64, "{p} n={n}");
        }
    }
}

#[test]
fn endpoints_use_their_one_sided_periods() {
    let one = alpha_rational(&rat(1, 1)).unwrap();
    let zero = alpha_rational(&rat(0, 1)).unwrap();
    assert_eq!((one.period.clone(), zero.period.clone()), (vec![1], vec![0]));
    assert_eq!(period_data(&one), period_data(&zero));
    assert_eq!(zero.scaled_trace, BigInt::from(4));
}
