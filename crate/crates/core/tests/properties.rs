use num::{BigRational, Signed, Zero};
use proptest::prelude::*;
use ttstar_core::case::{asymptotic_to_k, in_region, k_to_asymptotic, AsymptoticData, KVector};
use ttstar_core::cyclotomic::RealCyclotomic;
use ttstar_core::scalar::{int, rat, to_f64};
use ttstar_core::stokes::{stokes_from_asymptotic, stokes_from_k, stokes_float};
use ttstar_core::theta::{k_from_tk, tk_from_k, tk_from_shifted};
use ttstar_core::{AlgReal, CaseId, Group};

fn small_rational(span: i64) -> impl Strategy<Value = BigRational> {
    (1i64..=12).prop_flat_map(move |d| (-span * d..=span * d).prop_map(move |n| rat(n, d)))
}

fn case() -> impl Strategy<Value = CaseId> {
    (0usize..10).prop_map(|i| CaseId::ALL[i])
}

/// Symmetric k+1 with non-negative entries and N = 1, built from
/// non-negative weights on the free coordinates.
fn admissible_k() -> impl Strategy<Value = KVector<BigRational>> {
    (case(), prop::collection::vec(0i64..=12, 3)).prop_filter_map("not admissible", |(c, w)| {
        let total = int(w[0] + w[1] + w[2]);
        if total.is_zero() {
            return None;
        }
        let k = KVector::from_kl(c, int(w[0]), int(w[1]), total).ok()?;
        if k.shifted().iter().any(|x| x.is_negative()) {
            return None;
        }
        Some(k.normalized())
    })
}

fn cos_sum(r: &BigRational, s: &BigRational) -> (AlgReal, AlgReal) {
    let lhs = AlgReal::cos2(r) * AlgReal::cos2(s);
    let rhs = AlgReal::cos2(&(r + s)) + AlgReal::cos2(&(r - s));
    (lhs, rhs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_to_sum(r in small_rational(2), s in small_rational(2)) {
        let (lhs, rhs) = cos_sum(&r, &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cosine_symmetries(r in small_rational(3)) {
        let c = AlgReal::cos2(&r);
        prop_assert_eq!(&AlgReal::cos2(&-r.clone()), &c);
        prop_assert_eq!(&AlgReal::cos2(&(r.clone() + int(2))), &c);
        prop_assert_eq!(AlgReal::cos2(&(int(1) - r.clone())), -c.clone());
        prop_assert_eq!(&c.conj(), &c);
        prop_assert!(c.is_conjugation_fixed());
        prop_assert!((c.to_f64() - 2.0 * (std::f64::consts::PI * to_f64(&r)).cos()).abs() < 1e-12);
    }

    #[test]
    fn field_axioms(r in small_rational(1), s in small_rational(1), t in small_rational(1)) {
        let (x, y, z) = (AlgReal::cos2(&r), AlgReal::cos2(&s), AlgReal::cos2(&t));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        let prod = &x * &y;
        prop_assert!((prod.to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-10);
    }

    #[test]
    fn region_iff_k_at_least_minus_one(c in case(), g in small_rational(4), d in small_rational(4)) {
        let a = AsymptoticData::new(g, d);
        let k = asymptotic_to_k(c, &a, &int(1)).unwrap();
        prop_assert_eq!(in_region(c, &a), k.is_admissible());
    }

    #[test]
    fn asymptotic_round_trip(c in case(), g in small_rational(4), d in small_rational(4), n in prop::sample::select(vec![1i64, 4, 12])) {
        let a = AsymptoticData::new(g, d);
        let k = asymptotic_to_k(c, &a, &int(n)).unwrap();
        prop_assert_eq!(k.n_total(), int(n));
        prop_assert_eq!(k_to_asymptotic(&k), a);
    }

    #[test]
    fn k_round_trip_and_scaling(k in admissible_k(), scale in 1i64..=6) {
        let a = k_to_asymptotic(&k);
        let back = asymptotic_to_k(k.case(), &a, &k.n_total()).unwrap();
        prop_assert_eq!(&back, &k);
        let bigger = asymptotic_to_k(k.case(), &a, &int(scale)).unwrap();
        prop_assert_eq!(k_to_asymptotic(&bigger), a);
        prop_assert_eq!(bigger.normalized(), k);
    }

    #[test]
    fn stokes_from_k_matches_asymptotic_route(k in admissible_k()) {
        let direct = stokes_from_k(&k);
        let via = stokes_from_asymptotic(k.case(), &k_to_asymptotic(&k));
        prop_assert!(direct.equivalent(&via));
        prop_assert_eq!(direct.s1_sign_ambiguous, k.case().group().sign_ambiguous());
    }

    #[test]
    fn group_coincidence(gi in 0usize..4, g in small_rational(3), d in small_rational(3)) {
        let group = Group::ALL[gi];
        let a = AsymptoticData::new(g, d);
        let first = stokes_from_asymptotic(group.cases()[0], &a);
        for &c in &group.cases()[1..] {
            prop_assert_eq!(&stokes_from_asymptotic(c, &a), &first);
        }
    }

    #[test]
    fn stokes_bounds(c in case(), g in small_rational(4), d in small_rational(4)) {
        let a = AsymptoticData::new(g.clone(), d.clone());
        prop_assume!(in_region(c, &a));
        let s = stokes_from_asymptotic(c, &a);
        let s1_bound = if c.group().sign_ambiguous() { 4.0 } else { 5.0 };
        prop_assert!(s.s1.to_f64().abs() <= s1_bound + 1e-12);
        prop_assert!(s.s2.to_f64().abs() <= 10.0 + 1e-12);
        let (f1, f2) = stokes_float(c.group(), to_f64(&g), to_f64(&d));
        prop_assert!((f1.abs() - s.s1.to_f64().abs()).abs() < 1e-9);
        prop_assert!((f2 - s.s2.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn tk_rotation_invariance(k in admissible_k(), rot in 0usize..6) {
        let shifted = k.shifted();
        let n = shifted.len();
        let mut rotated = shifted.clone();
        rotated.rotate_left(rot % n);
        prop_assert_eq!(tk_from_shifted(&rotated), tk_from_k(&k));
    }

    #[test]
    fn tk_inverse_recovers_cyclic_gaps(k in admissible_k()) {
        let shifted = k.shifted();
        let gaps = k_from_tk(&tk_from_k(&k), shifted.len()).unwrap();
        let n = shifted.len();
        let is_rotation = (0..n).any(|r| (0..n).all(|i| gaps[i] == shifted[(i + r) % n]));
        prop_assert!(is_rotation);
        let total: BigRational = gaps.iter().sum();
        prop_assert_eq!(total, int(1));
    }
}

#[test]
fn niven_values_are_the_only_rational_cosines() {
    for d in 1..=30i64 {
        for n in 0..2 * d {
            let r = rat(n, d);
            let c = AlgReal::cos2(&r);
            let expect_rational = matches!(r.denom().to_string().as_str(), "1" | "2" | "3");
            assert_eq!(c.as_rational().is_some(), expect_rational, "{r}");
        }
    }
}

#[test]
fn scalar_embedding_is_exact() {
    let x = RealCyclotomic::from_scalar(rat(7, 3));
    assert_eq!(x.as_rational(), Some(rat(7, 3)));
    assert_eq!((&x * &x).as_rational(), Some(rat(49, 9)));
}
