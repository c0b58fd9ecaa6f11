mod support;

use entwit::hilbert::{commutator, expectation, variance, ComplexMatrix, QuantumState, C64};
use entwit::polyid::{verify, Identity};
use entwit::witnesses::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

fn all_conditions(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    s: &QuantumState,
) -> Vec<WitnessReport> {
    vec![
        variance_product(a, ap, b, bp, s).unwrap(),
        variance_sum(a, ap, b, bp, s).unwrap(),
        multipartite(&[a.clone(), b.clone()], &[ap.clone(), bp.clone()], s).unwrap(),
        ramanujan_witness(a, ap, b, bp, s, 2).unwrap(),
        ramanujan_witness(a, ap, b, bp, s, 4).unwrap(),
        uffink(a, ap, b, bp, s).unwrap(),
        four_variance(a, ap, b, bp, s).unwrap(),
    ]
}

#[test]
fn ramanujan_identities_hold_before_conditions_are_used() {
    assert!(verify(Identity::Ramanujan, 2).unwrap());
    assert!(verify(Identity::Ramanujan, 4).unwrap());
    assert!(verify(Identity::ComplexNorm, 0).unwrap());
}

#[test]
fn separable_qubit_states_never_violate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let s = if rng.gen_bool(0.5) {
            random_product(2, 2, &mut rng)
        } else {
            random_separable(2, 2, &mut rng)
        };
        let (a, ap, b, bp) = random_quadruple(2, 2, &mut rng);
        for r in all_conditions(&a, &ap, &b, &bp, &s) {
            assert!(
                !r.violated && r.delta <= 1e-9,
                "{} violated: {:?}",
                r.name,
                r
            );
        }
    }
}

#[test]
fn separable_qutrit_pairs_never_violate() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let s = random_separable(3, 4, &mut rng);
        let (a, ap, b, bp) = random_quadruple(3, 4, &mut rng);
        for r in all_conditions(&a, &ap, &b, &bp, &s) {
            assert!(!r.violated, "{} violated: {:?}", r.name, r);
        }
    }
}

#[test]
fn details_allow_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let s = random_pure(&[2, 3], &mut rng);
    let (a, ap, b, bp) = random_quadruple(2, 3, &mut rng);
    let mean = |x: &ComplexMatrix, y: &ComplexMatrix| expectation(&x.kron(y), &s).unwrap().re;
    let (ab, abp, apb, apbp) = (mean(&a, &b), mean(&a, &bp), mean(&ap, &b), mean(&ap, &bp));

    let u = uffink(&a, &ap, &b, &bp, &s).unwrap();
    for (k, v) in [
        ("<AB>", ab),
        ("<AB'>", abp),
        ("<A'B>", apb),
        ("<A'B'>", apbp),
    ] {
        assert!((u.details[k] - v).abs() < 1e-12, "{k}");
    }
    assert!((u.lhs - ((ab - apbp).powi(2) + (abp + apb).powi(2))).abs() < 1e-10);

    let r = ramanujan_witness(&a, &ap, &b, &bp, &s, 2).unwrap();
    let lhs = (ab + abp + apb).powi(2) + (abp + apb + apbp).powi(2) + (ab - apbp).powi(2);
    assert!((r.lhs - lhs).abs() < 1e-10);

    let vp = variance_product(&a, &ap, &b, &bp, &s).unwrap();
    let comm = expectation(
        &commutator(&a, &ap)
            .unwrap()
            .kron(&commutator(&b, &bp).unwrap()),
        &s,
    )
    .unwrap();
    assert!((vp.details["re<[A,A'][B,B']>"] - comm.re).abs() < 1e-12);
    assert!((vp.details["im<[A,A'][B,B']>"] - comm.im).abs() < 1e-12);
    let lhs =
        variance(&a.kron(&b), &s).unwrap().sqrt() * variance(&ap.kron(&bp), &s).unwrap().sqrt();
    assert!((vp.lhs - lhs).abs() < 1e-12);
    assert!((vp.rhs - comm.norm() / 4.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_party_multipartite_matches_variance_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_pure(&[2, 3], &mut rng);
        let (a, ap, b, bp) = random_quadruple(2, 3, &mut rng);
        let m = multipartite(&[a.clone(), b.clone()], &[ap.clone(), bp.clone()], &s).unwrap();
        let v = variance_product(&a, &ap, &b, &bp, &s).unwrap();
        prop_assert!((m.lhs - v.lhs).abs() < 1e-10);
        prop_assert!((m.rhs - v.rhs).abs() < 1e-10);
        prop_assert_eq!(m.violated, v.violated);
    }

    #[test]
    fn ratio_invariant_under_opposite_rescaling(seed in any::<u64>(), t in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_pure(&[2, 2], &mut rng);
        let (a, ap, b, bp) = random_quadruple(2, 2, &mut rng);
        let base = variance_product(&a, &ap, &b, &bp, &s).unwrap();
        let ta = a.scale(C64::new(t, 0.0));
        let tb = b.scale(C64::new(1.0 / t, 0.0));
        let scaled = variance_product(&ta, &ap, &tb, &bp, &s).unwrap();
        if let (Some(v0), Some(v1)) = (base.v, scaled.v) {
            prop_assert!((v0 - v1).abs() < 1e-9 * v0.max(1.0));
        }
        prop_assert!((base.lhs - scaled.lhs).abs() < 1e-9 * base.lhs.max(1.0));
    }

    #[test]
    fn sum_violation_implies_product_violation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_pure(&[2, 2], &mut rng);
        let (a, ap, b, bp) = random_quadruple(2, 2, &mut rng);
        let sum = variance_sum(&a, &ap, &b, &bp, &s).unwrap();
        let prod = variance_product(&a, &ap, &b, &bp, &s).unwrap();
        if sum.violated {
            prop_assert!(prod.violated);
        }
    }

    #[test]
    fn four_variance_violation_implies_a_product_violation(seed in any::<u64>()) {
        // Σ of the four variances is at least 2σ_ABσ_A'B' + 2σ_AB'σ_A'B, so
        // a violation forces one of the two pairings below the bound.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_pure(&[2, 2], &mut rng);
        let (a, ap, b, bp) = random_quadruple(2, 2, &mut rng);
        let four = four_variance(&a, &ap, &b, &bp, &s).unwrap();
        if four.delta > 1e-6 {
            let p1 = variance_product(&a, &ap, &b, &bp, &s).unwrap();
            let p2 = variance_product(&a, &ap, &bp, &b, &s).unwrap();
            prop_assert!(p1.violated || p2.violated);
        }
    }

    #[test]
    fn floor_bounds_the_product_of_spreads(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_pure(&[2, 3], &mut rng);
        let (a, ap, b, bp) = random_quadruple(2, 3, &mut rng);
        let floor = heisenberg_floor(&a, &ap, &b, &bp, &s).unwrap();
        let v = variance_product(&a, &ap, &b, &bp, &s).unwrap();
        prop_assert!(v.lhs >= floor - 1e-9);
    }
}
