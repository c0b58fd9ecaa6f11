mod support;

use entwit::hilbert::{expectation, kron, mix, variance, ComplexMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::*;

fn dense_variance(a: &ComplexMatrix, rho: &ComplexMatrix) -> f64 {
    // Tr(ρA²) - Tr(ρA)², with A² formed entry by entry
    let d = a.side();
    let mut a2 = vec![entwit::hilbert::ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                a2[i * d + j] += a.get(i, k) * a.get(k, j);
            }
        }
    }
    let mut m1 = entwit::hilbert::ZERO;
    let mut m2 = entwit::hilbert::ZERO;
    for i in 0..d {
        for j in 0..d {
            m1 += rho.get(i, j) * a.get(j, i);
            m2 += rho.get(i, j) * a2[j * d + i];
        }
    }
    m2.re - m1.re * m1.re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variance_is_concave(seed in any::<u64>(), p in 0.0f64..=1.0, dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(dim, &mut rng);
        let (r1, r2) = (random_state(dim, &mut rng), random_state(dim, &mut rng));
        let m = mix(&[r1.clone(), r2.clone()], &[p, 1.0 - p]).unwrap();
        let lhs = variance(&a, &m).unwrap();
        let rhs = p * variance(&a, &r1).unwrap() + (1.0 - p) * variance(&a, &r2).unwrap();
        prop_assert!(lhs >= rhs - 1e-9, "{lhs} < {rhs}");
    }

    #[test]
    fn squared_mean_is_convex_and_mean_is_linear(seed in any::<u64>(), p in 0.0f64..=1.0, dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(dim, &mut rng);
        let (r1, r2) = (random_state(dim, &mut rng), random_state(dim, &mut rng));
        let m = mix(&[r1.clone(), r2.clone()], &[p, 1.0 - p]).unwrap();
        let e = expectation(&a, &m).unwrap();
        let (e1, e2) = (expectation(&a, &r1).unwrap(), expectation(&a, &r2).unwrap());
        prop_assert!((e - (e1 * p + e2 * (1.0 - p))).norm() < 1e-10);
        prop_assert!(e.re * e.re <= p * e1.re * e1.re + (1.0 - p) * e2.re * e2.re + 1e-9);
    }

    #[test]
    fn product_observable_spread_dominates(seed in any::<u64>(), da in 2usize..5, db in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ra, rb) = (random_state(da, &mut rng), random_state(db, &mut rng));
        let (a, b) = (random_hermitian(da, &mut rng), random_hermitian(db, &mut rng));
        let s_ab = variance(&a.kron(&b), &ra.tensor(&rb)).unwrap().sqrt();
        let s_a = variance(&a, &ra).unwrap().sqrt();
        let s_b = variance(&b, &rb).unwrap().sqrt();
        prop_assert!(s_ab >= s_a * s_b - 1e-9);
    }

    #[test]
    fn kron_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(2, &mut rng);
        let b = random_hermitian(3, &mut rng);
        let c = random_hermitian(2, &mut rng);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
        prop_assert_eq!(left.dims(), &[2, 3, 2]);
    }

    #[test]
    fn variance_matches_dense_oracle(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(dim, &mut rng);
        let s = random_state(dim, &mut rng);
        let oracle = dense_variance(&a, &s.density());
        prop_assert!((variance(&a, &s).unwrap() - oracle.max(0.0)).abs() < 1e-10);
    }

    #[test]
    fn mixtures_stay_valid_states(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_separable(dim, 2, &mut rng);
        let rho = s.density();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(rho.hermitian_deviation() < 1e-12);
    }
}
