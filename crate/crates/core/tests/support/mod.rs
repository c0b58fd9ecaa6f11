//! Random states and observables for property tests.
#![allow(dead_code)]

use entwit::hilbert::{mix, ComplexMatrix, QuantumState, C64};
use rand::Rng;

pub fn random_complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `(M + M†)/2` for `M` with uniform entries in the unit square.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let raw: Vec<C64> = (0..dim * dim).map(|_| random_complex(rng)).collect();
    ComplexMatrix::from_fn(dim, |i, j| {
        (raw[i * dim + j] + raw[j * dim + i].conj()) * 0.5
    })
    .unwrap()
}

pub fn random_amplitudes(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| random_complex(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn random_pure(dims: &[usize], rng: &mut impl Rng) -> QuantumState {
    let d = dims.iter().product();
    QuantumState::pure(dims.to_vec(), random_amplitudes(d, rng)).unwrap()
}

pub fn random_weights(k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    let mut w: Vec<f64> = w.into_iter().map(|x| x / total).collect();
    // absorb rounding so the weights sum to one as closely as possible
    let rest: f64 = w[1..].iter().sum();
    w[0] = 1.0 - rest;
    w
}

/// Pure with probability 1/2, otherwise a mixture of 2 to 3 pure states.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> QuantumState {
    if rng.gen_bool(0.5) {
        return random_pure(&[dim], rng);
    }
    let k = rng.gen_range(2..=3);
    let parts: Vec<QuantumState> = (0..k).map(|_| random_pure(&[dim], rng)).collect();
    mix(&parts, &random_weights(k, rng)).unwrap()
}

pub fn random_product(da: usize, db: usize, rng: &mut impl Rng) -> QuantumState {
    random_state(da, rng).tensor(&random_state(db, rng))
}

/// Convex mixture of 1 to 4 random product states.
pub fn random_separable(da: usize, db: usize, rng: &mut impl Rng) -> QuantumState {
    let k = rng.gen_range(1..=4);
    let parts: Vec<QuantumState> = (0..k).map(|_| random_product(da, db, rng)).collect();
    mix(&parts, &random_weights(k, rng)).unwrap()
}

/// Hermitian operators `(A, A', B, B')` on factors of size `da`, `db`.
pub fn random_quadruple(
    da: usize,
    db: usize,
    rng: &mut impl Rng,
) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    (
        random_hermitian(da, rng),
        random_hermitian(da, rng),
        random_hermitian(db, rng),
        random_hermitian(db, rng),
    )
}
