//! Observable factories: truncated bosonic ladders and quadratures,
//! Pauli-like two-level operators and their parity-block extension to a
//! truncated Fock space.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, C64, I, ONE, ZERO};

fn require_cutoff(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::CutoffTooSmall {
            cutoff: dim,
            reason: "at least two Fock levels are required".into(),
        });
    }
    Ok(())
}

/// Truncated annihilation operator with `⟨n-1|a|n⟩ = √n`.
pub fn annihilation(dim: usize) -> Result<ComplexMatrix> {
    require_cutoff(dim)?;
    ComplexMatrix::from_fn(dim, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

/// Position/momentum pair on a truncated mode.
#[derive(Debug, Clone)]
pub struct QuadraturePair {
    pub x: ComplexMatrix,
    pub p: ComplexMatrix,
    pub dim: usize,
}

/// `x = (a + a†)/√2`, `p = (a - a†)/(i√2)`, so `[x, p] = i` away from the
/// truncation edge.
pub fn quadratures(dim: usize) -> Result<QuadraturePair> {
    let a = annihilation(dim)?;
    let ad = a.adjoint();
    let x = a.add(&ad)?.scale(C64::new(FRAC_1_SQRT_2, 0.0));
    let p = a.sub(&ad)?.scale(-I * FRAC_1_SQRT_2);
    Ok(QuadraturePair { x, p, dim })
}

/// The four two-level operators in the `{|0⟩, |1⟩}` basis.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub identity: ComplexMatrix,
}

pub fn spin_ops() -> SpinOps {
    let m = |v: [C64; 4]| ComplexMatrix::new(vec![2], v.to_vec()).expect("2x2 literal");
    SpinOps {
        x: m([ZERO, ONE, ONE, ZERO]),
        y: m([ZERO, -I, I, ZERO]),
        z: m([ONE, ZERO, ZERO, -ONE]),
        identity: m([ONE, ZERO, ZERO, ONE]),
    }
}

/// `s_x cos θ + s_y sin θ`.
pub fn rotated_spin(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let ops = spin_ops();
    ops.x
        .scale(C64::new(c, 0.0))
        .add(&ops.y.scale(C64::new(s, 0.0)))
        .expect("same dims")
}

/// Pauli-like operators acting within each parity pair `{|2n⟩, |2n+1⟩}`.
#[derive(Debug, Clone)]
pub struct BlockSpin {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Block-diagonal copies of `s_x`, `s_y`, `s_z` on a cutoff-`dim` mode.
/// `dim` must be even so that the top level has a partner.
pub fn block_spin(dim: usize) -> Result<BlockSpin> {
    require_cutoff(dim)?;
    if !dim.is_multiple_of(2) {
        return Err(Error::CutoffTooSmall {
            cutoff: dim,
            reason: "parity blocks need an even cutoff".into(),
        });
    }
    let same_block = |i: usize, j: usize| i / 2 == j / 2;
    let x = ComplexMatrix::from_fn(dim, |i, j| {
        if same_block(i, j) && i != j {
            ONE
        } else {
            ZERO
        }
    })?;
    let y = ComplexMatrix::from_fn(dim, |i, j| {
        if !same_block(i, j) || i == j {
            ZERO
        } else if i % 2 == 0 {
            -I
        } else {
            I
        }
    })?;
    let z = ComplexMatrix::from_fn(dim, |i, j| match (i == j, i % 2) {
        (true, 0) => ONE,
        (true, _) => -ONE,
        _ => ZERO,
    })?;
    Ok(BlockSpin { x, y, z })
}
