//! The quadratic form governing `σ_xp σ_px` on `Σ cₙ|2n,2n⟩`, its
//! tridiagonal matrix, and the scans built on them.
//!
//! For real coefficients `cₙ` the dispersion product is `1/4 + Q(c)` with
//! `Q = Σ 2n(2n+1)cₙ² - (n+1)(2n+1)cₙcₙ₊₁`. Minimizing `Q` over unit `c`
//! is the lowest-eigenvalue problem of the symmetric tridiagonal matrix
//! `C_N`, and the best attainable violation is `(1/4)/(1/4 + λ_min)`.

mod tridiag;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use tridiag::{Eigenpair, TridiagonalMatrix};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
/// Truncation used for the headline `λ_min` / `V_max` numbers.
pub const DEFAULT_TRUNCATION: usize = 200;

/// `C_N`: `diag[n] = 2n(2n+1)`, `offdiag[n] = -(n+1)(2n+1)/2`.
pub fn c_matrix(n: usize) -> TridiagonalMatrix {
    let diag = (0..=n).map(|k| (2 * k * (2 * k + 1)) as f64).collect();
    let offdiag = (0..n)
        .map(|k| -(((k + 1) * (2 * k + 1)) as f64) / 2.0)
        .collect();
    TridiagonalMatrix::new(diag, offdiag).expect("well-formed by construction")
}

/// `Q(c)` evaluated as the displayed (unsymmetrized) sum.
pub fn quadratic_form(c: &[f64]) -> f64 {
    c.iter()
        .enumerate()
        .map(|(n, &cn)| {
            let k = n as f64;
            let next = c.get(n + 1).copied().unwrap_or(0.0);
            2.0 * k * (2.0 * k + 1.0) * cn * cn - (k + 1.0) * (2.0 * k + 1.0) * cn * next
        })
        .sum()
}

pub fn min_eigenvalue(m: &TridiagonalMatrix, tol: f64) -> Result<Eigenpair> {
    m.min_eigenpair(tol)
}

/// `(1/4) / (1/4 + p·λ_min)`.
pub fn vmax_from_lambda(lambda_min: f64, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "mixing weight p = {p} outside [0, 1]"
        )));
    }
    let denom = 0.25 + p * lambda_min;
    if !(denom > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "1/4 + p*lambda_min = {denom} is not positive"
        )));
    }
    Ok(0.25 / denom)
}

/// Violation `V(c₀)` of `c₀|00⟩ + c₁|22⟩` with `c₁ = √(1 - c₀²)`.
pub fn psi2_objective(c0: f64) -> f64 {
    let c1 = (1.0 - c0 * c0).max(0.0).sqrt();
    0.25 / (0.25 + 6.0 * c1 * c1 - c0 * c1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub argbest: f64,
    pub best: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `resolution`.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    resolution: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > resolution {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Scans `c₀ = k/(g+1)`, `k = 1..=g`, then refines around the best grid
/// point by golden section to 1e-6. The refined point is inserted into the
/// grid so that `best` is always the maximum of `values`.
pub fn psi2_scan(grid_size: usize) -> Result<ScanResult> {
    if grid_size < 3 {
        return Err(Error::InvalidParameter(format!(
            "grid size must be >= 3, got {grid_size}"
        )));
    }
    let step = 1.0 / (grid_size as f64 + 1.0);
    let mut grid: Vec<f64> = (1..=grid_size).map(|k| k as f64 * step).collect();
    let mut values: Vec<f64> = grid.iter().map(|&c0| psi2_objective(c0)).collect();
    let ibest = argmax(&values);
    let lo = if ibest == 0 { 0.0 } else { grid[ibest - 1] };
    let hi = if ibest + 1 == grid.len() {
        1.0
    } else {
        grid[ibest + 1]
    };
    let (x, fx) = golden_section_max(psi2_objective, lo, hi, 1e-6);
    if fx > values[ibest] {
        let at = grid.partition_point(|&g| g < x);
        grid.insert(at, x);
        values.insert(at, fx);
    }
    let ibest = argmax(&values);
    Ok(ScanResult {
        argbest: grid[ibest],
        best: values[ibest],
        grid,
        values,
    })
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best })
}

/// `λ_min(C_N)` for each truncation, computed in parallel and returned in
/// input order. Larger truncations contain the smaller ones as subspaces,
/// so the sequence is non-increasing.
pub fn convergence_study(ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    if ns.is_empty() {
        return Err(Error::InvalidParameter("no truncations given".into()));
    }
    if ns.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(
            "truncations must be ascending".into(),
        ));
    }
    let out: Vec<(usize, f64)> = ns
        .par_iter()
        .map(|&n| c_matrix(n).lowest_eigenvalue(1e-15).map(|l| (n, l)))
        .collect::<Result<_>>()?;
    Ok(out)
}
