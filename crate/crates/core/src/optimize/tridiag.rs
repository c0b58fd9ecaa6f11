//! Real symmetric tridiagonal matrices: Sturm-sequence bisection for the
//! lowest eigenvalue and inverse iteration for its eigenvector.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

/// Eigenvalue with a unit-norm eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl TridiagonalMatrix {
    /// `offdiag[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "tridiagonal entries must be finite".into(),
            ));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Same matrix with every off-diagonal entry negated (a diagonal ±1
    /// similarity, so the spectrum is unchanged).
    pub fn with_negated_offdiag(&self) -> Self {
        Self {
            diag: self.diag.clone(),
            offdiag: self.offdiag.iter().map(|x| -x).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn quadratic(&self, v: &[f64]) -> f64 {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `‖Mv - λv‖∞`.
    pub fn residual(&self, value: f64, v: &[f64]) -> f64 {
        self.apply(v)
            .iter()
            .zip(v)
            .map(|(mv, x)| (mv - value * x).abs())
            .fold(0.0, f64::max)
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDLᵀ factorization of `M - xI`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE * self.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.order() {
            if i > 0 {
                let e = self.offdiag[i - 1];
                q = (self.diag[i] - x) - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Lowest eigenvalue by bisection, to within `tol` (or machine
    /// resolution if that is coarser).
    pub fn lowest_eigenvalue(&self, tol: f64) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Solves `(M - shift·I) x = rhs` by Gaussian elimination with partial
    /// pivoting. Exactly zero pivots are nudged to `tiny` so that inverse
    /// iteration can proceed at a shift on top of an eigenvalue.
    fn solve_shifted(&self, shift: f64, rhs: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.order();
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - shift).collect();
        let mut b = rhs.to_vec();
        if n == 1 {
            let piv = if d[0] == 0.0 { tiny } else { d[0] };
            return vec![b[0] / piv];
        }
        let mut dl = self.offdiag.clone();
        let mut du = self.offdiag.clone();
        // after elimination dl[i] holds the second superdiagonal
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] -= fact * b[i];
                dl[i] = 0.0;
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if i + 2 < n {
                    dl[i] = du[i + 1];
                    du[i + 1] = -fact * dl[i];
                } else {
                    dl[i] = 0.0;
                }
                du[i] = temp;
                let t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - fact * b[i + 1];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
        }
        b
    }

    /// Lowest eigenpair: bisection, then inverse iteration with the shift
    /// `λ - 1e-12`. The vector is unit-norm with its largest component
    /// positive.
    pub fn min_eigenpair(&self, tol: f64) -> Result<Eigenpair> {
        let value = self.lowest_eigenvalue(tol)?;
        let n = self.order();
        let tiny = f64::EPSILON * self.max_abs().max(1.0);
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..3 {
            v = self.solve_shifted(value - 1e-12, &v, tiny);
            normalize(&mut v);
        }
        let (imax, _) = v.iter().enumerate().fold((0, 0.0f64), |(bi, bm), (i, x)| {
            if x.abs() > bm {
                (i, x.abs())
            } else {
                (bi, bm)
            }
        });
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(Eigenpair { value, vector: v })
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}
