//! Dense complex linear algebra over composite Hilbert spaces.
//!
//! Operators are stored as row-major square matrices that remember the list
//! of local factor dimensions they act on, so that tensor products and
//! dimension checks against states stay explicit. States are either pure
//! (amplitude vectors) or mixed (density matrices); pure states are only
//! promoted to projectors inside [`mix`].

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Numerical tolerances shared by the linear-algebra layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-abs deviation of `A - A†` accepted for an observable.
    pub hermitian: f64,
    /// Norm / trace / Hermiticity slack for state invariants.
    pub state: f64,
    /// Eigenvalue floor for density matrices.
    pub positivity: f64,
    /// Negative variances above `-variance_floor` are clamped to zero.
    pub variance_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            state: 1e-12,
            positivity: 1e-10,
            variance_floor: 1e-6,
        }
    }
}

fn side_of(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidDims(dims.to_vec()));
    }
    Ok(dims.iter().product())
}

fn check_dims(expected: &[usize], found: &[usize]) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            expected: expected.to_vec(),
            found: found.to_vec(),
        });
    }
    Ok(())
}

/// Dense complex square matrix acting on a tensor product of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dims: Vec<usize>,
    side: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dims: Vec<usize>, data: Vec<C64>) -> Result<Self> {
        let side = side_of(&dims)?;
        if data.len() != side * side {
            return Err(Error::EntryCount {
                dims,
                side,
                found: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(k / side, k % side));
        }
        Ok(Self { dims, side, data })
    }

    pub fn zeros(dims: &[usize]) -> Result<Self> {
        let side = side_of(dims)?;
        Ok(Self {
            dims: dims.to_vec(),
            side,
            data: vec![ZERO; side * side],
        })
    }

    pub fn identity(dims: &[usize]) -> Result<Self> {
        let mut m = Self::zeros(dims)?;
        for i in 0..m.side {
            m.data[i * m.side + i] = ONE;
        }
        Ok(m)
    }

    /// Single-factor matrix from a closure over `(row, col)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Result<Self> {
        let mut m = Self::zeros(&[dim])?;
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        if let Some(k) = m
            .data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(k / dim, k % dim));
        }
        Ok(m)
    }

    /// Outer product `|u⟩⟨v|` carrying the given dims.
    pub fn outer(dims: &[usize], u: &[C64], v: &[C64]) -> Result<Self> {
        let mut m = Self::zeros(dims)?;
        if u.len() != m.side || v.len() != m.side {
            return Err(Error::EntryCount {
                dims: dims.to_vec(),
                side: m.side,
                found: u.len().max(v.len()),
            });
        }
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                m.data[i * m.side + j] = ui * vj.conj();
            }
        }
        Ok(m)
    }

    /// Reinterprets the factor structure without touching entries.
    pub fn with_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        let side = side_of(&dims)?;
        if side != self.side {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: dims,
            });
        }
        self.dims = dims;
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.side + col]
    }

    pub fn adjoint(&self) -> Self {
        let n = self.side;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self {
            dims: self.dims.clone(),
            side: n,
            data,
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dims: self.dims.clone(),
            side: self.side,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(&self.dims, &other.dims)?;
        Ok(Self {
            dims: self.dims.clone(),
            side: self.side,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(&self.dims, &other.dims)?;
        Ok(Self {
            dims: self.dims.clone(),
            side: self.side,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix product. Zero entries of `self` are skipped, which keeps the
    /// sparse ladder-operator products cheap.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dims(&self.dims, &other.dims)?;
        let n = self.side;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            side: n,
            data,
        })
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::identity(&self.dims).expect("dims already validated");
        for _ in 0..exponent {
            acc = acc.matmul(self).expect("same dims");
        }
        acc
    }

    /// Tensor product; the result carries `concat(self.dims, other.dims)`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.side, other.side);
        let side = n * m;
        let mut data = vec![ZERO; side * side];
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    let row = (i * m + k) * side + j * m;
                    for l in 0..m {
                        data[row + l] = a * other.data[k * m + l];
                    }
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims, side, data }
    }

    /// Maximum absolute entry of `A - A†`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.side;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        Ok(())
    }

    pub fn trace(&self) -> C64 {
        (0..self.side).map(|i| self.data[i * self.side + i]).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.side, "vector length must equal matrix side");
        let n = self.side;
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest entrywise distance; infinite when the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// `AB + BA`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)?.add(&b.matmul(a)?)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Tensor product of a non-empty list of factors.
pub fn kron_all(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty tensor product".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Pure {
        dims: Vec<usize>,
        amplitudes: Vec<C64>,
    },
    Mixed(ComplexMatrix),
}

/// Pure or mixed state over a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    repr: Repr,
}

impl QuantumState {
    /// Pure state; the amplitude vector must already have unit norm.
    pub fn pure(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let side = side_of(&dims)?;
        if amplitudes.len() != side {
            return Err(Error::EntryCount {
                dims,
                side,
                found: amplitudes.len(),
            });
        }
        let norm = vec_norm(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > Tolerances::default().state {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            repr: Repr::Pure { dims, amplitudes },
        })
    }

    /// Pure state from an unnormalized, non-zero vector.
    pub fn pure_normalized(dims: Vec<usize>, mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm));
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::pure(dims, amplitudes)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let side = side_of(&dims)?;
        if index >= side {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for side {side}"
            )));
        }
        let mut amplitudes = vec![ZERO; side];
        amplitudes[index] = ONE;
        Self::pure(dims, amplitudes)
    }

    /// Mixed state; checks Hermiticity, unit trace and the eigenvalue floor.
    pub fn mixed(density: ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        density.ensure_hermitian(tol.state)?;
        let tr = density.trace();
        if (tr.re - 1.0).abs() > tol.state || tr.im.abs() > tol.state {
            return Err(Error::BadTrace(tr.re));
        }
        if !shifted_cholesky_succeeds(&density, tol.positivity) {
            return Err(Error::NotPositive(tol.positivity));
        }
        Ok(Self {
            repr: Repr::Mixed(density),
        })
    }

    pub fn dims(&self) -> &[usize] {
        match &self.repr {
            Repr::Pure { dims, .. } => dims,
            Repr::Mixed(rho) => rho.dims(),
        }
    }

    pub fn side(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.repr, Repr::Pure { .. })
    }

    pub fn amplitudes(&self) -> Option<&[C64]> {
        match &self.repr {
            Repr::Pure { amplitudes, .. } => Some(amplitudes),
            Repr::Mixed(_) => None,
        }
    }

    /// Density matrix; pure states are expanded into `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> ComplexMatrix {
        match &self.repr {
            Repr::Pure { dims, amplitudes } => {
                ComplexMatrix::outer(dims, amplitudes, amplitudes).expect("validated state")
            }
            Repr::Mixed(rho) => rho.clone(),
        }
    }

    /// Tensor product `self ⊗ other`; stays pure when both inputs are pure.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims().to_vec();
        dims.extend_from_slice(other.dims());
        match (&self.repr, &other.repr) {
            (Repr::Pure { amplitudes: u, .. }, Repr::Pure { amplitudes: v, .. }) => {
                let amplitudes = u
                    .iter()
                    .flat_map(|x| v.iter().map(move |y| x * y))
                    .collect();
                Self {
                    repr: Repr::Pure { dims, amplitudes },
                }
            }
            _ => Self {
                repr: Repr::Mixed(self.density().kron(&other.density())),
            },
        }
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Cholesky of `H + shift·I`; succeeds iff every eigenvalue of `H` exceeds
/// `-shift` (up to rounding).
fn shifted_cholesky_succeeds(h: &ComplexMatrix, shift: f64) -> bool {
    let n = h.side();
    let mut l = vec![ZERO; n * n];
    for j in 0..n {
        let mut d = h.get(j, j).re + shift;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return false;
        }
        let ljj = d.sqrt();
        l[j * n + j] = C64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = h.get(i, j);
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / ljj;
        }
    }
    true
}

/// `⟨A⟩`: `⟨ψ|A|ψ⟩` for pure states, `tr(ρA)` for mixed ones.
pub fn expectation(a: &ComplexMatrix, state: &QuantumState) -> Result<C64> {
    check_dims(state.dims(), a.dims())?;
    Ok(match &state.repr {
        Repr::Pure { amplitudes, .. } => inner(amplitudes, &a.apply(amplitudes)),
        Repr::Mixed(rho) => trace_of_product(rho, a),
    })
}

fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.side();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if !x.is_zero() {
                acc += x * b.get(j, i);
            }
        }
    }
    acc
}

/// `σ²_A = ⟨A²⟩ - ⟨A⟩²` with default tolerances.
pub fn variance(a: &ComplexMatrix, state: &QuantumState) -> Result<f64> {
    variance_with(a, state, &Tolerances::default())
}

pub fn variance_with(a: &ComplexMatrix, state: &QuantumState, tol: &Tolerances) -> Result<f64> {
    check_dims(state.dims(), a.dims())?;
    a.ensure_hermitian(tol.hermitian)?;
    let (mean, second) = match &state.repr {
        Repr::Pure { amplitudes, .. } => {
            let v = a.apply(amplitudes);
            (
                inner(amplitudes, &v).re,
                v.iter().map(|z| z.norm_sqr()).sum::<f64>(),
            )
        }
        Repr::Mixed(rho) => {
            let sq = a.matmul(a)?;
            (trace_of_product(rho, a).re, trace_of_product(rho, &sq).re)
        }
    };
    let var = second - mean * mean;
    if var < 0.0 {
        if var < -tol.variance_floor {
            return Err(Error::NegativeVariance(var));
        }
        return Ok(0.0);
    }
    Ok(var)
}

/// Convex combination `Σ pₙ ρₙ`; pure inputs become projectors.
pub fn mix(states: &[QuantumState], weights: &[f64]) -> Result<QuantumState> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidWeights(format!(
            "negative or non-finite weight {w}"
        )));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > Tolerances::default().state {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let dims = states[0].dims().to_vec();
    for s in &states[1..] {
        check_dims(&dims, s.dims())?;
    }
    let side = states[0].side();
    let mut data = vec![ZERO; side * side];
    for (s, &w) in states.iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        match &s.repr {
            Repr::Pure { amplitudes, .. } => {
                for (i, ui) in amplitudes.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    let wi = ui * w;
                    for (j, uj) in amplitudes.iter().enumerate() {
                        data[i * side + j] += wi * uj.conj();
                    }
                }
            }
            Repr::Mixed(rho) => {
                for (d, r) in data.iter_mut().zip(rho.entries()) {
                    *d += r * w;
                }
            }
        }
    }
    QuantumState::mixed(ComplexMatrix::new(dims, data)?)
}
