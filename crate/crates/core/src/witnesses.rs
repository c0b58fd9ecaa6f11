//! Entanglement conditions evaluated on concrete states.
//!
//! Every condition is an inequality that holds for all separable states.
//! Reports normalize the direction so that `delta > 0` always signals a
//! violation: for conditions of the form `lhs ≥ rhs` we store
//! `delta = rhs - lhs`, for `lhs ≤ rhs` we store `delta = lhs - rhs`.
//!
//! Operators are given per factor. In the bipartite conditions `A`, `A'`
//! act on the first factor group and `B`, `B'` on the second; products such
//! as `AB` denote the tensor-lifted operator `A ⊗ B`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    commutator, expectation, kron_all, variance_with, ComplexMatrix, QuantumState, Tolerances, C64,
};
use crate::operators::rotated_spin;
use crate::states::schmidt_pair;

/// Evaluation record of one condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub delta: f64,
    #[serde(rename = "V")]
    pub v: Option<f64>,
    pub violated: bool,
    pub details: BTreeMap<String, f64>,
}

#[derive(Clone, Copy)]
enum Direction {
    /// valid form `lhs ≥ rhs`
    AtLeast,
    /// valid form `lhs ≤ rhs`
    AtMost,
}

/// Thresholds for violation flags and the guarded ratio `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessConfig {
    pub violation_tol: f64,
    /// `V` is omitted when its denominator falls below this.
    pub ratio_guard: f64,
    pub numeric: Tolerances,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            violation_tol: 1e-9,
            ratio_guard: 1e-12,
            numeric: Tolerances::default(),
        }
    }
}

/// Tensor-lifted products of a bipartite operator quadruple.
struct Bipartite<'a> {
    a: &'a ComplexMatrix,
    ap: &'a ComplexMatrix,
    b: &'a ComplexMatrix,
    bp: &'a ComplexMatrix,
    state: &'a QuantumState,
    tol: Tolerances,
}

impl<'a> Bipartite<'a> {
    fn new(
        a: &'a ComplexMatrix,
        ap: &'a ComplexMatrix,
        b: &'a ComplexMatrix,
        bp: &'a ComplexMatrix,
        state: &'a QuantumState,
        tol: Tolerances,
    ) -> Result<Self> {
        same_dims(a, ap)?;
        same_dims(b, bp)?;
        for op in [a, ap, b, bp] {
            op.ensure_hermitian(tol.hermitian)?;
        }
        let mut dims = a.dims().to_vec();
        dims.extend_from_slice(b.dims());
        if dims != state.dims() {
            return Err(Error::DimensionMismatch {
                expected: state.dims().to_vec(),
                found: dims,
            });
        }
        Ok(Self {
            a,
            ap,
            b,
            bp,
            state,
            tol,
        })
    }

    fn products(&self) -> [ComplexMatrix; 4] {
        [
            self.a.kron(self.b),
            self.a.kron(self.bp),
            self.ap.kron(self.b),
            self.ap.kron(self.bp),
        ]
    }

    fn mean(&self, op: &ComplexMatrix) -> Result<f64> {
        Ok(expectation(op, self.state)?.re)
    }

    fn var(&self, op: &ComplexMatrix) -> Result<f64> {
        variance_with(op, self.state, &self.tol)
    }

    /// `⟨[A,A'] ⊗ [B,B']⟩`
    fn commutator_product(&self) -> Result<C64> {
        let ca = commutator(self.a, self.ap)?;
        let cb = commutator(self.b, self.bp)?;
        expectation(&ca.kron(&cb), self.state)
    }
}

fn same_dims(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<()> {
    if x.dims() != y.dims() {
        return Err(Error::DimensionMismatch {
            expected: x.dims().to_vec(),
            found: y.dims().to_vec(),
        });
    }
    Ok(())
}

/// `⟨Yⁿ⟩`, using `‖Y^{n/2} ψ‖²` for pure states and even `n`.
fn moment(y: &ComplexMatrix, n: u32, state: &QuantumState) -> Result<f64> {
    match state.amplitudes() {
        Some(psi) if n.is_multiple_of(2) => {
            let mut v = psi.to_vec();
            for _ in 0..n / 2 {
                v = y.apply(&v);
            }
            Ok(v.iter().map(|z| z.norm_sqr()).sum())
        }
        _ => Ok(expectation(&y.pow(n), state)?.re),
    }
}

fn combine(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let mut acc = terms[0].1.scale(C64::new(terms[0].0, 0.0));
    for (w, m) in &terms[1..] {
        acc = acc.add(&m.scale(C64::new(*w, 0.0))).expect("same dims");
    }
    acc
}

impl WitnessConfig {
    fn report(
        &self,
        name: &str,
        lhs: f64,
        rhs: f64,
        direction: Direction,
        with_ratio: bool,
        details: BTreeMap<String, f64>,
    ) -> WitnessReport {
        let delta = match direction {
            Direction::AtLeast => rhs - lhs,
            Direction::AtMost => lhs - rhs,
        };
        let v = (with_ratio && lhs >= self.ratio_guard).then(|| rhs / lhs);
        WitnessReport {
            name: name.to_string(),
            lhs,
            rhs,
            delta,
            v,
            violated: delta > self.violation_tol,
            details,
        }
    }

    /// `σ_AB σ_A'B' ≥ ¼ |⟨[A,A'][B,B']⟩|`.
    pub fn variance_product(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
    ) -> Result<WitnessReport> {
        let q = Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let ab = a.kron(b);
        let apbp = ap.kron(bp);
        let (var_ab, var_apbp) = (q.var(&ab)?, q.var(&apbp)?);
        let comm = q.commutator_product()?;
        let mut details = BTreeMap::new();
        details.insert("<AB>".into(), q.mean(&ab)?);
        details.insert("<A'B'>".into(), q.mean(&apbp)?);
        details.insert("var(AB)".into(), var_ab);
        details.insert("var(A'B')".into(), var_apbp);
        insert_commutator(&mut details, comm);
        let lhs = var_ab.sqrt() * var_apbp.sqrt();
        let rhs = comm.norm() / 4.0;
        Ok(self.report(
            "variance_product",
            lhs,
            rhs,
            Direction::AtLeast,
            true,
            details,
        ))
    }

    /// `σ²_AB + σ²_A'B' ≥ ½ |⟨[A,A'][B,B']⟩|`.
    pub fn variance_sum(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
    ) -> Result<WitnessReport> {
        let q = Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let ab = a.kron(b);
        let apbp = ap.kron(bp);
        let (var_ab, var_apbp) = (q.var(&ab)?, q.var(&apbp)?);
        let comm = q.commutator_product()?;
        let mut details = BTreeMap::new();
        details.insert("<AB>".into(), q.mean(&ab)?);
        details.insert("<A'B'>".into(), q.mean(&apbp)?);
        details.insert("var(AB)".into(), var_ab);
        details.insert("var(A'B')".into(), var_apbp);
        insert_commutator(&mut details, comm);
        let rhs = comm.norm() / 2.0;
        Ok(self.report(
            "variance_sum",
            var_ab + var_apbp,
            rhs,
            Direction::AtLeast,
            false,
            details,
        ))
    }

    /// `σ_{A₁…Aₙ} σ_{A'₁…A'ₙ} ≥ 2⁻ⁿ |⟨[A₁,A'₁]…[Aₙ,A'ₙ]⟩|`; operator `k`
    /// acts on factor group `k`.
    pub fn multipartite(
        &self,
        unprimed: &[ComplexMatrix],
        primed: &[ComplexMatrix],
        state: &QuantumState,
    ) -> Result<WitnessReport> {
        let n = unprimed.len();
        if n < 2 || primed.len() != n {
            return Err(Error::InvalidParameter(format!(
                "need matching operator lists of length >= 2, got {} and {}",
                n,
                primed.len()
            )));
        }
        let mut dims = Vec::new();
        let mut comms = Vec::with_capacity(n);
        for (x, xp) in unprimed.iter().zip(primed) {
            same_dims(x, xp)?;
            x.ensure_hermitian(self.numeric.hermitian)?;
            xp.ensure_hermitian(self.numeric.hermitian)?;
            dims.extend_from_slice(x.dims());
            comms.push(commutator(x, xp)?);
        }
        if dims != state.dims() {
            return Err(Error::DimensionMismatch {
                expected: state.dims().to_vec(),
                found: dims,
            });
        }
        let all = kron_all(unprimed)?;
        let all_primed = kron_all(primed)?;
        let var_all = variance_with(&all, state, &self.numeric)?;
        let var_primed = variance_with(&all_primed, state, &self.numeric)?;
        let comm = expectation(&kron_all(&comms)?, state)?;
        let mut details = BTreeMap::new();
        details.insert("<A1..An>".into(), expectation(&all, state)?.re);
        details.insert("<A'1..A'n>".into(), expectation(&all_primed, state)?.re);
        details.insert("var(A1..An)".into(), var_all);
        details.insert("var(A'1..A'n)".into(), var_primed);
        insert_commutator(&mut details, comm);
        let lhs = var_all.sqrt() * var_primed.sqrt();
        let rhs = comm.norm() / 2f64.powi(n as i32);
        Ok(self.report("multipartite", lhs, rhs, Direction::AtLeast, true, details))
    }

    /// Ramanujan-identity condition for exponent `n ∈ {2, 4}`:
    /// `⟨AB+AB'+A'B⟩ⁿ + ⟨AB'+A'B+A'B'⟩ⁿ + ⟨AB-A'B'⟩ⁿ ≤
    ///  ⟨(AB'-A'B)ⁿ⟩ + ⟨(A'B+A'B'+AB)ⁿ⟩ + ⟨(A'B'+AB+AB')ⁿ⟩`.
    pub fn ramanujan(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
        n: u32,
    ) -> Result<WitnessReport> {
        if n != 2 && n != 4 {
            return Err(Error::InvalidParameter(format!(
                "Ramanujan condition holds only for n = 2 or 4, got {n}"
            )));
        }
        let q = Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let [ab, abp, apb, apbp] = q.products();
        let (e_ab, e_abp, e_apb, e_apbp) =
            (q.mean(&ab)?, q.mean(&abp)?, q.mean(&apb)?, q.mean(&apbp)?);
        let k = n as i32;
        let lhs = (e_ab + e_abp + e_apb).powi(k)
            + (e_abp + e_apb + e_apbp).powi(k)
            + (e_ab - e_apbp).powi(k);
        let y1 = combine(&[(1.0, &abp), (-1.0, &apb)]);
        let y2 = combine(&[(1.0, &apb), (1.0, &apbp), (1.0, &ab)]);
        let y3 = combine(&[(1.0, &apbp), (1.0, &ab), (1.0, &abp)]);
        let rhs = moment(&y1, n, state)? + moment(&y2, n, state)? + moment(&y3, n, state)?;
        let mut details = single_products(e_ab, e_abp, e_apb, e_apbp);
        details.insert("n".into(), n as f64);
        Ok(self.report(
            &format!("ramanujan_{n}"),
            lhs,
            rhs,
            Direction::AtMost,
            false,
            details,
        ))
    }

    /// `⟨AB - A'B'⟩² + ⟨AB' + A'B⟩² ≤ ⟨(A² + A'²)(B² + B'²)⟩`.
    pub fn uffink(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
    ) -> Result<WitnessReport> {
        let q = Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let [ab, abp, apb, apbp] = q.products();
        let (e_ab, e_abp, e_apb, e_apbp) =
            (q.mean(&ab)?, q.mean(&abp)?, q.mean(&apb)?, q.mean(&apbp)?);
        let lhs = (e_ab - e_apbp).powi(2) + (e_abp + e_apb).powi(2);
        let sa = a.matmul(a)?.add(&ap.matmul(ap)?)?;
        let sb = b.matmul(b)?.add(&bp.matmul(bp)?)?;
        let rhs = q.mean(&sa.kron(&sb))?;
        let details = single_products(e_ab, e_abp, e_apb, e_apbp);
        Ok(self.report("uffink", lhs, rhs, Direction::AtMost, false, details))
    }

    /// `σ²_AB + σ²_AB' + σ²_A'B + σ²_A'B' ≥ |⟨[A,A'][B,B']⟩|`.
    pub fn four_variance(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
    ) -> Result<WitnessReport> {
        let q = Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let [ab, abp, apb, apbp] = q.products();
        let mut details =
            single_products(q.mean(&ab)?, q.mean(&abp)?, q.mean(&apb)?, q.mean(&apbp)?);
        let mut lhs = 0.0;
        for (label, op) in [
            ("var(AB)", &ab),
            ("var(AB')", &abp),
            ("var(A'B)", &apb),
            ("var(A'B')", &apbp),
        ] {
            let v = q.var(op)?;
            details.insert(label.into(), v);
            lhs += v;
        }
        let comm = q.commutator_product()?;
        insert_commutator(&mut details, comm);
        Ok(self.report(
            "four_variance",
            lhs,
            comm.norm(),
            Direction::AtLeast,
            false,
            details,
        ))
    }

    /// Robertson bound `½ |⟨[AB, A'B']⟩|` for the same product observables;
    /// holds for every state, separable or not.
    pub fn heisenberg_floor(
        &self,
        a: &ComplexMatrix,
        ap: &ComplexMatrix,
        b: &ComplexMatrix,
        bp: &ComplexMatrix,
        state: &QuantumState,
    ) -> Result<f64> {
        Bipartite::new(a, ap, b, bp, state, self.numeric)?;
        let c = commutator(&a.kron(b), &ap.kron(bp))?;
        Ok(expectation(&c, state)?.norm() / 2.0)
    }

    /// Builds the rotated-spin quadruple at angles `θ = -arg α`,
    /// `η = arg β`, `θ' = θ + π/2`, `η' = η + π/2` and evaluates
    /// [`WitnessConfig::variance_product`] on `α|00⟩ + β|11⟩`.
    pub fn schmidt_optimal_witness(&self, alpha: C64, beta: C64) -> Result<SchmidtWitness> {
        let state = schmidt_pair(alpha, beta)?;
        let theta = -alpha.arg();
        let eta = beta.arg();
        let a = rotated_spin(theta);
        let a_prime = rotated_spin(theta + FRAC_PI_2);
        let b = rotated_spin(eta);
        let b_prime = rotated_spin(eta + FRAC_PI_2);
        let mut report = self.variance_product(&a, &a_prime, &b, &b_prime, &state)?;
        report.name = "schmidt_optimal".into();
        report.details.insert("theta".into(), theta);
        report.details.insert("eta".into(), eta);
        Ok(SchmidtWitness {
            a,
            a_prime,
            b,
            b_prime,
            report,
        })
    }
}

/// Operators chosen for a Schmidt state together with the resulting report.
#[derive(Debug, Clone)]
pub struct SchmidtWitness {
    pub a: ComplexMatrix,
    pub a_prime: ComplexMatrix,
    pub b: ComplexMatrix,
    pub b_prime: ComplexMatrix,
    pub report: WitnessReport,
}

fn single_products(ab: f64, abp: f64, apb: f64, apbp: f64) -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("<AB>".to_string(), ab),
        ("<AB'>".to_string(), abp),
        ("<A'B>".to_string(), apb),
        ("<A'B'>".to_string(), apbp),
    ])
}

fn insert_commutator(details: &mut BTreeMap<String, f64>, comm: C64) {
    details.insert("re<[A,A'][B,B']>".into(), comm.re);
    details.insert("im<[A,A'][B,B']>".into(), comm.im);
}

pub fn variance_product(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
) -> Result<WitnessReport> {
    WitnessConfig::default().variance_product(a, ap, b, bp, state)
}

pub fn variance_sum(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
) -> Result<WitnessReport> {
    WitnessConfig::default().variance_sum(a, ap, b, bp, state)
}

pub fn multipartite(
    unprimed: &[ComplexMatrix],
    primed: &[ComplexMatrix],
    state: &QuantumState,
) -> Result<WitnessReport> {
    WitnessConfig::default().multipartite(unprimed, primed, state)
}

pub fn ramanujan_witness(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
    n: u32,
) -> Result<WitnessReport> {
    WitnessConfig::default().ramanujan(a, ap, b, bp, state, n)
}

pub fn uffink(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
) -> Result<WitnessReport> {
    WitnessConfig::default().uffink(a, ap, b, bp, state)
}

pub fn four_variance(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
) -> Result<WitnessReport> {
    WitnessConfig::default().four_variance(a, ap, b, bp, state)
}

pub fn heisenberg_floor(
    a: &ComplexMatrix,
    ap: &ComplexMatrix,
    b: &ComplexMatrix,
    bp: &ComplexMatrix,
    state: &QuantumState,
) -> Result<f64> {
    WitnessConfig::default().heisenberg_floor(a, ap, b, bp, state)
}

pub fn schmidt_optimal_witness(alpha: C64, beta: C64) -> Result<SchmidtWitness> {
    WitnessConfig::default().schmidt_optimal_witness(alpha, beta)
}
