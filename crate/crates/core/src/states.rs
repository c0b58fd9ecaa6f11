//! Constructors for the state families used by the witness examples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{mix, QuantumState, Tolerances, C64, ZERO};

/// Tail mass allowed beyond a squeezed-vacuum cutoff.
pub const SQUEEZED_TAIL: f64 = 1e-12;

fn unit_norm(c: &[f64]) -> Result<()> {
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    if c.is_empty() || (norm - 1.0).abs() > Tolerances::default().state {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// Cutoff `2N + 4` used for coefficient vectors of length `N + 1`; leaves
/// room for `x²`/`p²` to act on the highest occupied level `2N`.
pub fn default_fock_cutoff(coefficients: usize) -> usize {
    2 * coefficients.saturating_sub(1) + 4
}

/// `Σ cₙ |2n, 2n⟩` on two modes truncated at `cutoff` levels each.
pub fn fock_pair_superposition(c: &[f64], cutoff: usize) -> Result<QuantumState> {
    unit_norm(c)?;
    let top = 2 * (c.len() - 1);
    if top + 1 > cutoff {
        return Err(Error::CutoffTooSmall {
            cutoff,
            reason: format!("level {top} must be representable"),
        });
    }
    let mut amplitudes = vec![ZERO; cutoff * cutoff];
    for (n, &cn) in c.iter().enumerate() {
        let k = 2 * n;
        amplitudes[k * cutoff + k] = C64::new(cn, 0.0);
    }
    QuantumState::pure(vec![cutoff, cutoff], amplitudes)
}

/// `c₀|00⟩ + c₁|22⟩` with `c₁ = √(1 - c₀²)`.
pub fn psi2(c0: f64, cutoff: usize) -> Result<QuantumState> {
    if !(0.0..=1.0).contains(&c0) {
        return Err(Error::InvalidParameter(format!(
            "c0 = {c0} must lie in [0, 1]"
        )));
    }
    fock_pair_superposition(&[c0, (1.0 - c0 * c0).sqrt()], cutoff)
}

/// `p|ψ⟩⟨ψ| + (1 - p)|00⟩⟨00|` with `|ψ⟩ = Σ cₙ|2n,2n⟩`.
pub fn vacuum_mixture(p: f64, c: &[f64], cutoff: usize) -> Result<QuantumState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "mixing weight p = {p} outside [0, 1]"
        )));
    }
    let psi = fock_pair_superposition(c, cutoff)?;
    let vacuum = QuantumState::basis(vec![cutoff, cutoff], 0)?;
    mix(&[psi, vacuum], &[p, 1.0 - p])
}

/// Smallest even cutoff `D ≥ 2` with `λ^(2D) <` [`SQUEEZED_TAIL`].
pub fn squeezed_cutoff(lambda: f64) -> Result<usize> {
    check_squeezing(lambda)?;
    let l2 = lambda * lambda;
    let mut d = 2;
    while l2.powi(d as i32) >= SQUEEZED_TAIL {
        d += 2;
    }
    Ok(d)
}

fn check_squeezing(lambda: f64) -> Result<()> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "|lambda| = {} must be < 1",
            lambda.abs()
        )));
    }
    Ok(())
}

/// Two-mode squeezed vacuum `√(1-λ²) Σ λⁿ |n,n⟩`, truncated at `cutoff`
/// and renormalized.
pub fn squeezed_vacuum(lambda: f64, cutoff: usize) -> Result<QuantumState> {
    check_squeezing(lambda)?;
    let tail = (lambda * lambda).powi(cutoff as i32);
    if cutoff == 0 || tail >= SQUEEZED_TAIL {
        return Err(Error::CutoffTooSmall {
            cutoff,
            reason: format!("truncated tail mass {tail:e} is not below {SQUEEZED_TAIL:e}"),
        });
    }
    let weights: Vec<f64> = (0..cutoff).map(|n| lambda.powi(n as i32)).collect();
    let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let mut amplitudes = vec![ZERO; cutoff * cutoff];
    for (n, w) in weights.iter().enumerate() {
        amplitudes[n * cutoff + n] = C64::new(w / norm, 0.0);
    }
    QuantumState::pure(vec![cutoff, cutoff], amplitudes)
}

/// GHZ-type state `(|0…0⟩ + |1…1⟩)/√2` on `parties` qubits.
pub fn bell(parties: usize) -> Result<QuantumState> {
    if parties < 2 {
        return Err(Error::InvalidParameter(format!(
            "a Bell state needs at least two parties, got {parties}"
        )));
    }
    let side = 1usize << parties;
    let mut amplitudes = vec![ZERO; side];
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = h;
    amplitudes[side - 1] = h;
    QuantumState::pure(vec![2; parties], amplitudes)
}

/// `α|00⟩ + β|11⟩`.
pub fn schmidt_pair(alpha: C64, beta: C64) -> Result<QuantumState> {
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > Tolerances::default().state {
        return Err(Error::NotNormalized(norm));
    }
    QuantumState::pure(vec![2, 2], vec![alpha, ZERO, ZERO, beta])
}

/// State families addressable from a [`StateSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FockPair,
    Psi2,
    VacuumMixture,
    Squeezed,
    Bell,
    Schmidt,
}

/// A scalar or a list; complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Scalar(f64),
    List(Vec<f64>),
}

/// Declarative description of a state, as read from JSON:
/// `{"family": "...", "params": {...}, "cutoff": D}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, Param>,
    #[serde(default)]
    pub cutoff: Option<usize>,
}

impl StateSpec {
    fn scalar(&self, key: &str) -> Result<f64> {
        match self.params.get(key) {
            Some(Param::Scalar(x)) => Ok(*x),
            Some(Param::List(_)) => {
                Err(Error::InvalidParameter(format!("`{key}` must be a number")))
            }
            None => Err(Error::InvalidParameter(format!(
                "missing parameter `{key}`"
            ))),
        }
    }

    fn list(&self, key: &str) -> Result<&[f64]> {
        match self.params.get(key) {
            Some(Param::List(v)) => Ok(v),
            Some(Param::Scalar(_)) => {
                Err(Error::InvalidParameter(format!("`{key}` must be a list")))
            }
            None => Err(Error::InvalidParameter(format!(
                "missing parameter `{key}`"
            ))),
        }
    }

    fn complex(&self, key: &str) -> Result<C64> {
        match self.params.get(key) {
            Some(Param::Scalar(x)) => Ok(C64::new(*x, 0.0)),
            Some(Param::List(v)) if v.len() == 2 => Ok(C64::new(v[0], v[1])),
            Some(Param::List(_)) => Err(Error::InvalidParameter(format!(
                "`{key}` must be a number or a [re, im] pair"
            ))),
            None => Err(Error::InvalidParameter(format!(
                "missing parameter `{key}`"
            ))),
        }
    }

    fn count(&self, key: &str) -> Result<usize> {
        let x = self.scalar(key)?;
        if x < 0.0 || x.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "`{key}` must be a non-negative integer"
            )));
        }
        Ok(x as usize)
    }

    /// Cutoff used when building the state: the explicit one, or the
    /// family's default rule. `None` for qubit families.
    pub fn resolved_cutoff(&self) -> Result<Option<usize>> {
        if let Some(d) = self.cutoff {
            return Ok(Some(d));
        }
        Ok(match self.family {
            Family::FockPair | Family::VacuumMixture => {
                Some(default_fock_cutoff(self.list("c")?.len()))
            }
            Family::Psi2 => Some(default_fock_cutoff(2)),
            Family::Squeezed => Some(squeezed_cutoff(self.scalar("lambda")?)?),
            Family::Bell | Family::Schmidt => None,
        })
    }

    pub fn build(&self) -> Result<QuantumState> {
        let cutoff = self.resolved_cutoff()?;
        let d = || cutoff.expect("Fock families always resolve a cutoff");
        match self.family {
            Family::FockPair => fock_pair_superposition(self.list("c")?, d()),
            Family::Psi2 => psi2(self.scalar("c0")?, d()),
            Family::VacuumMixture => vacuum_mixture(self.scalar("p")?, self.list("c")?, d()),
            Family::Squeezed => squeezed_vacuum(self.scalar("lambda")?, d()),
            Family::Bell => bell(self.count("n")?),
            Family::Schmidt => schmidt_pair(self.complex("alpha")?, self.complex("beta")?),
        }
    }
}
