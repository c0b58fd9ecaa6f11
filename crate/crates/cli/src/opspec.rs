//! Operator specifications for the generic `witness` subcommand:
//! `{"factors": [["x", "p"], ["p", "x"]]}` lists, per tensor factor, the
//! unprimed and primed operator names.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use entwit::hilbert::ComplexMatrix;
use entwit::operators::{block_spin, quadratures, spin_ops};

pub const OPERATOR_NAMES: [&str; 7] = ["sx", "sy", "sz", "x", "p", "blockx", "blocky"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpSpec {
    pub factors: Vec<[String; 2]>,
}

/// Builtin operator `name` on a factor of dimension `dim`.
pub fn builtin(name: &str, dim: usize) -> Result<ComplexMatrix> {
    let spin = |m: ComplexMatrix| -> Result<ComplexMatrix> {
        if dim != 2 {
            bail!("operator `{name}` acts on a qubit, but the factor has dimension {dim}");
        }
        Ok(m)
    };
    Ok(match name {
        "sx" => spin(spin_ops().x)?,
        "sy" => spin(spin_ops().y)?,
        "sz" => spin(spin_ops().z)?,
        "x" => quadratures(dim)?.x,
        "p" => quadratures(dim)?.p,
        "blockx" => block_spin(dim)?.x,
        "blocky" => block_spin(dim)?.y,
        other => bail!(
            "unknown operator `{other}` (expected one of {})",
            OPERATOR_NAMES.join(", ")
        ),
    })
}

impl OpSpec {
    /// Unprimed and primed operator lists matched against the state's factor
    /// dimensions.
    pub fn resolve(&self, dims: &[usize]) -> Result<(Vec<ComplexMatrix>, Vec<ComplexMatrix>)> {
        if self.factors.len() != dims.len() {
            bail!(
                "operator spec names {} factors but the state has {}",
                self.factors.len(),
                dims.len()
            );
        }
        let mut unprimed = Vec::new();
        let mut primed = Vec::new();
        for (i, ([u, p], &d)) in self.factors.iter().zip(dims).enumerate() {
            unprimed.push(builtin(u, d).with_context(|| format!("factor {i}"))?);
            primed.push(builtin(p, d).with_context(|| format!("factor {i}"))?);
        }
        Ok((unprimed, primed))
    }
}
