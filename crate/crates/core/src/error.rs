use thiserror::Error;

/// Errors raised by the numerical and symbolic layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("invalid factor dimensions {0:?}: every factor must be positive")]
    InvalidDims(Vec<usize>),

    #[error("entry count {found} does not match side length {side} (dims {dims:?})")]
    EntryCount {
        dims: Vec<usize>,
        side: usize,
        found: usize,
    },

    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("operator is not Hermitian (max |A - A^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("density matrix has an eigenvalue below -{0:e}")]
    NotPositive(f64),

    #[error("variance {0:e} is negative beyond rounding tolerance")]
    NegativeVariance(f64),

    #[error("mixture weights are invalid: {0}")]
    InvalidWeights(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cutoff {cutoff} is too small: {reason}")]
    CutoffTooSmall { cutoff: usize, reason: String },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },

    #[error("unknown identity `{0}` (expected complex_norm or ramanujan)")]
    UnknownIdentity(String),

    #[error("symbolic and numeric checks disagree for identity {0}")]
    CrossCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
