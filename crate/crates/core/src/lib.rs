//! Entanglement conditions derived from convexity arguments, evaluated on
//! finite and truncated Hilbert spaces.
//!
//! - [`hilbert`]: dense complex matrices over tensor-product spaces, states,
//!   expectations and variances.
//! - [`operators`]: ladder, quadrature, spin and parity-block observables.
//! - [`states`]: the state families used in the worked examples.
//! - [`witnesses`]: variance-product, multipartite, Ramanujan, Uffink-type
//!   and related conditions with uniform violation reports.
//! - [`polyid`]: exact polynomial arithmetic and the scalar identities the
//!   conditions rest on.
//! - [`optimize`]: the tridiagonal eigenproblem and parameter scans behind
//!   the best continuous-variable violations.

// `!(x > 0.0)` guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hilbert;
pub mod operators;
pub mod optimize;
pub mod polyid;
pub mod states;
pub mod witnesses;

pub use error::{Error, Result};
pub use hilbert::{ComplexMatrix, QuantumState, C64};
pub use witnesses::WitnessReport;
