use thiserror::Error;

use crate::scalar::QuadraticTermError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structure constant ({i},{j}) breaks parity closure")]
    ParityViolation { i: usize, j: usize },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("matrix does not lie in the span of the basis (residual {residual})")]
    NotInSpan { residual: String },

    #[error("generators do not span an ideal: {0}")]
    NotAnIdeal(String),

    #[error("Peirce components span {got} of {dim} dimensions")]
    DecompositionIncomplete { got: usize, dim: usize },

    #[error(transparent)]
    QuadraticTerm(#[from] QuadraticTermError),

    #[error("xi is incoherent at ({i},{j}): theta_i - theta_j = {lhs} but xi_ji - xi_ij = {rhs}")]
    IncoherentXi { i: usize, j: usize, lhs: String, rhs: String },

    #[error("complement system is inconsistent: {certificate}")]
    NoSolution { certificate: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
