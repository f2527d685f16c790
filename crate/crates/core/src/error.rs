use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by all modules.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// failing routine was instantiated with.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("series did not meet its tail bound within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("QR iteration failed to converge after {iterations} sweeps ({} eigenvalues found)", partial.len())]
    NoConvergence { iterations: usize, partial: Vec<Complex64> },

    #[error("matrix is numerically defective (eigenvector condition {condition:.3e})")]
    DefectiveMatrix { condition: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("state norm {norm:.3e} exceeded the blow-up ceiling at t = {time}")]
    BlowUp { time: f64, norm: f64 },

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("predicate has constant sign on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
