//! Crate-wide error type and result alias.

use thiserror::Error;

/// Errors produced by matrix construction, spectral computations, mean
/// evaluation, and input parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NonHermitian { asymmetry: f64, tol: f64 },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not positive definite: minimum eigenvalue {min_eigenvalue:.6e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {offdiag:.3e})")]
    NumericalFailure { sweeps: usize, offdiag: f64 },

    #[error("scalar function is not finite at eigenvalue {eigenvalue}: {detail}")]
    DomainError { eigenvalue: f64, detail: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("mean is linear (f''(1) = 0): {0}")]
    LinearMean(String),

    #[error("parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 input error, 3 precondition
    /// violation, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonHermitian { .. }
            | Error::DimensionMismatch { .. }
            | Error::ParseError { .. }
            | Error::InvalidMeasure(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::NotPositiveDefinite { .. }
            | Error::PreconditionViolated(_)
            | Error::LinearMean(_) => 3,
            Error::NumericalFailure { .. } | Error::DomainError { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
