//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by state validation, linear algebra and protocol routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e} exceeds {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },

    #[error("vector is not normalized (|<v|v>| = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("non-finite entry at index {0}")]
    NonFiniteEntry(usize),

    #[error("function undefined at eigenvalue {eigenvalue}")]
    DomainError { eigenvalue: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed state file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
