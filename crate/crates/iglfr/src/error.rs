//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by distribution evaluation, estimation, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter triple violated its domain constraints.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An evaluation point or probability level was outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity underflowed or overflowed past what f64 can represent.
    #[error("numerical overflow: {0}")]
    Overflow(String),

    /// The requested moment does not exist (heavy tail).
    #[error("moment does not exist: order {order} requires order < {bound}")]
    MomentDoesNotExist { order: f64, bound: f64 },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: achieved absolute error {achieved:.3e}")]
    QuadratureNonConvergence { achieved: f64 },

    /// A root bracket could not be established.
    #[error("root not bracketed on [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    /// An iterative fit stopped without satisfying the convergence criteria.
    #[error("fit did not converge after {iterations} iterations (gradient norm {gradient_norm:.3e})")]
    NonConvergence {
        iterations: usize,
        gradient_norm: f64,
    },

    /// The observed information at the optimum is not positive definite.
    #[error("observed information matrix is not positive definite")]
    SingularInformation,

    /// A sample violated the requirements of the requested operation.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Configuration of an estimator, chain, or scenario was inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A data file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Unknown builtin dataset name.
    #[error("unknown dataset: {0} (available: flood, covid)")]
    UnknownDataset(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
