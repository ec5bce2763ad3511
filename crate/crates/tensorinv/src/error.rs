//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the algebra kernel, the constant-term engines and the pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact polynomial division left a nonzero remainder.
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    /// A substitution turned a denominator factor into zero.
    #[error("substitution creates a pole: {0}")]
    PoleCreated(String),
    /// Some exponent is not a multiple of the deflation factor.
    #[error("not deflatable: {0}")]
    NotDeflatable(String),
    /// Two denominator groups in the elimination variable share a root.
    #[error("denominators are not coprime: {0}")]
    NonCoprimeDenominators(String),
    /// A denominator factor has a constant monomial equal to one.
    #[error("pole on the boundary: {0}")]
    PoleOnBoundary(String),
    /// An input violates the documented precondition of an operation.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// Two partial-fraction sides that must agree do not.
    #[error("asymmetry detected: {0}")]
    AsymmetryDetected(String),
    /// The requested method is not available for these parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// File system failure (census checkpoints, input files).
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
