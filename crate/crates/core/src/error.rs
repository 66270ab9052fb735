use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Text could not be parsed into a partition, rational or point.
    #[error("parse error: {0}")]
    Parse(String),
    /// A linear system that must be nonsingular turned out singular.
    #[error("singular system: {0}")]
    Singular(String),
    /// A moment sequence does not come from a finitely supported Thoma point.
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    /// A mass function handed to `level_distribution` was negative somewhere.
    #[error("input is not a non-negative harmonic function: {0}")]
    NotHarmonic(String),
    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
