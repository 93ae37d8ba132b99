use thiserror::Error;

/// Errors surfaced by the exact-computation kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero polynomial")]
    DivisionByZero,

    /// A localization sum did not land in the polynomial ring. For genuine
    /// equivariant classes the pushforward to a point is integral, so this
    /// signals a non-class input or an implementation fault.
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    /// Hilbert-series deconvolution produced a negative rank, contradicting
    /// freeness of the fixed-point module.
    #[error("freeness violation: negative rank {rank} in degree {degree}")]
    FreenessViolation { degree: usize, rank: i64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
