use thiserror::Error;

/// Errors for construction, preconditions, and verification.
#[derive(Debug, Error)]
pub enum Error {
    /// A value failed to parse as a permutation or path.
    #[error("parse error: {0}")]
    Parse(String),

    /// A constructor invariant was violated.
    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },

    /// An argument is outside the operation's domain.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An operation precondition does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A cross-check between independent computation routes failed.
    #[error("verification failed: {0}")]
    Verify(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
