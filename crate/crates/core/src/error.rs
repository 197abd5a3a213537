use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent parameters: bad primes, wrong lengths,
    /// elements outside their field, mismatched field specs.
    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial {poly} is not primitive over GF({order})")]
    NotPrimitive { poly: String, order: u64 },

    /// A desk-scale bound was exceeded. `bound` names the limit so the
    /// caller can report it.
    #[error("{what} exceeds the configured bound ({bound})")]
    TooLarge { what: String, bound: String },

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn spec_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Spec(msg.into()))
}
