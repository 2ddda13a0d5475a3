use thiserror::Error;

/// Errors raised by network construction, association and the load/region math.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MgError {
    #[error("invalid delay budget D={d}: {reason}")]
    InvalidD { d: i64, reason: String },

    #[error("scheme {scheme} is not defined for the {model} model")]
    Unsupported { model: String, scheme: String },

    #[error("association does not match network: {0}")]
    Mismatch(String),

    #[error("invalid size parameter: {0}")]
    InvalidSize(String),

    #[error("negative cooperation prelog: {0}")]
    NegativePrelog(String),

    #[error("cooperation required on a network without {side} links")]
    NoLinks { side: &'static str },

    #[error("association has not been validated: {0}")]
    Unvalidated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MgError>;
