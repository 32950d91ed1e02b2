use thiserror::Error;

/// Errors raised by construction and verification routines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {kind}{rank}: {reason}")]
    InvalidSystem { kind: char, rank: usize, reason: String },

    #[error("malformed ring descriptor {0:?}")]
    MalformedRing(String),

    #[error("root {0:?} is not in the system")]
    UnknownRoot(Vec<i64>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("ideal is the whole ring")]
    ImproperIdeal,

    #[error("{0}")]
    Unsupported(String),

    #[error("dimension or ring mismatch: {0}")]
    Mismatch(String),

    #[error("no invertible intertwiner: {0}")]
    NoIntertwiner(String),

    #[error("normalization violation: {0}")]
    NotNormalizing(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
