use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the campaign harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point lies on the hypersurface (form value is zero)")]
    PointOnHypersurface,

    #[error("coordinate change required: leading coefficient of form {0} is zero")]
    CoordinateChangeRequired(usize),

    #[error("not in subgeneral position: {0}")]
    NotSubgeneral(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("factorization budget exceeded for {0}")]
    FactorizationBudget(String),

    #[error("prime factor {0} exceeds the supported place range (2^64)")]
    PlaceOutOfRange(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
