use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value or argument lies outside the domain an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    /// Shapes, identifiers or quantales of the inputs do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("resource cap exceeded: {what} exceeds the cap of {cap}")]
    Resource { what: String, cap: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error("validation failed with {} violation(s)", .0.len())]
    Validation(ValidationReport),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
