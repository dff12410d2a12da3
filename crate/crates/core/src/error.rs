use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Constraint violations found while *validating* data (embedding checks,
/// infeasible decodes) are reported as values, not through this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {requested} points requested but the grid holds {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("unsupported format: {0}")]
    Format(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("size guard: {what} ({actual} > {limit})")]
    SizeGuard {
        what: String,
        actual: usize,
        limit: usize,
    },

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("serialization: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
