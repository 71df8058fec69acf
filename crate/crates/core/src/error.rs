use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unsupported ring spec: {0}")]
    UnsupportedSpec(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("group closure exceeded limit of {limit} elements")]
    ClosureOverflow { limit: usize },
    #[error("enumeration exceeded limit of {limit}")]
    EnumerationOverflow { limit: u64 },
    #[error("monomial space of dimension {dim} exceeds limit {limit}")]
    DimensionOverflow { dim: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
