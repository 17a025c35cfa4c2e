use thiserror::Error;

/// Errors raised by braid computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation needs a braid of positive canonical length")]
    EmptyNormalForm,
    #[error("canonical length {len} is below the minimum of {min}")]
    TooShort { len: usize, min: usize },
    #[error("ceiling piece scheme leaves no middle piece for canonical length {0}")]
    SchemeDegenerate(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("decay fit undefined: {0}")]
    UndefinedFit(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, BraidError>;

pub(crate) fn invalid(msg: impl Into<String>) -> BraidError {
    BraidError::InvalidParameter(msg.into())
}
