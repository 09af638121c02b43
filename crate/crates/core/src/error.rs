use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("colouring is not good: agreement graph of columns ({0}, {1}) is not r-colourable")]
    NotGood(usize, usize),

    /// Agreement graph of column `column` against column `against` has no r-colouring.
    #[error("agreement graph of columns ({column}, {against}) is not r-colourable")]
    NotColorable { column: usize, against: usize },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("set-family hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
