use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A theorem hypothesis (such as `|F| >= d + 1`) does not hold.
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("{what} of size {size} exceeds the exact-search limit {limit}")]
    ScaleLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid construction spec: {0}")]
    Spec(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput(msg.into())
    }
}
