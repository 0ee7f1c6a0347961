use thiserror::Error;

/// Errors raised by parsing, enumeration and postulate checking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<Error> },
    #[error("capacity exceeded: {what} is {size}, limit {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("conjunction of an empty set is undefined")]
    EmptyConjunction,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
    #[error("postulate `{postulate}` cannot be checked against a {operator} operator")]
    OperatorMismatch { postulate: String, operator: &'static str },
}

impl Error {
    /// True for syntax errors, including ones wrapped with a line number.
    pub fn is_syntax(&self) -> bool {
        match self {
            Error::Syntax { .. } => true,
            Error::Line { source, .. } => source.is_syntax(),
            _ => false,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
