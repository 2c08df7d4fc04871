use thiserror::Error;

/// Errors raised by the set-system algorithms and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate ground label `{0}`")]
    DuplicateGroundLabel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A hypothesis of a theorem-level routine does not hold for the given family.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("{what} is {actual}, above the exact limit {limit}{hint}")]
    LimitExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("generator gave up: {0}")]
    Generator(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
