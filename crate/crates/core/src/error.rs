use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("set #{index} is empty")]
    EmptySet { index: usize },

    #[error("sets #{first} and #{second} are equal")]
    DuplicateSet { first: usize, second: usize },

    #[error("element {element} is outside the universe 1..={universe}")]
    ElementOutOfRange { element: usize, universe: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("refusing to materialize {members} members (cap {cap})")]
    MaterializationTooLarge { members: u128, cap: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{what} exceeds the supported limit {limit}")]
    TooLarge { what: String, limit: usize },

    #[error("the reduction needs an odd number of vertices per part, got n = {0}")]
    EvenN(usize),

    #[error("the 3DM instance has no edges")]
    EmptyInstance,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
