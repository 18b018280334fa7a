use thiserror::Error;

use crate::complex::VertexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::complex::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("operation requires a nonempty vertex set")]
    EmptySet,

    #[error("vertex {vertex} is not in {set}")]
    NotInSet { vertex: usize, set: VertexSet },

    #[error("vertices {from} and {to} lie in different components of {set}")]
    Disconnected {
        from: usize,
        to: usize,
        set: VertexSet,
    },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("reduced homology is only computed in dimensions 0 and 1, got {0}")]
    UnsupportedDimension(usize),

    #[error("invariant factor does not fit in 64 bits")]
    Overflow,

    #[error("{0}")]
    Unsupported(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
