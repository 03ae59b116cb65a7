use thiserror::Error;

use crate::vertex_set::MAX_VERTICES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {vertex} outside [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("ghost vertex {0}: it lies in no facet")]
    GhostVertex(usize),
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("subgroup rank {rank} exceeds enumeration cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("vertex {0} is not in the support of the group")]
    VertexNotInSupport(usize),
    #[error("the trivial group has no invariants to bound")]
    TrivialGroup,
    #[error("({sigma}, {tau}) is not an elementary collapsing pair")]
    NotAFreePair { sigma: String, tau: String },
    #[error("cell count {count} exceeds cap {cap}")]
    TooManyCells { count: u128, cap: u64 },
    #[error("exhaustive mode supports at most {max} vertices, got {requested}")]
    ExhaustiveTooLarge { requested: usize, max: usize },
    #[error("malformed input at {location}: {message}")]
    MalformedInput { location: String, message: String },
    #[error("{location}: {source}")]
    At {
        location: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, location: impl Into<String>) -> Error {
        Error::At {
            location: location.into(),
            source: Box::new(self),
        }
    }

    /// Strips location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }

    /// Process exit code: 2 for bad input, 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::RankTooLarge { .. }
            | Error::TooManyCells { .. }
            | Error::ExhaustiveTooLarge { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
