use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("search budget of {limit} nodes exceeded after {expanded} expansions")]
    BudgetExceeded { limit: u64, expanded: u64 },
    #[error("graph has {n} vertices; this solver supports at most {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("input is not a core: vertex {0} has degree 1")]
    NotACore(usize),
    #[error("invalid list assignment: {0}")]
    InvalidLists(String),

    #[error("malformed formula: {0}")]
    Formula(String),
    #[error("truth assignment does not satisfy clause {0}")]
    Unsatisfied(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A result failed its own post-condition check. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
