use thiserror::Error;

/// Errors produced by graph construction, deciders, searches and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {n} exceeds the supported maximum of {max} vertices")]
    TooManyVertices { n: usize, max: usize },

    #[error("size parameter for {kind} must be at least {min}, got {got}")]
    SizeTooSmall {
        kind: &'static str,
        min: usize,
        got: usize,
    },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0} is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("the empty graph has no minimum degree")]
    EmptyGraph,

    #[error("expected a connected graph")]
    Disconnected,

    #[error("canonical form supports at most {cap} vertices, got {n}")]
    CanonicalCapExceeded { n: usize, cap: usize },

    #[error("subset enumeration supports at most {cap} vertices, got {n}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("factor search supports at most {cap} vertices, got {n}")]
    SearchCapExceeded { n: usize, cap: usize },

    #[error("built-in graph enumeration supports at most {cap} vertices, got {n}")]
    GraphEnumerationCapExceeded { n: usize, cap: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
