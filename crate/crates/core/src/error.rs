use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),

    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(usize, usize),

    #[error("duplicate vertex {0} in vertex list")]
    DuplicateVertex(usize),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),

    #[error("vertex sets do not partition the vertex set")]
    NotPartition,

    #[error("digon between {0} and {1}: acyclic dicolouring is only defined for oriented graphs")]
    Digon(usize, usize),

    #[error("input is not a tournament")]
    NotTournament,

    #[error("input is not strongly connected")]
    NotStrong,

    #[error("input is not quasi-transitive: {0} -> {1} -> {2} with {0}, {2} non-adjacent")]
    NotQuasiTransitive(usize, usize, usize),

    #[error("input is not 2-degenerate")]
    NotTwoDegenerate,

    #[error("input is not light: arc {0} -> {1} has a directed triangle in N+({1}) & N-({0})")]
    NotLight(usize, usize),

    #[error("colouring covers {got} vertices but the graph has {expected}")]
    DomainMismatch { expected: usize, got: usize },

    #[error("colour {colour} of vertex {vertex} is outside 1..={k}")]
    ColourOutOfRange { vertex: usize, colour: u32, k: u32 },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("graph too large for exact search ({n} vertices, at most {max} supported)")]
    TooLarge { n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
