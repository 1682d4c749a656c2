use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph needs at least {required} vertices, has {actual}")]
    TooFewVertices { required: usize, actual: usize },

    #[error("no 3-valent vertex: the 3-valent-corner hypothesis fails")]
    NoThreeValentVertex,

    #[error("hypothesis 2 + |E| <= 2|V| fails: |E| = {edges}, |V| = {vertices}")]
    TooManyEdges { edges: usize, vertices: usize },

    #[error("contracted edges contain a cycle (edge {0})")]
    ContractedCycle(usize),

    #[error("edge sets overlap: {0}")]
    OverlappingEdgeSets(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid prime power: {0}")]
    InvalidPrimePower(String),

    #[error("element out of range for GF({q})")]
    ElementOutOfRange { q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{what} budget exceeded: requires {required}, budget is {budget}")]
    Budget { what: &'static str, required: u128, budget: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("catalog: {0}")]
    Catalog(String),
}
