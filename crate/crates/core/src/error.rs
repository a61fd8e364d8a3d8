use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("exact tree decomposition limited to {limit} vertices, got {n}")]
    ExactTooLarge { n: usize, limit: usize },
    #[error("graph has no rotation system")]
    MissingEmbedding,
    #[error("Euler check failed: n - N + f = {n} - {edges} + {faces} != 2")]
    EulerViolation { n: usize, edges: usize, faces: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("enumeration of 2^{log2_work:.1} terms exceeds the limit 2^{limit:.1}")]
    TooLarge { log2_work: f64, limit: f64 },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("bag table of {entries} entries exceeds the memory budget of {budget}")]
    WidthTooLarge { entries: u128, budget: u64 },
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a coherently oriented cycle")]
    NotACoherentCycle,
    #[error("coupling J = {0} is not ferromagnetic (exp(beta*J) <= 1), dual coupling is not real")]
    NonFerromagnetic(f64),
    #[error("invalid symmetry element: {0}")]
    InvalidSymmetry(String),
}
