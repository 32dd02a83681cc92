use thiserror::Error;

/// Errors raised by the library. Vertex and edge ids in messages are 1-based,
/// matching the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("unknown vertex {}", .0 + 1)]
    UnknownVertex(usize),
    #[error("unknown edge {}", .0 + 1)]
    UnknownEdge(usize),
    #[error("graph is not connected")]
    NotConnected,
    #[error("exact negativeness unavailable: {n} vertices exceeds the budget of {max}")]
    ExactUnavailable { n: usize, max: usize },
    #[error("not a cycle: {0}")]
    NotCycle(String),
    #[error("invalid barbell: {0}")]
    InvalidBarbell(String),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("vertex {} has odd degree in the symmetric difference", .0 + 1)]
    OddDegree(usize),
    #[error("fewer than {k} disjoint paths exist between the vertex sets")]
    NoDisjointPaths { k: usize },
    #[error("not a cycle-tree: {0}")]
    NotCycleTree(String),
    #[error("cycle-tree has an odd number ({0}) of negative cycles")]
    OddNegativeCycles(usize),
    #[error("not flow-admissible: negativeness is 1, so no circuit cover exists")]
    NotFlowAdmissible,
    #[error("no circuit cover exists: edge {} lies on no circuit", .0 + 1)]
    NoCircuitCover(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
