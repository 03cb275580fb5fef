use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("circulant offset {offset} outside 1..={} for order {order}", order / 2)]
    OffsetOutOfRange { offset: usize, order: usize },
    #[error("degree {degree} must be below the order {order}")]
    DegreeTooLarge { degree: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed size header")]
    MalformedHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("expected {expected} body bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after the adjacency body")]
    TrailingGarbage(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{family} requires n >= {min}, got {n}")]
    TooSmall { family: &'static str, min: usize, n: usize },
    #[error("edge list does not describe a tree ({0})")]
    NotATree(String),
    #[error("no skeleton decomposition for {0}; use the generic search")]
    NoSkeleton(String),
    #[error("cannot parse family spec {0:?}")]
    BadSpec(String),
    #[error("reading {path}: {message}")]
    Io { path: String, message: String },
}

/// A formula was asked for a point outside the range where it is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct DomainError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tree on {tree} vertices is out of reach for p = {p} (limit p + 3)")]
    TooLarge { tree: usize, p: usize },
    #[error("search budget exhausted at p = {p}; best lower bound {lower_bound}")]
    BudgetExhausted { p: usize, lower_bound: u64 },
    #[error(transparent)]
    Tree(#[from] TreeError),
}
