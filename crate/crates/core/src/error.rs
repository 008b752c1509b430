use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex count {0} outside supported range 1..=65536")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertices must be distinct")]
    RepeatedVertex,
    #[error("{u}{w} is not an edge")]
    NotAnEdge { u: usize, w: usize },
    #[error("({u}, {v}, {w}) is not a cherry: need u,w adjacent to v and uw a non-edge")]
    NotACherry { u: usize, v: usize, w: usize },
    #[error("cycle length {k} unsupported here (need {min} <= k <= {max})")]
    CycleLength { k: usize, min: usize, max: usize },
    #[error("vertex set of size {0} is too small to hold a cycle")]
    SetTooSmall(usize),
    #[error("count accumulator overflow")]
    CountOverflow,
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("part sizes: {0}")]
    PartSizes(String),
    #[error("blow-up depth must be at least 1")]
    Depth,
    #[error("bound precondition violated: {0}")]
    BoundPrecondition(String),
    #[error("density sequence has a gap at n = {0}")]
    SequenceGap(usize),
    #[error("n = {n} exceeds the exhaustive search ceiling {ceiling}; pass an explicit override")]
    SearchCeiling { n: usize, ceiling: usize },
    #[error("optimisation parameter out of range: {0}")]
    OptParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
