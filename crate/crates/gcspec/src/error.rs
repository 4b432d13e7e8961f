use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("expected a plane graph, found genus {genus}")]
    NotPlanar { genus: i64 },
    #[error("condition (F) fails: {0}")]
    ConditionF(String),
    #[error("invalid numbering: {0}")]
    InvalidNumbering(String),
    #[error("function is not invariant: {0}")]
    NotInvariant(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("{0} is not an edge of the parent graph")]
    NotAnEdge(usize),
    #[error("coefficients must sum to zero and not all vanish")]
    BadCoefficients,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
