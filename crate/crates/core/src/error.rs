use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("graph on {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("operation requires a nonempty graph")]
    EmptyGraph,
    #[error("dimension {k} out of range [{lo}, {hi}]")]
    DimensionOutOfRange { k: i64, lo: i64, hi: i64 },
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("support graph of vertex {vertex} contains a cycle")]
    NotAForest { vertex: usize },
    #[error("word oracle: {0}")]
    Oracle(String),
    #[error("bound of {bound} exceeded")]
    BoundExceeded { bound: usize },
    #[error("ambient graphs differ")]
    AmbientMismatch,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("fixture {}: {reason}", path.display())]
    Fixture { path: PathBuf, reason: String },
    #[error("missing fixture files: {}", .0.join(", "))]
    MissingFixtures(Vec<String>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
