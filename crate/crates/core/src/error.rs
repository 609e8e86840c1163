use std::fmt;

use crate::graph::Arc;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a graph admits no partition of its arcs into directed triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotTriangulable {
    NoDirectedTriangles,
    ArcCountNotDivisibleByThree { arcs: usize },
    ArcInNoTriangle { arc: Arc },
    SearchExhausted { expansions: u64 },
}

impl fmt::Display for NotTriangulable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotTriangulable::NoDirectedTriangles => write!(f, "no directed triangles"),
            NotTriangulable::ArcCountNotDivisibleByThree { arcs } => {
                write!(f, "arc count {arcs} is not divisible by 3")
            }
            NotTriangulable::ArcInNoTriangle { arc } => {
                write!(f, "arc {arc} lies in no directed triangle")
            }
            NotTriangulable::SearchExhausted { expansions } => {
                write!(f, "search exhausted after {expansions} expansions")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: expected {expected} vertex indices, found {found}")]
    MalformedLine {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("{family} requires n >= {min}, got {n}")]
    GeneratorSize {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown arc {0}")]
    UnknownArc(Arc),
    #[error("not triangulable: {0}")]
    NotTriangulable(NotTriangulable),
    #[error("search budget of {limit} node expansions exceeded")]
    SearchBudgetExceeded { limit: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dense dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
