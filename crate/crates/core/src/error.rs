use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("vertex {0} appears more than once in the sequence")]
    DuplicateVertex(Vertex),

    #[error("vertex {0} is not in the sequence")]
    NotInSequence(Vertex),

    #[error("sequence is not a double neighborhood sequence (step {step} has an empty footprint)")]
    NotDns { step: usize },

    #[error("vertex {0} does not newly dominate anything in the sequence")]
    NotInFirstLevel(Vertex),

    #[error("vertex {u} must come strictly before vertex {v}")]
    OrderViolated { u: Vertex, v: Vertex },

    #[error("sequences overlap in vertex {0}")]
    Overlap(Vertex),

    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("graph has an isolated vertex ({0})")]
    IsolatedVertex(Vertex),

    #[error("vertex {0} is not isolated")]
    NotIsolated(Vertex),

    #[error("vertex {0} is not pendant")]
    NotPendant(Vertex),

    #[error("vertex {0} is not universal")]
    NotUniversal(Vertex),

    #[error("vertices {u} and {v} are not {kind} twins")]
    NotTwins {
        u: Vertex,
        v: Vertex,
        kind: &'static str,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is too small: {0}")]
    TooSmall(&'static str),

    #[error("graph is not a tree")]
    NotTree,

    #[error("invalid spider partition: {0}")]
    InvalidPartition(String),

    #[error("parts are not joined in the given graph ({u} and {v} are not adjacent)")]
    InconsistentJoin { u: Vertex, v: Vertex },

    #[error("unsupported graph: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
