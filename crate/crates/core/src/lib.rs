//! Grundy double dominating sequences and maximum double neighborhood
//! sequences of simple graphs.
//!
//! The crate pairs an exact exponential [`oracle`] with structural solvers
//! for trees, threshold graphs, cographs and P4-tidy graphs ([`solvers`]),
//! built on the sequence algebra in [`sequence`] and the modular pieces
//! recognized by [`decomposition`].

pub mod bounds;
pub mod classgen;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod sequence;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, Graph, Vertex};
pub use sequence::{footprint, Certificate, VertexSeq};
