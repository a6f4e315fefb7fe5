//! apexis-core: a graph-topology engine for small graphs.
//!
//! The engine decides planarity with certificates, recognizes l-apex graphs
//! (planar after deleting at most l vertices), generates isomorphism classes
//! exhaustively, walks triangle-Y families, and certifies knotlessness of
//! cycles in spatial graph diagrams. Everything is exact and deterministic;
//! graphs are capped at 32 vertices so vertex sets are machine words.

pub mod apex;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod minor;
pub mod multigraph;
pub mod planarity;
pub mod reduce;
pub mod report;
pub mod spatial;

pub use error::GraphError;
pub use graph::{Graph, VertexSet};
