//! Container-agnostic graph processing.
//!
//! Algorithms are written once against the [`GraphContainer`] trait and run
//! unchanged over any container that implements it: static CSR, byte-coded
//! CSR, or a dynamic adjacency structure lifted from a per-vertex
//! [`NeighborSet`]. Optional container capabilities can be masked off to
//! measure what each part of the API is worth.

pub mod algorithms;
pub mod api;
pub mod batch;
pub mod containers;
pub mod digest;
mod error;
pub mod generate;
pub mod io;
pub mod model;
pub mod par;
pub mod subset;
pub mod traversal;

pub use api::{Capabilities, GraphContainer, NeighborSet};
pub use error::{GraphError, Result};
pub use model::{Edge, EdgeBatch, GraphStats, VertexId};
pub use subset::VertexSubset;
