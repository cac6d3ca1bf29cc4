//! The two container contracts and the framework layer built on them.
//!
//! A whole-graph container implements [`GraphContainer`]: only
//! [`num_vertices`](GraphContainer::num_vertices) and
//! [`map_neighbors`](GraphContainer::map_neighbors) are required. Everything
//! else is optional and advertised through [`Capabilities`]; the framework
//! helpers in [`ops`] consult the capability mask and fall back to
//! map-derived implementations for anything missing.
//!
//! A per-vertex set implements [`NeighborSet`] and is lifted into a full
//! container by [`AdjacencyGraph`].

mod adapter;
pub mod derive;
mod mask;
pub mod ops;

pub use adapter::{AdjacencyGraph, MetadataTracker, NeighborSet, UpdateKind, VertexEntry};
pub use mask::{mask_capabilities, ApiConfig, Masked};

use crate::batch::{BatchForm, PreparedBatch};
use crate::error::{GraphError, Result};
use crate::model::{Edge, VertexId};

/// Which optional operations a container provides. The required pair
/// (`map_neighbors`, `num_vertices`) has no flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Capabilities {
    pub num_edges: bool,
    pub degree: bool,
    pub map_early_exit: bool,
    pub parallel_map: bool,
    pub parallel_map_early_exit: bool,
    pub batch_updates: bool,
}

impl Capabilities {
    pub const MIN: Capabilities = Capabilities {
        num_edges: false,
        degree: false,
        map_early_exit: false,
        parallel_map: false,
        parallel_map_early_exit: false,
        batch_updates: false,
    };

    pub const FULL: Capabilities = Capabilities {
        num_edges: true,
        degree: true,
        map_early_exit: true,
        parallel_map: true,
        parallel_map_early_exit: true,
        batch_updates: true,
    };

    pub fn intersect(self, other: Capabilities) -> Capabilities {
        Capabilities {
            num_edges: self.num_edges && other.num_edges,
            degree: self.degree && other.degree,
            map_early_exit: self.map_early_exit && other.map_early_exit,
            parallel_map: self.parallel_map && other.parallel_map,
            parallel_map_early_exit: self.parallel_map_early_exit && other.parallel_map_early_exit,
            batch_updates: self.batch_updates && other.batch_updates,
        }
    }

    /// True iff every flag set in `self` is also set in `other`.
    pub fn is_subset_of(self, other: Capabilities) -> bool {
        self.intersect(other) == self
    }

    pub fn names(self) -> Vec<&'static str> {
        let flags = [
            (self.num_edges, "num_edges"),
            (self.degree, "degree"),
            (self.map_early_exit, "map_early_exit"),
            (self.parallel_map, "parallel_map"),
            (self.parallel_map_early_exit, "parallel_map_early_exit"),
            (self.batch_updates, "batch_updates"),
        ];
        flags.into_iter().filter(|(on, _)| *on).map(|(_, name)| name).collect()
    }
}

/// A whole-graph container.
///
/// Optional read operations return `None` when unsupported; the framework
/// never calls one whose capability flag is off. Reads must be safe to run
/// concurrently. Updates take `&mut self` and therefore never overlap reads.
pub trait GraphContainer: Send + Sync {
    fn num_vertices(&self) -> usize;

    /// Calls `f` once per neighbor of `v`, in an unspecified order.
    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId));

    fn capabilities(&self) -> Capabilities;

    /// Short name used in reports and error messages.
    fn name(&self) -> &'static str;

    fn num_edges(&self) -> Option<usize> {
        None
    }

    fn degree(&self, _v: VertexId) -> Option<usize> {
        None
    }

    /// Calls `f` on neighbors of `v` until it returns true. Returns whether
    /// any call returned true.
    fn map_neighbors_early_exit(
        &self,
        _v: VertexId,
        _f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        None
    }

    fn parallel_map_neighbors(&self, _v: VertexId, _f: &(dyn Fn(VertexId) + Sync)) -> Option<()> {
        None
    }

    /// Like [`map_neighbors_early_exit`](Self::map_neighbors_early_exit) but
    /// in parallel; other workers may still run after one returns true.
    fn parallel_map_neighbors_early_exit(
        &self,
        _v: VertexId,
        _f: &(dyn Fn(VertexId) -> bool + Sync),
    ) -> Option<bool> {
        None
    }

    /// Heap footprint of the topology, if the container can report it.
    fn memory_bytes(&self) -> Option<usize> {
        None
    }

    /// The weakest batch form this container can consume.
    fn preferred_form(&self) -> BatchForm {
        BatchForm::GlobalSort
    }

    fn accepts_form(&self, form: BatchForm) -> bool {
        form.satisfies(self.preferred_form())
    }

    /// Inserts every arc of `batch`; returns how many were not already present.
    fn insert_sorted_batch(&mut self, _batch: &PreparedBatch) -> Result<usize> {
        Err(self.unsupported("insert_sorted_batch"))
    }

    /// Deletes every arc of `batch`; returns how many were present.
    fn delete_sorted_batch(&mut self, _batch: &PreparedBatch) -> Result<usize> {
        Err(self.unsupported("delete_sorted_batch"))
    }

    fn insert_edge(&mut self, _e: Edge) -> Result<bool> {
        Err(self.unsupported("insert"))
    }

    fn delete_edge(&mut self, _e: Edge) -> Result<bool> {
        Err(self.unsupported("delete"))
    }

    #[doc(hidden)]
    fn unsupported(&self, operation: &'static str) -> GraphError {
        GraphError::Unsupported {
            container: self.name(),
            operation,
        }
    }
}

impl<G: GraphContainer + ?Sized> GraphContainer for Box<G> {
    fn num_vertices(&self) -> usize {
        (**self).num_vertices()
    }
    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        (**self).map_neighbors(v, f)
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn name(&self) -> &'static str {
        (**self).name()
    }
    fn num_edges(&self) -> Option<usize> {
        (**self).num_edges()
    }
    fn degree(&self, v: VertexId) -> Option<usize> {
        (**self).degree(v)
    }
    fn map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        (**self).map_neighbors_early_exit(v, f)
    }
    fn parallel_map_neighbors(&self, v: VertexId, f: &(dyn Fn(VertexId) + Sync)) -> Option<()> {
        (**self).parallel_map_neighbors(v, f)
    }
    fn parallel_map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &(dyn Fn(VertexId) -> bool + Sync),
    ) -> Option<bool> {
        (**self).parallel_map_neighbors_early_exit(v, f)
    }
    fn memory_bytes(&self) -> Option<usize> {
        (**self).memory_bytes()
    }
    fn preferred_form(&self) -> BatchForm {
        (**self).preferred_form()
    }
    fn accepts_form(&self, form: BatchForm) -> bool {
        (**self).accepts_form(form)
    }
    fn insert_sorted_batch(&mut self, batch: &PreparedBatch) -> Result<usize> {
        (**self).insert_sorted_batch(batch)
    }
    fn delete_sorted_batch(&mut self, batch: &PreparedBatch) -> Result<usize> {
        (**self).delete_sorted_batch(batch)
    }
    fn insert_edge(&mut self, e: Edge) -> Result<bool> {
        (**self).insert_edge(e)
    }
    fn delete_edge(&mut self, e: Edge) -> Result<bool> {
        (**self).delete_edge(e)
    }
}
