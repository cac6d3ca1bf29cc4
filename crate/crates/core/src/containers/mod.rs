//! Concrete graph containers and a registry to build them by name.

mod blocked;
pub mod compressed;
mod csr;
mod sets;

use std::fmt;
use std::str::FromStr;

pub use blocked::{BlockedSet, CHUNK_CAPACITY};
pub use compressed::{bytecode_decode, bytecode_encode, CompressedCsrGraph};
pub use csr::CsrGraph;
pub use sets::{BTreeNeighbors, HashNeighbors, SortedVecSet};

use crate::api::{AdjacencyGraph, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::Edge;

/// Inline neighbor slots per vertex in the `*-inline` containers.
pub const DEFAULT_INLINE: usize = 10;

pub type SortedVecGraph<const K: usize = 0> = AdjacencyGraph<SortedVecSet, K>;
pub type BTreeGraph<const K: usize = 0> = AdjacencyGraph<BTreeNeighbors, K>;
pub type HashGraph<const K: usize = 0> = AdjacencyGraph<HashNeighbors, K>;
pub type BlockedGraph<const K: usize = 0> = AdjacencyGraph<BlockedSet, K>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContainerKind {
    Csr,
    CompressedCsr,
    SortedVec,
    SortedVecInline,
    BTree,
    BTreeInline,
    Hash,
    HashInline,
    Blocked,
    BlockedInline,
}

impl ContainerKind {
    pub const ALL: [ContainerKind; 10] = [
        ContainerKind::Csr,
        ContainerKind::CompressedCsr,
        ContainerKind::SortedVec,
        ContainerKind::SortedVecInline,
        ContainerKind::BTree,
        ContainerKind::BTreeInline,
        ContainerKind::Hash,
        ContainerKind::HashInline,
        ContainerKind::Blocked,
        ContainerKind::BlockedInline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ContainerKind::Csr => "csr",
            ContainerKind::CompressedCsr => "compressed-csr",
            ContainerKind::SortedVec => "sorted-vec",
            ContainerKind::SortedVecInline => "sorted-vec-inline",
            ContainerKind::BTree => "btree",
            ContainerKind::BTreeInline => "btree-inline",
            ContainerKind::Hash => "hash",
            ContainerKind::HashInline => "hash-inline",
            ContainerKind::Blocked => "blocked",
            ContainerKind::BlockedInline => "blocked-inline",
        }
    }

    /// Whether the container supports edge updates.
    pub fn is_dynamic(self) -> bool {
        !matches!(self, ContainerKind::Csr | ContainerKind::CompressedCsr)
    }

    pub fn dynamic() -> impl Iterator<Item = ContainerKind> {
        Self::ALL.into_iter().filter(|k| k.is_dynamic())
    }

    /// Builds the container from arcs sorted by `(src, dst)` without
    /// duplicates.
    pub fn build(self, n: usize, arcs: &[Edge]) -> Result<Box<dyn GraphContainer>> {
        const K: usize = DEFAULT_INLINE;
        Ok(match self {
            ContainerKind::Csr => Box::new(CsrGraph::from_sorted_arcs(n, arcs)?),
            ContainerKind::CompressedCsr => Box::new(CompressedCsrGraph::from_csr(&CsrGraph::from_sorted_arcs(n, arcs)?)),
            ContainerKind::SortedVec => Box::new(SortedVecGraph::<0>::from_sorted_arcs(n, arcs)?),
            ContainerKind::SortedVecInline => Box::new(SortedVecGraph::<K>::from_sorted_arcs(n, arcs)?),
            ContainerKind::BTree => Box::new(BTreeGraph::<0>::from_sorted_arcs(n, arcs)?),
            ContainerKind::BTreeInline => Box::new(BTreeGraph::<K>::from_sorted_arcs(n, arcs)?),
            ContainerKind::Hash => Box::new(HashGraph::<0>::from_sorted_arcs(n, arcs)?),
            ContainerKind::HashInline => Box::new(HashGraph::<K>::from_sorted_arcs(n, arcs)?),
            ContainerKind::Blocked => Box::new(BlockedGraph::<0>::from_sorted_arcs(n, arcs)?),
            ContainerKind::BlockedInline => Box::new(BlockedGraph::<K>::from_sorted_arcs(n, arcs)?),
        })
    }
}

impl fmt::Display for ContainerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ContainerKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        ContainerKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = ContainerKind::ALL.iter().map(|k| k.name()).collect();
            GraphError::Config(format!("unknown container '{s}' (expected one of: {})", names.join(", ")))
        })
    }
}
