//! Vertex identifiers, arcs and whole-graph statistics.

use crate::error::{GraphError, Result};

/// Vertices are dense integers `0..n`.
pub type VertexId = u32;

/// A directed arc. Undirected graphs store both `(u, v)` and `(v, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
}

impl Edge {
    pub const fn new(src: VertexId, dst: VertexId) -> Self {
        Edge { src, dst }
    }

    pub const fn reversed(self) -> Self {
        Edge {
            src: self.dst,
            dst: self.src,
        }
    }

    pub const fn is_self_loop(self) -> bool {
        self.src == self.dst
    }

    pub fn check(self, n: usize) -> Result<()> {
        if self.src as usize >= n {
            return Err(GraphError::out_of_range(self.src, n));
        }
        if self.dst as usize >= n {
            return Err(GraphError::out_of_range(self.dst, n));
        }
        Ok(())
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((src, dst): (VertexId, VertexId)) -> Self {
        Edge { src, dst }
    }
}

/// `m` counts directed arcs, so each undirected edge contributes two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
}

/// Raw updates as received: duplicates and self-loops are allowed until the
/// batch is prepared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeBatch {
    pub updates: Vec<Edge>,
}

impl EdgeBatch {
    pub fn new(updates: Vec<Edge>) -> Self {
        EdgeBatch { updates }
    }

    pub fn len(&self) -> usize {
        self.updates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.updates.is_empty()
    }

    /// Appends the reverse of every arc.
    pub fn symmetrized(mut self) -> Self {
        let reversed: Vec<Edge> = self.updates.iter().map(|e| e.reversed()).collect();
        self.updates.extend(reversed);
        self
    }
}

impl FromIterator<Edge> for EdgeBatch {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeBatch {
            updates: iter.into_iter().collect(),
        }
    }
}

/// Sorts, deduplicates and symmetrizes `edges`, dropping self-loops.
pub fn symmetrize(edges: impl IntoIterator<Item = Edge>) -> Vec<Edge> {
    let mut arcs: Vec<Edge> = edges
        .into_iter()
        .filter(|e| !e.is_self_loop())
        .flat_map(|e| [e, e.reversed()])
        .collect();
    crate::par::sort_unstable(&mut arcs);
    arcs.dedup();
    arcs
}

/// The four-vertex graph with a triangle `{0, 1, 2}` and a pendant vertex 3.
pub fn t4_arcs() -> Vec<Edge> {
    symmetrize([(0, 1), (1, 2), (0, 2), (2, 3)].map(Edge::from))
}
