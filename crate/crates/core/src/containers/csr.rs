use crate::api::{ops, Capabilities, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::{Edge, VertexId};
use crate::par;

/// Static compressed sparse row graph: vertex `v`'s neighbors are the sorted
/// segment `neighbors[offsets[v]..offsets[v + 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsrGraph {
    offsets: Vec<u64>,
    neighbors: Vec<VertexId>,
}

impl CsrGraph {
    pub fn empty(n: usize) -> Self {
        CsrGraph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds from arcs strictly increasing in `(src, dst)` with ids `< n`.
    pub fn from_sorted_arcs(n: usize, arcs: &[Edge]) -> Result<Self> {
        if n > VertexId::MAX as usize + 1 {
            return Err(GraphError::Format(format!("{n} vertices exceed the 32-bit id space")));
        }
        if let Some(i) = (1..arcs.len()).find(|&i| arcs[i - 1] >= arcs[i]) {
            return Err(GraphError::Format(format!(
                "arcs not strictly sorted at position {i}: {:?} then {:?}",
                arcs[i - 1],
                arcs[i]
            )));
        }
        if let Some(e) = arcs.iter().find(|e| e.check(n).is_err()) {
            return Err(GraphError::Format(format!("arc {e:?} out of range for {n} vertices")));
        }
        let mut offsets = vec![0u64; n + 1];
        for e in arcs {
            offsets[e.src as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Ok(CsrGraph {
            offsets,
            neighbors: arcs.iter().map(|e| e.dst).collect(),
        })
    }

    /// Validates raw arrays, e.g. when loaded from disk.
    pub fn from_parts(offsets: Vec<u64>, neighbors: Vec<VertexId>) -> Result<Self> {
        let Some(&last) = offsets.last() else {
            return Err(GraphError::Format("offsets must have n + 1 entries".into()));
        };
        let n = offsets.len() - 1;
        if offsets[0] != 0 || last != neighbors.len() as u64 {
            return Err(GraphError::Format(format!(
                "offsets must start at 0 and end at m = {}, got {}..{}",
                neighbors.len(),
                offsets[0],
                last
            )));
        }
        if let Some(v) = (0..n).find(|&v| offsets[v] > offsets[v + 1]) {
            return Err(GraphError::Format(format!("offsets decrease at vertex {v}")));
        }
        let g = CsrGraph { offsets, neighbors };
        for v in 0..n {
            let segment = g.neighbors_of(v as VertexId);
            if segment.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Format(format!("neighbors of {v} are not strictly increasing")));
            }
            if segment.last().is_some_and(|&u| u as usize >= n) {
                return Err(GraphError::Format(format!("neighbor of {v} out of range")));
            }
        }
        Ok(g)
    }

    /// Snapshots any container, sorting each neighbor list.
    pub fn from_container<G: GraphContainer + ?Sized>(g: &G) -> Self {
        Self::filtered(g, |_, _| true)
    }

    /// Snapshot of the arcs `(u, v)` of `g` with `keep(u, v)`.
    pub fn filtered<G, P>(g: &G, keep: P) -> Self
    where
        G: GraphContainer + ?Sized,
        P: Fn(VertexId, VertexId) -> bool + Sync + Send,
    {
        let n = g.num_vertices();
        let lists: Vec<Vec<VertexId>> = par::map_range(n, |v| {
            let v = v as VertexId;
            let mut out = Vec::with_capacity(ops::degree(g, v).min(1 << 16));
            g.map_neighbors(v, &mut |u| {
                if keep(v, u) {
                    out.push(u)
                }
            });
            out.sort_unstable();
            out
        });
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u64);
        let mut total = 0u64;
        for list in &lists {
            total += list.len() as u64;
            offsets.push(total);
        }
        CsrGraph {
            offsets,
            neighbors: lists.concat(),
        }
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    #[inline]
    pub fn neighbors_of(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn arcs(&self) -> Vec<Edge> {
        (0..self.num_vertices() as VertexId)
            .flat_map(|v| self.neighbors_of(v).iter().map(move |&u| Edge::new(v, u)))
            .collect()
    }
}

impl GraphContainer for CsrGraph {
    fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        self.neighbors_of(v).iter().for_each(|&u| f(u))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            batch_updates: false,
            ..Capabilities::FULL
        }
    }

    fn name(&self) -> &'static str {
        "csr"
    }

    fn num_edges(&self) -> Option<usize> {
        Some(self.neighbors.len())
    }

    fn degree(&self, v: VertexId) -> Option<usize> {
        let v = v as usize;
        Some((self.offsets[v + 1] - self.offsets[v]) as usize)
    }

    fn map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        Some(self.neighbors_of(v).iter().any(|&u| f(u)))
    }

    fn parallel_map_neighbors(&self, v: VertexId, f: &(dyn Fn(VertexId) + Sync)) -> Option<()> {
        par::slice_for_each(self.neighbors_of(v), |&u| f(u));
        Some(())
    }

    fn parallel_map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &(dyn Fn(VertexId) -> bool + Sync),
    ) -> Option<bool> {
        Some(par::slice_any(self.neighbors_of(v), |&u| f(u)))
    }

    fn memory_bytes(&self) -> Option<usize> {
        Some(self.offsets.len() * 8 + self.neighbors.len() * 4)
    }
}
