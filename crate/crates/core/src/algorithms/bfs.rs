use std::sync::atomic::{AtomicU32, Ordering};

use crate::api::GraphContainer;
use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::{vertex_map, EdgeMap};

/// Distance and parent of a vertex the search never reached.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    pub distances: Vec<u32>,
    /// BFS tree; the source is its own parent. Which of several equally
    /// close parents wins depends on scheduling.
    pub parents: Vec<VertexId>,
}

pub fn bfs<G: GraphContainer + ?Sized>(g: &G, source: VertexId) -> Result<BfsResult> {
    let n = g.num_vertices();
    if source as usize >= n {
        return Err(GraphError::out_of_range(source, n));
    }
    let parents = atomic_vec(n, UNREACHED);
    let distances = atomic_vec(n, UNREACHED);
    parents[source as usize].store(source, Ordering::Relaxed);
    distances[source as usize].store(0, Ordering::Relaxed);

    let step = EdgeMap::new(
        |u, v| {
            parents[v as usize]
                .compare_exchange(UNREACHED, u, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        },
        |v| parents[v as usize].load(Ordering::Relaxed) == UNREACHED,
    );
    let mut frontier = VertexSubset::singleton(n, source)?;
    let mut round = 0;
    while !frontier.is_empty() {
        round += 1;
        frontier = step.run(g, &frontier);
        vertex_map(&frontier, |v| distances[v as usize].store(round, Ordering::Relaxed));
    }
    Ok(BfsResult {
        distances: into_plain(distances),
        parents: into_plain(parents),
    })
}

pub(crate) fn atomic_vec(n: usize, value: u32) -> Vec<AtomicU32> {
    par::map_range(n, |_| AtomicU32::new(value))
}

pub(crate) fn into_plain(v: Vec<AtomicU32>) -> Vec<u32> {
    v.into_iter().map(AtomicU32::into_inner).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::CsrGraph;
    use crate::model::{t4_arcs, Edge};

    #[test]
    fn t4_from_zero() {
        let g = CsrGraph::from_sorted_arcs(4, &t4_arcs()).unwrap();
        let r = bfs(&g, 0).unwrap();
        assert_eq!(r.distances, vec![0, 1, 1, 2]);
        assert_eq!(r.parents, vec![0, 0, 0, 2]);
        assert!(matches!(bfs(&g, 4), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn isolated_source() {
        let g = CsrGraph::from_sorted_arcs(3, &[Edge::new(0, 1), Edge::new(1, 0)]).unwrap();
        assert_eq!(bfs(&g, 2).unwrap().distances, vec![UNREACHED, UNREACHED, 0]);
    }
}
