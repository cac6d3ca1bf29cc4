use std::sync::atomic::{AtomicU32, Ordering};

use super::bfs::{atomic_vec, into_plain};
use crate::api::{ops, GraphContainer};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::{vertex_map, EdgeMap};

pub const UNCOLORED: u32 = u32::MAX;

/// Greedy coloring in largest-log-degree-first order, run in parallel
/// rounds: a vertex is colored once all neighbors ahead of it in the order
/// are, taking the smallest color none of them uses.
pub fn coloring<G: GraphContainer + ?Sized>(g: &G) -> Vec<u32> {
    let n = g.num_vertices();
    let rank: Vec<u32> = par::map_range(n, |v| usize::BITS - ops::degree(g, v as VertexId).leading_zeros());
    let ahead = |u: VertexId, v: VertexId| {
        let (ru, rv) = (rank[u as usize], rank[v as usize]);
        ru > rv || (ru == rv && u < v)
    };
    let waiting: Vec<AtomicU32> = par::map_range(n, |v| {
        let v = v as VertexId;
        let mut count = 0;
        g.map_neighbors(v, &mut |u| count += ahead(u, v) as u32);
        AtomicU32::new(count)
    });
    let colors = atomic_vec(n, UNCOLORED);
    let release = EdgeMap::new(
        |u, v| ahead(u, v) && waiting[v as usize].fetch_sub(1, Ordering::Relaxed) == 1,
        |v| colors[v as usize].load(Ordering::Relaxed) == UNCOLORED,
    )
    .no_dense_early_exit();

    let roots = par::filter_range(n, |v| waiting[v].load(Ordering::Relaxed) == 0);
    let mut frontier = VertexSubset::from_sorted_ids(n, roots);
    while !frontier.is_empty() {
        vertex_map(&frontier, |v| {
            let mut used = Vec::new();
            g.map_neighbors(v, &mut |u| {
                let c = colors[u as usize].load(Ordering::Relaxed) as usize;
                if c != UNCOLORED as usize {
                    if c >= used.len() {
                        used.resize(c + 1, false);
                    }
                    used[c] = true;
                }
            });
            let color = used.iter().position(|&taken| !taken).unwrap_or(used.len());
            colors[v as usize].store(color as u32, Ordering::Relaxed);
        });
        frontier = release.run(g, &frontier);
    }
    into_plain(colors)
}
