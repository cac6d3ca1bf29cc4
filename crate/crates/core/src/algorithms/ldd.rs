use std::sync::atomic::{AtomicU32, Ordering};

use rand_distr::{Distribution, Exp};

use super::bfs::{atomic_vec, into_plain, UNREACHED};
use crate::api::GraphContainer;
use crate::error::{GraphError, Result};
use crate::generate::stream_rng;
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::{vertex_map, EdgeMap};

/// Vertices per random stream when drawing shifts.
const SHIFT_CHUNK: usize = 4096;

/// Cluster assignment from exponential-shift ball growing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Center of each vertex's cluster.
    pub labels: Vec<VertexId>,
    /// Hop distance from the cluster center along the growth order.
    pub depth: Vec<u32>,
}

/// Cluster labels for `0 < beta <= 1`. Every vertex is labelled with the
/// center of its cluster.
pub fn ldd<G: GraphContainer + ?Sized>(g: &G, beta: f64, seed: u64) -> Result<Vec<VertexId>> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(GraphError::InvalidParameter(format!("beta = {beta} outside (0, 1]")));
    }
    Ok(decompose(g, beta, seed)?.labels)
}

/// Start round of each vertex: `floor(max_shift - shift)` for shifts drawn
/// from `Exp(beta)`.
pub fn start_rounds(n: usize, beta: f64, seed: u64) -> Result<Vec<u32>> {
    let exp = Exp::new(beta).map_err(|e| GraphError::InvalidParameter(format!("beta = {beta}: {e}")))?;
    let shifts: Vec<f64> = par::map_range(n.div_ceil(SHIFT_CHUNK), |chunk| {
        let mut rng = stream_rng(seed, chunk as u64);
        let len = SHIFT_CHUNK.min(n - chunk * SHIFT_CHUNK);
        (0..len).map(|_| exp.sample(&mut rng)).collect::<Vec<f64>>()
    })
    .concat();
    let max_shift = shifts.iter().copied().fold(0.0, f64::max);
    Ok(shifts.iter().map(|s| (max_shift - s).floor() as u32).collect())
}

/// Ball growing for any `beta > 0`. In each round the vertices whose start
/// round has come and that no ball has reached become centers; then every
/// ball grows one hop. A vertex reached by several balls in the same round
/// joins the one with the smallest center id.
pub fn decompose<G: GraphContainer + ?Sized>(g: &G, beta: f64, seed: u64) -> Result<Decomposition> {
    let n = g.num_vertices();
    let starts = start_rounds(n, beta, seed)?;
    let rounds = starts.iter().max().map_or(0, |&r| r as usize + 1);
    let mut starting = vec![Vec::new(); rounds];
    for (v, &r) in starts.iter().enumerate() {
        starting[r as usize].push(v as VertexId);
    }

    let labels: Vec<AtomicU32> = atomic_vec(n, UNREACHED);
    let joined: Vec<AtomicU32> = atomic_vec(n, UNREACHED);
    let grow = EdgeMap::new(
        |u, v| {
            let label = labels[u as usize].load(Ordering::Relaxed);
            labels[v as usize].fetch_min(label, Ordering::Relaxed);
            true
        },
        |v| joined[v as usize].load(Ordering::Relaxed) == UNREACHED,
    )
    .no_dense_early_exit();

    let mut frontier = VertexSubset::empty(n);
    let mut settled = 0usize;
    let mut round = 0u32;
    while settled < n {
        let mut ids = frontier.to_vec();
        if let Some(candidates) = starting.get(round as usize) {
            for &c in candidates {
                if joined[c as usize].load(Ordering::Relaxed) == UNREACHED {
                    labels[c as usize].store(c, Ordering::Relaxed);
                    joined[c as usize].store(round, Ordering::Relaxed);
                    ids.push(c);
                    settled += 1;
                }
            }
        }
        par::sort_unstable(&mut ids);
        frontier = VertexSubset::from_sorted_ids(n, ids);
        frontier = grow.run(g, &frontier);
        round += 1;
        vertex_map(&frontier, |v| joined[v as usize].store(round, Ordering::Relaxed));
        settled += frontier.len();
    }

    let labels = into_plain(labels);
    let joined = into_plain(joined);
    let depth = par::map_range(n, |v| joined[v] - joined[labels[v] as usize]);
    Ok(Decomposition { labels, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::CsrGraph;
    use crate::model::{symmetrize, t4_arcs, Edge};

    #[test]
    fn t4_partition() {
        let g = CsrGraph::from_sorted_arcs(4, &t4_arcs()).unwrap();
        for seed in 0..20 {
            let d = decompose(&g, 1.0, seed).unwrap();
            for v in 0..4 {
                let c = d.labels[v] as usize;
                assert_eq!(d.labels[c] as usize, c);
                assert_eq!(d.depth[c], 0);
            }
        }
        assert!(ldd(&g, 0.0, 1).is_err());
        assert!(ldd(&g, 1.5, 1).is_err());
    }

    #[test]
    fn edgeless_graph_is_all_singletons() {
        let g = CsrGraph::empty(5);
        assert_eq!(ldd(&g, 0.5, 3).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn path_clusters_are_intervals() {
        let arcs = symmetrize((0..99).map(|v| Edge::new(v, v + 1)));
        let g = CsrGraph::from_sorted_arcs(100, &arcs).unwrap();
        let labels = ldd(&g, 0.2, 11).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut prev = None;
        for &l in &labels {
            if prev != Some(l) {
                assert!(seen.insert(l), "cluster {l} is split");
                prev = Some(l);
            }
        }
    }

    #[test]
    fn shifts_are_seeded() {
        assert_eq!(start_rounds(10_000, 0.3, 7).unwrap(), start_rounds(10_000, 0.3, 7).unwrap());
        assert_ne!(start_rounds(10_000, 0.3, 7).unwrap(), start_rounds(10_000, 0.3, 8).unwrap());
        assert!(start_rounds(100, 0.3, 7).unwrap().contains(&0));
    }
}
