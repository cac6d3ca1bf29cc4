use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};

use super::bfs::UNREACHED;
use crate::api::{ops, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::EdgeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseSubgraph {
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Undirected edges per vertex of the induced subgraph.
    pub density: f64,
}

/// Approximate densest subgraph by peeling. Each round removes every vertex
/// whose remaining degree is below `(1 + epsilon)` times the average
/// remaining degree; the densest set seen (earliest on ties) is returned.
pub fn ads<G: GraphContainer + ?Sized>(g: &G, epsilon: f64) -> Result<DenseSubgraph> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(GraphError::InvalidParameter(format!("epsilon = {epsilon} must be positive")));
    }
    let n = g.num_vertices();
    let degree: Vec<AtomicU32> = par::map_range(n, |v| AtomicU32::new(ops::degree(g, v as VertexId) as u32));
    let alive: Vec<AtomicBool> = par::map_range(n, |_| AtomicBool::new(true));
    let mut removed_at = vec![UNREACHED; n];
    let peel = EdgeMap::new(
        |_, v| {
            let _ = degree[v as usize].fetch_update(Ordering::Relaxed, Ordering::Relaxed, |d| d.checked_sub(1));
            false
        },
        |v| alive[v as usize].load(Ordering::Relaxed),
    )
    .no_dense_early_exit();

    let mut remaining: Vec<VertexId> = (0..n as VertexId).collect();
    let mut best: Option<(f64, u32)> = None;
    let mut round = 0u32;
    while !remaining.is_empty() {
        let twice_edges = par::sum_range(remaining.len(), |i| {
            degree[remaining[i] as usize].load(Ordering::Relaxed) as u64
        });
        if twice_edges == 0 {
            break;
        }
        let size = remaining.len() as f64;
        let density = twice_edges as f64 / 2.0 / size;
        if best.is_none_or(|(d, _)| density > d) {
            best = Some((density, round));
        }
        let threshold = (1.0 + epsilon) * twice_edges as f64 / size;
        let below = |v: VertexId| (degree[v as usize].load(Ordering::Relaxed) as f64) < threshold;
        let removed: Vec<VertexId> = par::filter_range(remaining.len(), |i| below(remaining[i]))
            .into_iter()
            .map(|i| remaining[i as usize])
            .collect();
        for &v in &removed {
            alive[v as usize].store(false, Ordering::Relaxed);
            removed_at[v as usize] = round;
        }
        peel.run(g, &VertexSubset::from_sorted_ids(n, removed));
        remaining.retain(|&v| alive[v as usize].load(Ordering::Relaxed));
        round += 1;
    }

    Ok(match best {
        None => DenseSubgraph {
            vertices: Vec::new(),
            density: 0.0,
        },
        Some((density, round)) => DenseSubgraph {
            vertices: (0..n as VertexId).filter(|&v| removed_at[v as usize] >= round).collect(),
            density,
        },
    })
}
