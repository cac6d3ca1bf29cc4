use std::sync::atomic::{AtomicU64, Ordering};

use crate::api::{ops, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::EdgeMap;

/// Rank mass is summed in 2.62 fixed point so totals do not depend on the
/// order arcs are visited in.
const SCALE: f64 = 4_611_686_018_427_387_904.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub max_iters: u32,
    /// Stop once the L1 change of one iteration falls below this.
    pub tolerance: f64,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            damping: 0.85,
            max_iters: 20,
            tolerance: 1e-4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PageRankResult {
    pub scores: Vec<f64>,
    pub iterations: u32,
}

/// Power iteration with dangling mass spread uniformly.
pub fn pagerank<G: GraphContainer + ?Sized>(g: &G, params: &PageRankParams) -> Result<PageRankResult> {
    let PageRankParams {
        damping,
        max_iters,
        tolerance,
    } = *params;
    if !(damping > 0.0 && damping < 1.0) {
        return Err(GraphError::InvalidParameter(format!("damping = {damping} outside (0, 1)")));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(GraphError::InvalidParameter(format!("tolerance = {tolerance} must be positive")));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok(PageRankResult {
            scores: Vec::new(),
            iterations: 0,
        });
    }
    let degree: Vec<usize> = par::map_range(n, |v| ops::degree(g, v as VertexId));
    let all = VertexSubset::all(n);
    let base = (1.0 - damping) / n as f64;
    let mut scores = vec![1.0 / n as f64; n];
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let share: Vec<u64> = par::map_range(n, |u| match degree[u] {
            0 => 0,
            d => (scores[u] / d as f64 * SCALE) as u64,
        });
        let dangling = par::sum_range(n, |u| match degree[u] {
            0 => (scores[u] * SCALE) as u64,
            _ => 0,
        }) as f64
            / SCALE;
        let incoming: Vec<AtomicU64> = par::map_range(n, |_| AtomicU64::new(0));
        EdgeMap::new(
            |u, v| {
                incoming[v as usize].fetch_add(share[u as usize], Ordering::Relaxed);
                false
            },
            |_| true,
        )
        .no_dense_early_exit()
        .run(g, &all);

        let spread = dangling / n as f64;
        let next: Vec<f64> = par::map_range(n, |v| {
            base + damping * (incoming[v].load(Ordering::Relaxed) as f64 / SCALE + spread)
        });
        let change: f64 = next.iter().zip(&scores).map(|(a, b)| (a - b).abs()).sum();
        scores = next;
        if change < tolerance {
            break;
        }
    }
    Ok(PageRankResult { scores, iterations })
}
