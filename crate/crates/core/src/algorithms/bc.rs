use std::sync::atomic::{AtomicU32, Ordering};

use super::bfs::{atomic_vec, UNREACHED};
use crate::api::GraphContainer;
use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::EdgeMap;

/// Dependencies are summed in 64.64 fixed point so the result does not depend
/// on neighbor order or thread count.
const SCALE: f64 = 18_446_744_073_709_551_616.0;

#[derive(Clone, Debug, PartialEq)]
pub struct BcResult {
    /// Number of shortest paths from the source; 0 for unreached vertices.
    pub sigma: Vec<f64>,
    /// Single-source dependency of the source on each vertex. The source's
    /// own entry is 0.
    pub dependencies: Vec<f64>,
}

pub fn bc<G: GraphContainer + ?Sized>(g: &G, source: VertexId) -> Result<BcResult> {
    let n = g.num_vertices();
    if source as usize >= n {
        return Err(GraphError::out_of_range(source, n));
    }
    let levels = bfs_levels(g, source)?;
    let depth = {
        let mut depth = vec![UNREACHED; n];
        for (d, level) in levels.iter().enumerate() {
            for &v in level {
                depth[v as usize] = d as u32;
            }
        }
        depth
    };

    let mut sigma = vec![0u128; n];
    sigma[source as usize] = 1;
    for (d, level) in levels.iter().enumerate().skip(1) {
        let counts = par::map_slice(level, |&v| {
            let mut s = 0u128;
            g.map_neighbors(v, &mut |u| {
                if depth[u as usize] + 1 == d as u32 {
                    s = s.saturating_add(sigma[u as usize]);
                }
            });
            s
        });
        for (&v, s) in level.iter().zip(counts) {
            sigma[v as usize] = s;
        }
    }

    let mut delta = vec![0u128; n];
    for (d, level) in levels.iter().enumerate().rev().skip(1) {
        let sums = par::map_slice(level, |&v| {
            let sv = sigma[v as usize] as f64;
            let mut sum = 0u128;
            g.map_neighbors(v, &mut |w| {
                let w = w as usize;
                if depth[w] == d as u32 + 1 {
                    let term = sv / sigma[w] as f64 * (1.0 + delta[w] as f64 / SCALE);
                    sum += (term * SCALE) as u128;
                }
            });
            sum
        });
        for (&v, s) in level.iter().zip(sums) {
            delta[v as usize] = s;
        }
    }
    delta[source as usize] = 0;

    Ok(BcResult {
        sigma: sigma.into_iter().map(|s| s as f64).collect(),
        dependencies: delta.into_iter().map(|x| x as f64 / SCALE).collect(),
    })
}

/// Vertices grouped by hop distance from `source`, each level sorted.
fn bfs_levels<G: GraphContainer + ?Sized>(g: &G, source: VertexId) -> Result<Vec<Vec<VertexId>>> {
    let n = g.num_vertices();
    let depth: Vec<AtomicU32> = atomic_vec(n, UNREACHED);
    depth[source as usize].store(0, Ordering::Relaxed);
    let mut levels = vec![vec![source]];
    let mut frontier = VertexSubset::singleton(n, source)?;
    let mut round = 0;
    loop {
        round += 1;
        let step = EdgeMap::new(
            |_, v| {
                depth[v as usize]
                    .compare_exchange(UNREACHED, round, Ordering::Relaxed, Ordering::Relaxed)
                    .is_ok()
            },
            |v| depth[v as usize].load(Ordering::Relaxed) == UNREACHED,
        );
        frontier = step.run(g, &frontier);
        if frontier.is_empty() {
            break;
        }
        levels.push(frontier.to_vec());
    }
    Ok(levels)
}
