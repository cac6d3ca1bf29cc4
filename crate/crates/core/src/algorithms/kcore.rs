use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};

use super::buckets::Buckets;
use crate::api::{ops, GraphContainer};
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::EdgeMap;

/// Coreness of every vertex by bucketed peeling on remaining degree.
pub fn kcore<G: GraphContainer + ?Sized>(g: &G) -> Vec<u32> {
    let n = g.num_vertices();
    let degree: Vec<AtomicU32> = par::map_range(n, |v| AtomicU32::new(ops::degree(g, v as VertexId) as u32));
    let done: Vec<AtomicBool> = par::map_range(n, |_| AtomicBool::new(false));
    let mut buckets = Buckets::new(degree.iter().map(|d| d.load(Ordering::Relaxed)).collect());
    let mut coreness = vec![0u32; n];
    let peel = EdgeMap::new(
        |_, v| {
            let _ = degree[v as usize].fetch_update(Ordering::Relaxed, Ordering::Relaxed, |d| d.checked_sub(1));
            true
        },
        |v| !done[v as usize].load(Ordering::Relaxed),
    )
    .no_dense_early_exit();

    let mut k = 0;
    while let Some((p, ids)) = buckets.next_bucket() {
        k = k.max(p);
        for &v in &ids {
            coreness[v as usize] = k;
            done[v as usize].store(true, Ordering::Relaxed);
        }
        let touched = peel.run(g, &VertexSubset::from_sorted_ids(n, ids));
        for v in touched.iter() {
            let d = degree[v as usize].load(Ordering::Relaxed).max(k);
            buckets.update(v, d).expect("peeling only lowers priorities to the current bucket");
        }
    }
    coreness
}
