//! Framework-level neighborhood operations.
//!
//! Each helper uses the container's native operation when its capability
//! flag is set and otherwise derives the result from `map_neighbors`. Masked
//! capabilities are therefore never invoked, only emulated.

use std::sync::atomic::{AtomicBool, Ordering};

use super::GraphContainer;
use crate::model::{GraphStats, VertexId};
use crate::par;

/// Degree of `v`, counted through `map_neighbors` when `degree` is absent.
pub fn degree<G: GraphContainer + ?Sized>(g: &G, v: VertexId) -> usize {
    if g.capabilities().degree {
        if let Some(d) = g.degree(v) {
            return d;
        }
    }
    let mut count = 0;
    g.map_neighbors(v, &mut |_| count += 1);
    count
}

/// Number of arcs, summed from per-vertex degrees when `num_edges` is absent.
pub fn num_edges<G: GraphContainer + ?Sized>(g: &G) -> usize {
    if g.capabilities().num_edges {
        if let Some(m) = g.num_edges() {
            return m;
        }
    }
    par::sum_range(g.num_vertices(), |v| degree(g, v as VertexId) as u64) as usize
}

pub fn stats<G: GraphContainer + ?Sized>(g: &G) -> GraphStats {
    GraphStats {
        n: g.num_vertices(),
        m: num_edges(g),
    }
}

/// Calls `f` until it returns true. Without native early exit the scan runs
/// to completion but `f` is not called again after its first `true`.
pub fn map_early_exit<G: GraphContainer + ?Sized>(
    g: &G,
    v: VertexId,
    f: &mut dyn FnMut(VertexId) -> bool,
) -> bool {
    if g.capabilities().map_early_exit {
        if let Some(hit) = g.map_neighbors_early_exit(v, f) {
            return hit;
        }
    }
    let mut done = false;
    g.map_neighbors(v, &mut |u| {
        if !done {
            done = f(u);
        }
    });
    done
}

pub fn parallel_map<G: GraphContainer + ?Sized>(g: &G, v: VertexId, f: &(dyn Fn(VertexId) + Sync)) {
    if g.capabilities().parallel_map && g.parallel_map_neighbors(v, f).is_some() {
        return;
    }
    g.map_neighbors(v, &mut |u| f(u));
}

pub fn parallel_map_early_exit<G: GraphContainer + ?Sized>(
    g: &G,
    v: VertexId,
    f: &(dyn Fn(VertexId) -> bool + Sync),
) -> bool {
    let caps = g.capabilities();
    if caps.parallel_map_early_exit {
        if let Some(hit) = g.parallel_map_neighbors_early_exit(v, f) {
            return hit;
        }
    }
    if caps.map_early_exit {
        return map_early_exit(g, v, &mut |u| f(u));
    }
    let done = AtomicBool::new(false);
    let step = |u: VertexId| {
        if !done.load(Ordering::Relaxed) && f(u) {
            done.store(true, Ordering::Relaxed);
        }
    };
    if caps.parallel_map {
        parallel_map(g, v, &step);
    } else {
        g.map_neighbors(v, &mut |u| step(u));
    }
    done.into_inner()
}
