use std::sync::atomic::{AtomicU32, Ordering};

use super::bfs::into_plain;
use crate::api::GraphContainer;
use crate::model::VertexId;
use crate::par;

/// Component labels from a concurrent union-find over every arc. Roots are
/// always linked under the smaller root, so each label is the smallest id in
/// its component.
pub fn cc<G: GraphContainer + ?Sized>(g: &G) -> Vec<VertexId> {
    let n = g.num_vertices();
    let parent: Vec<AtomicU32> = par::map_range(n, |v| AtomicU32::new(v as u32));
    par::for_each_index(n, |v| {
        let v = v as VertexId;
        g.map_neighbors(v, &mut |u| {
            if u < v {
                union(&parent, u, v);
            }
        });
    });
    par::for_each_index(n, |v| {
        let root = find(&parent, v as VertexId);
        parent[v].store(root, Ordering::Relaxed);
    });
    into_plain(parent)
}

fn find(parent: &[AtomicU32], mut v: VertexId) -> VertexId {
    loop {
        let p = parent[v as usize].load(Ordering::Acquire);
        if p == v {
            return v;
        }
        let gp = parent[p as usize].load(Ordering::Acquire);
        // Path halving; losing this race only skips a shortcut.
        let _ = parent[v as usize].compare_exchange(p, gp, Ordering::AcqRel, Ordering::Relaxed);
        v = gp;
    }
}

fn union(parent: &[AtomicU32], a: VertexId, b: VertexId) {
    let (mut a, mut b) = (a, b);
    loop {
        a = find(parent, a);
        b = find(parent, b);
        if a == b {
            return;
        }
        let (small, large) = (a.min(b), a.max(b));
        if parent[large as usize]
            .compare_exchange(large, small, Ordering::AcqRel, Ordering::Relaxed)
            .is_ok()
        {
            return;
        }
    }
}
