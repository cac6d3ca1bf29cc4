use std::sync::atomic::{AtomicU8, Ordering};

use rand::seq::SliceRandom;

use crate::api::{ops, GraphContainer};
use crate::generate::stream_rng;
use crate::model::VertexId;
use crate::par;
use crate::subset::VertexSubset;
use crate::traversal::{vertex_filter, vertex_map, EdgeMap};

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Seeded random permutation used as MIS priorities; lower wins.
pub fn priorities(n: usize, seed: u64) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut stream_rng(seed, 0));
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    rank
}

/// Maximal independent set by random-priority rounds: an undecided vertex
/// joins when it beats every undecided neighbor, and its neighbors drop out.
pub fn mis<G: GraphContainer + ?Sized>(g: &G, seed: u64) -> Vec<bool> {
    let n = g.num_vertices();
    let priority = priorities(n, seed);
    let state: Vec<AtomicU8> = par::map_range(n, |_| AtomicU8::new(UNDECIDED));
    let undecided_at = |v: VertexId| state[v as usize].load(Ordering::Relaxed) == UNDECIDED;
    let exclude = EdgeMap::new(
        |_, v| {
            state[v as usize]
                .compare_exchange(UNDECIDED, OUT, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        },
        undecided_at,
    );

    let mut undecided = VertexSubset::all(n).to_sparse();
    while !undecided.is_empty() {
        let roots = vertex_filter(&undecided, |v| {
            let pv = priority[v as usize];
            !ops::map_early_exit(g, v, &mut |u| u != v && undecided_at(u) && priority[u as usize] < pv)
        });
        vertex_map(&roots, |v| state[v as usize].store(IN, Ordering::Relaxed));
        exclude.run(g, &roots);
        undecided = vertex_filter(&undecided, undecided_at);
    }
    state.into_iter().map(|s| s.into_inner() == IN).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::CsrGraph;
    use crate::model::t4_arcs;

    #[test]
    fn t4_contains_pendant_or_its_neighbor() {
        let g = CsrGraph::from_sorted_arcs(4, &t4_arcs()).unwrap();
        for seed in 0..20 {
            let s = mis(&g, seed);
            assert_eq!(s[..3].iter().filter(|&&x| x).count(), 1, "{s:?}");
            assert!(s[3] != s[2]);
        }
    }

    #[test]
    fn edgeless_takes_everything() {
        assert_eq!(mis(&CsrGraph::empty(3), 5), vec![true; 3]);
    }

    #[test]
    fn priorities_are_a_permutation() {
        let mut p = priorities(1000, 9);
        assert_eq!(p, priorities(1000, 9));
        p.sort_unstable();
        assert_eq!(p, (0..1000).collect::<Vec<_>>());
    }
}
