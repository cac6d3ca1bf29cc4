use std::sync::atomic::{AtomicU32, Ordering};

use gcbench::api::{ApiConfig, Masked};
use gcbench::containers::{ContainerKind, CsrGraph};
use gcbench::model::Edge;
use gcbench::par;
use gcbench::traversal::{Direction, EdgeMap};
use gcbench::VertexSubset;
use gcbench_oracle::{self as oracle, Adj};
use proptest::prelude::*;

fn arcs_of(adj: &Adj) -> Vec<Edge> {
    oracle::arcs(adj).into_iter().map(Edge::from).collect()
}

/// (graph, frontier flags, eligibility flags)
fn instance() -> impl Strategy<Value = (Adj, Vec<bool>, Vec<bool>)> {
    (1usize..120).prop_flat_map(|n| {
        (
            prop::collection::vec((0..n as u32, 0..n as u32), 0..4 * n).prop_map(move |e| oracle::undirected(n, e)),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::bool::weighted(0.7), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sparse_and_dense_agree((adj, in_frontier, eligible) in instance()) {
        let n = adj.len();
        let g = CsrGraph::from_sorted_arcs(n, &arcs_of(&adj)).unwrap();
        let ids: Vec<u32> = (0..n as u32).filter(|&v| in_frontier[v as usize]).collect();
        let frontier = VertexSubset::from_ids(n, ids.clone()).unwrap();
        let expected = oracle::frontier_step(&adj, &ids, |v| eligible[v as usize]);
        let spec = |dir| EdgeMap::new(|_, _| true, |v| eligible[v as usize]).force(Some(dir));
        let sparse = spec(Direction::Sparse).run(&g, &frontier);
        let dense = spec(Direction::Dense).run(&g, &frontier.clone().to_dense());
        prop_assert_eq!(sparse.to_vec(), expected.clone());
        prop_assert_eq!(dense.to_vec(), expected.clone());
        let auto = EdgeMap::new(|_, _| true, |v| eligible[v as usize]).run(&g, &frontier);
        prop_assert_eq!(auto.to_vec(), expected);
    }
}

#[test]
fn agreement_holds_across_containers_and_masks() {
    let mut rng = oracle::TestRng::new(3);
    let adj = oracle::random_graph(150, 0.04, &mut rng);
    let arcs = arcs_of(&adj);
    let ids: Vec<u32> = (0..150).filter(|v| v % 7 == 0).collect();
    let expected = oracle::frontier_step(&adj, &ids, |v| v % 3 != 0);
    for kind in ContainerKind::ALL {
        let g = kind.build(150, &arcs).unwrap();
        for config in ApiConfig::ALL {
            let masked = Masked::with_config(&g, config);
            for dir in [Direction::Sparse, Direction::Dense] {
                let frontier = VertexSubset::from_ids(150, ids.clone()).unwrap();
                let out = EdgeMap::new(|_, _| true, |v| v % 3 != 0).force(Some(dir)).run(&masked, &frontier);
                assert_eq!(out.to_vec(), expected, "{kind} {config} {dir:?}");
            }
        }
    }
}

#[test]
fn sparse_emits_each_destination_once() {
    // Dense hub graph: every destination is reachable from many frontier
    // vertices at once.
    let n = 4000u32;
    let mut pairs = Vec::new();
    for u in 0..64 {
        for v in 64..n {
            pairs.push((u, v));
        }
    }
    let adj = oracle::undirected(n as usize, pairs);
    let g = CsrGraph::from_sorted_arcs(n as usize, &arcs_of(&adj)).unwrap();
    let frontier = VertexSubset::from_ids(n as usize, (0..64).collect()).unwrap();
    par::with_threads(4, || {
        let wins: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();
        let claimed: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(u32::MAX)).collect();
        let out = EdgeMap::new(
            |u, v| {
                let won = claimed[v as usize]
                    .compare_exchange(u32::MAX, u, Ordering::Relaxed, Ordering::Relaxed)
                    .is_ok();
                if won {
                    wins[v as usize].fetch_add(1, Ordering::Relaxed);
                }
                won
            },
            |_| true,
        )
        .force(Some(Direction::Sparse))
        .run(&g, &frontier);
        assert!(wins.iter().all(|w| w.load(Ordering::Relaxed) <= 1));
        assert_eq!(out.to_vec(), (64..n).collect::<Vec<_>>());

        // Even an update that always succeeds yields each destination once.
        let out = EdgeMap::new(|_, _| true, |_| true).force(Some(Direction::Sparse)).run(&g, &frontier);
        assert_eq!(out.len(), (n - 64) as usize);
        assert_eq!(out.to_vec(), (64..n).collect::<Vec<_>>());
    });
}

#[test]
fn membership_independent_of_threads() {
    let mut rng = oracle::TestRng::new(8);
    let adj = oracle::random_graph(3000, 0.004, &mut rng);
    let g = CsrGraph::from_sorted_arcs(3000, &arcs_of(&adj)).unwrap();
    let frontier = VertexSubset::from_ids(3000, (0..3000).step_by(3).collect()).unwrap();
    let step = || EdgeMap::new(|_, _| true, |v| v % 2 == 1).run(&g, &frontier).to_vec();
    assert_eq!(par::with_threads(1, step), par::with_threads(4, step));
}
