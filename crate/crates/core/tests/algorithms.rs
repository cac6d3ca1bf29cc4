use gcbench::algorithms::{self, AlgoParams, Algorithm, PageRankParams, UNREACHED};
use gcbench::containers::CsrGraph;
use gcbench::generate::erdos_renyi;
use gcbench::model::Edge;
use gcbench::par;
use gcbench_oracle::{self as oracle, Adj, TestRng};
use proptest::prelude::*;

fn csr(adj: &Adj) -> CsrGraph {
    let arcs: Vec<Edge> = oracle::arcs(adj).into_iter().map(Edge::from).collect();
    CsrGraph::from_sorted_arcs(adj.len(), &arcs).unwrap()
}

fn seeded_graphs(count: u64, max_n: usize) -> Vec<Adj> {
    let mut rng = TestRng::new(0xA11CE);
    (0..count)
        .map(|_| {
            let n = 1 + rng.below(max_n as u64) as usize;
            let p = [0.01, 0.03, 0.08, 0.2][rng.below(4) as usize];
            oracle::random_graph(n, p, &mut rng)
        })
        .collect()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Adj> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..3 * n).prop_map(move |e| oracle::undirected(n, e))
    })
}

#[test]
fn bfs_bc_match_references() {
    for adj in seeded_graphs(20, 120) {
        let g = csr(&adj);
        for source in [0, (adj.len() / 2) as u32] {
            let dist = algorithms::bfs(&g, source).unwrap().distances;
            let expected: Vec<u32> = oracle::bfs_distances(&adj, source)
                .into_iter()
                .map(|d| if d == oracle::INF { UNREACHED } else { d })
                .collect();
            assert_eq!(dist, expected);

            let r = algorithms::bc(&g, source).unwrap();
            let (sigma, delta) = oracle::brandes(&adj, source);
            for v in 0..adj.len() {
                assert!((r.sigma[v] - sigma[v]).abs() <= 1e-9 * sigma[v].max(1.0));
                assert!((r.dependencies[v] - delta[v]).abs() <= 1e-9, "v={v}: {} vs {}", r.dependencies[v], delta[v]);
            }
        }
    }
}

#[test]
fn bc_on_small_er_graphs() {
    for seed in 0..20 {
        let arcs = erdos_renyi(64, 0.08, seed).unwrap();
        let adj = oracle::adjacency(64, arcs.iter().map(|e| (e.src, e.dst)));
        let r = algorithms::bc(&csr(&adj), 0).unwrap();
        let (_, delta) = oracle::brandes(&adj, 0);
        for (got, want) in r.dependencies.iter().zip(&delta) {
            assert!((got - want).abs() <= 1e-9);
        }
    }
}

#[test]
fn pagerank_matches_dense_iteration() {
    for adj in seeded_graphs(10, 80) {
        let params = PageRankParams {
            tolerance: 1e-300,
            max_iters: 15,
            ..Default::default()
        };
        let r = algorithms::pagerank(&csr(&adj), &params).unwrap();
        assert_eq!(r.iterations, 15);
        let expected = oracle::pagerank(&adj, 0.85, 15);
        let l1: f64 = r.scores.iter().zip(&expected).map(|(a, b)| (a - b).abs()).sum();
        assert!(l1 < 1e-7, "l1 = {l1}");
        assert!((r.scores.iter().sum::<f64>() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn ads_within_approximation_bound() {
    let epsilon = 0.001;
    let mut rng = TestRng::new(14);
    for _ in 0..40 {
        let n = 2 + rng.below(11) as usize;
        let adj = oracle::random_graph(n, 0.1 + rng.unit() * 0.6, &mut rng);
        let r = algorithms::ads(&csr(&adj), epsilon).unwrap();
        let optimum = oracle::densest_exhaustive(&adj);
        assert!(r.density >= optimum / (2.0 * (1.0 + epsilon)) - 1e-12);
        assert_eq!(r.density, oracle::density(&adj, &r.vertices));
    }
}

#[test]
fn spanner_stretch_on_small_graphs() {
    for (i, adj) in seeded_graphs(15, 64).into_iter().enumerate() {
        let g = csr(&adj);
        for k in [1, 2, 4] {
            let arcs = algorithms::spanner(&g, k, i as u64).unwrap();
            let sub = oracle::adjacency(adj.len(), arcs.iter().map(|e| (e.src, e.dst)));
            assert!(arcs.iter().all(|e| adj[e.src as usize].binary_search(&e.dst).is_ok()));
            assert_eq!(oracle::components(&sub), oracle::components(&adj));
            let stretch = oracle::stretch(&adj, &sub).unwrap();
            assert!(stretch <= 8 * k, "stretch {stretch} for k = {k}");
        }
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let arcs = erdos_renyi(3000, 0.003, 5).unwrap();
    let g = CsrGraph::from_sorted_arcs(3000, &arcs).unwrap();
    let params = AlgoParams::default();
    for algo in Algorithm::ALL {
        let one = par::with_threads(1, || algorithms::run(algo, &g, &params).unwrap());
        let many = par::with_threads(4, || algorithms::run(algo, &g, &params).unwrap());
        assert_eq!(one.digest(), many.digest(), "{algo}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cc_and_kcore_match_references(adj in graph_strategy(40)) {
        let g = csr(&adj);
        prop_assert_eq!(algorithms::cc(&g), oracle::components(&adj));
        prop_assert_eq!(algorithms::kcore(&g), oracle::coreness(&adj));
    }

    #[test]
    fn mis_and_coloring_certificates(adj in graph_strategy(40), seed in any::<u64>()) {
        let g = csr(&adj);
        let set = algorithms::mis(&g, seed);
        prop_assert!(oracle::is_independent(&adj, &set));
        prop_assert!(oracle::is_maximal(&adj, &set));
        let colors = algorithms::coloring(&g);
        prop_assert!(oracle::is_proper_coloring(&adj, &colors));
        prop_assert!(oracle::num_colors(&colors) <= oracle::max_degree(&adj) + 1);
    }

    #[test]
    fn ldd_clusters_are_connected(adj in graph_strategy(40), seed in any::<u64>(), beta in 0.05f64..=1.0) {
        let labels = algorithms::ldd(&csr(&adj), beta, seed).unwrap();
        for &c in &labels {
            prop_assert_eq!(labels[c as usize], c);
        }
        prop_assert!(oracle::clusters_connected(&adj, &labels));
    }
}
