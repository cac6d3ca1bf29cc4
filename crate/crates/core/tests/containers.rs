use gcbench::algorithms::{self, AlgoParams, Algorithm};
use gcbench::api::{derive, ops, ApiConfig, Masked};
use gcbench::batch::{apply_delete, apply_insert, generate_update_batch, prepare, BatchForm};
use gcbench::containers::{bytecode_decode, bytecode_encode, CompressedCsrGraph, ContainerKind, CsrGraph};
use gcbench::generate::{erdos_renyi, rmat_arcs, RmatParams};
use gcbench::model::{symmetrize, t4_arcs, Edge, EdgeBatch};
use gcbench::{GraphContainer, GraphError};
use gcbench_oracle::{self as oracle, Adj};
use proptest::prelude::*;

fn adjacency_of(g: &dyn GraphContainer) -> Adj {
    let n = g.num_vertices();
    let mut pairs = Vec::new();
    for v in 0..n as u32 {
        g.map_neighbors(v, &mut |u| pairs.push((v, u)));
    }
    oracle::adjacency(n, pairs)
}

#[test]
fn every_container_stores_the_same_graph() {
    let arcs = erdos_renyi(100, 0.05, 42).unwrap();
    let expected = oracle::adjacency(100, arcs.iter().map(|e| (e.src, e.dst)));
    for kind in ContainerKind::ALL {
        let g = kind.build(100, &arcs).unwrap();
        assert_eq!(g.name(), kind.name());
        assert_eq!(adjacency_of(&*g), expected, "{kind}");
        assert_eq!(ops::num_edges(&g), arcs.len());
        for config in ApiConfig::ALL {
            let m = Masked::with_config(&g, config);
            assert_eq!(ops::num_edges(&m), arcs.len());
            for v in 0..100u32 {
                assert_eq!(ops::degree(&m, v), expected[v as usize].len(), "{kind} {config} {v}");
                assert_eq!(derive::get_neighbors(&m, v), expected[v as usize]);
            }
        }
    }
}

#[test]
fn algorithms_agree_across_containers_and_masks() {
    let arcs = erdos_renyi(100, 0.05, 7).unwrap();
    let reference_graph = CsrGraph::from_sorted_arcs(100, &arcs).unwrap();
    let params = AlgoParams::default();
    for algo in Algorithm::ALL {
        let reference = algorithms::run(algo, &reference_graph, &params).unwrap();
        for kind in ContainerKind::ALL {
            let g = kind.build(100, &arcs).unwrap();
            for config in ApiConfig::ALL {
                let out = algorithms::run(algo, &Masked::with_config(&g, config), &params).unwrap();
                assert!(out.matches(&reference), "{algo} {kind} {config}");
                assert_eq!(out.digest(), reference.digest(), "{algo} {kind} {config}");
            }
        }
    }
}

#[test]
fn t4_batch_examples() {
    for kind in ContainerKind::dynamic() {
        let mut g = kind.build(4, &t4_arcs()).unwrap();
        let form = g.preferred_form();
        let add = prepare(&EdgeBatch::new(vec![Edge::new(0, 3), Edge::new(3, 0)]), form);
        assert_eq!(apply_insert(&mut g, &add).unwrap(), 2);
        assert_eq!((g.num_edges(), ops::degree(&g, 3)), (Some(10), 2), "{kind}");
        assert_eq!(apply_delete(&mut g, &add).unwrap(), 2);

        let own = prepare(&EdgeBatch::new(t4_arcs()), form);
        assert_eq!(apply_insert(&mut g, &own).unwrap(), 0);

        let cut = prepare(&EdgeBatch::new(vec![Edge::new(2, 3), Edge::new(3, 2)]), form);
        assert_eq!(apply_delete(&mut g, &cut).unwrap(), 2);
        assert_eq!(ops::num_edges(&g), 6);
        assert_eq!(apply_delete(&mut g, &cut).unwrap(), 0);

        assert_eq!(apply_delete(&mut g, &own).unwrap(), 6);
        assert_eq!((g.num_vertices(), ops::num_edges(&g)), (4, 0));
    }
}

#[test]
fn static_containers_reject_updates() {
    let batch = prepare(&EdgeBatch::new(vec![Edge::new(0, 3)]), BatchForm::GlobalSort);
    for kind in [ContainerKind::Csr, ContainerKind::CompressedCsr] {
        let mut g = kind.build(4, &t4_arcs()).unwrap();
        assert!(matches!(apply_insert(&mut g, &batch), Err(GraphError::Unsupported { .. })));
        assert!(matches!(apply_delete(&mut g, &batch), Err(GraphError::Unsupported { .. })));
    }
}

#[test]
fn rmat_round_trip_restores_graph() {
    let log2_n = 10;
    let base = symmetrize(rmat_arcs(&RmatParams::default(), log2_n, 1 << 13, 3).unwrap());
    let n = 1 << log2_n;
    let present: std::collections::HashSet<Edge> = base.iter().copied().collect();
    let raw = generate_update_batch(&RmatParams::default(), n, 2000, 9).unwrap();
    let batch = EdgeBatch::new(raw.updates.into_iter().filter(|e| !present.contains(e)).collect());
    for kind in ContainerKind::dynamic() {
        for form in BatchForm::ALL {
            let mut g = kind.build(n, &base).unwrap();
            let before = adjacency_of(&*g);
            let prepared = prepare(&batch, form);
            let added = apply_insert(&mut g, &prepared).unwrap();
            assert_eq!(ops::num_edges(&g), base.len() + added);
            assert_eq!(apply_delete(&mut g, &prepared).unwrap(), added, "{kind} {form}");
            assert_eq!(adjacency_of(&*g), before, "{kind} {form}");
            assert_eq!(ops::stats(&g), ops::stats(&CsrGraph::from_sorted_arcs(n, &base).unwrap()));
        }
    }
}

#[test]
fn compressed_is_smaller_on_skewed_graphs() {
    let arcs = symmetrize(rmat_arcs(&RmatParams::default(), 14, 1 << 16, 1).unwrap());
    let csr = CsrGraph::from_sorted_arcs(1 << 14, &arcs).unwrap();
    let compressed = CompressedCsrGraph::from_csr(&csr);
    assert!(compressed.memory_bytes().unwrap() < csr.memory_bytes().unwrap());
    assert_eq!(adjacency_of(&compressed), adjacency_of(&csr));
}

fn sorted_list() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (any::<u32>(), prop::collection::btree_set(any::<u32>(), 0..64)).prop_map(|(s, set)| (s, set.into_iter().collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn byte_codes_match_reference((source, list) in sorted_list()) {
        let bytes = bytecode_encode(source, &list);
        prop_assert_eq!(&bytes, &oracle::byte_code(source, &list));
        prop_assert_eq!(bytecode_decode(source, &bytes).unwrap(), list);
    }

    #[test]
    fn derived_ops_match_direct_computation(
        sets in prop::collection::vec(prop::collection::btree_set(0u32..200, 0..30), 1..20),
    ) {
        let n = 200.max(sets.len());
        let pairs = sets.iter().enumerate().flat_map(|(v, s)| s.iter().map(move |&u| (v as u32, u)));
        let adj = oracle::adjacency(n, pairs.filter(|(v, u)| v != u));
        let arcs: Vec<Edge> = oracle::arcs(&adj).into_iter().map(Edge::from).collect();
        for kind in [ContainerKind::Csr, ContainerKind::Hash, ContainerKind::BlockedInline] {
            let g = kind.build(n, &arcs).unwrap();
            for (v, ns) in adj.iter().enumerate().take(sets.len()) {
                let v = v as u32;
                prop_assert_eq!(derive::reduce(&g, v, |u| u as u64, |a, b| a + b, 0), ns.iter().map(|&u| u as u64).sum::<u64>());
                prop_assert_eq!(derive::count(&g, v, |u| u % 3 == 0), ns.iter().filter(|&&u| u % 3 == 0).count());
                prop_assert_eq!(derive::degree(&g, v), ns.len());
                prop_assert_eq!(&derive::get_neighbors(&g, v), ns);
            }
            let kept = derive::filter(&g, |u, v| (u + v) % 2 == 0);
            let expected: Vec<Edge> = arcs.iter().copied().filter(|e| (e.src + e.dst) % 2 == 0).collect();
            prop_assert_eq!(kept.arcs(), expected);
        }
    }

    #[test]
    fn forms_produce_identical_graphs(
        raw in prop::collection::vec((0u32..60, 0u32..60), 0..300),
        kind_index in 0usize..8,
    ) {
        let kind = ContainerKind::dynamic().nth(kind_index).unwrap();
        let base = erdos_renyi(60, 0.05, 1).unwrap();
        let batch: EdgeBatch = raw.into_iter().map(Edge::from).collect();
        let mut results = Vec::new();
        for form in BatchForm::ALL {
            let mut g = kind.build(60, &base).unwrap();
            apply_insert(&mut g, &prepare(&batch, form)).unwrap();
            results.push(adjacency_of(&*g));
        }
        prop_assert_eq!(&results[0], &results[1]);
        prop_assert_eq!(&results[1], &results[2]);
    }
}
