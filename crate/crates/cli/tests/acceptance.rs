//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use gcbench::algorithms::{self, Algorithm, PageRankParams, UNREACHED};
use gcbench::api::{derive, ApiConfig, Masked};
use gcbench::batch::{apply_delete, apply_insert, generate_update_batch, prepare, BatchForm};
use gcbench::containers::{bytecode_decode, bytecode_encode, CompressedCsrGraph, ContainerKind, CsrGraph};
use gcbench::generate::RmatParams;
use gcbench::model::{Edge, EdgeBatch};
use gcbench::traversal::{Direction, EdgeMap};
use gcbench::{par, GraphContainer, VertexSubset};
use gcbench_cli::{load_graph, run, verify, LoadedGraph, RunOptions};
use gcbench_oracle::{self as oracle, Adj, TestRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn csr_of(adj: &Adj) -> CsrGraph {
    let arcs: Vec<Edge> = oracle::arcs(adj).into_iter().map(Edge::from).collect();
    CsrGraph::from_sorted_arcs(adj.len(), &arcs).unwrap()
}

fn derivations() -> Outcome {
    let mut rng = TestRng::new(1);
    let universe = 5000u64;
    let sets: Vec<Vec<u32>> = (0..1000u32)
        .map(|v| {
            let len = rng.below(80);
            let set: std::collections::BTreeSet<u32> =
                (0..len).map(|_| rng.below(universe) as u32).filter(|&u| u != v).collect();
            set.into_iter().collect()
        })
        .collect();
    let n = universe as usize;
    let adj = oracle::adjacency(n, sets.iter().enumerate().flat_map(|(v, s)| s.iter().map(move |&u| (v as u32, u))));
    let arcs: Vec<Edge> = oracle::arcs(&adj).into_iter().map(Edge::from).collect();
    for kind in ContainerKind::ALL {
        let built = kind.build(n, &arcs).map_err(|e| e.to_string())?;
        let g = Masked::with_config(&built, ApiConfig::Min);
        for (v, set) in sets.iter().enumerate() {
            let v = v as u32;
            let sum: u64 = set.iter().map(|&u| u as u64).sum();
            let max = set.iter().copied().max().unwrap_or(0);
            let odd = set.iter().filter(|&&u| u % 2 == 1).count();
            let got = (
                derive::reduce(&g, v, |u| u as u64, |a, b| a + b, 0),
                derive::reduce(&g, v, |u| u, |a, b| a.max(b), 0),
                derive::count(&g, v, |u| u % 2 == 1),
                derive::degree(&g, v),
                derive::get_neighbors(&g, v),
            );
            ensure(got == (sum, max, odd, set.len(), set.clone()), || format!("{kind}: vertex {v} differs"))?;
        }
        let kept = derive::filter(&g, |u, v| (u ^ v) % 3 == 0).arcs();
        let expected: Vec<Edge> = arcs.iter().copied().filter(|e| (e.src ^ e.dst) % 3 == 0).collect();
        ensure(kept == expected, || format!("{kind}: filter differs"))?;
    }
    Ok("reduce/count/degree/get_neighbors/filter exact on 1000 sets x 10 containers".into())
}

fn cross_container() -> Outcome {
    let mut graphs = vec![load_graph("t4", 0).unwrap()];
    graphs.extend((0..10).map(|seed| load_graph("er:n=100,p=0.05", seed).unwrap()));
    let mut checks = 0;
    for g in &graphs {
        let report = verify(g, 7).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}: {}", g.name, report.mismatches.join("; ")))?;
        ensure(report.records.len() == 10 * 10 * 9, || "missing combinations".into())?;
        checks += report.records.len();
    }
    Ok(format!("{checks} (algorithm, container, mask) checks on T4 + 10 ER graphs"))
}

fn oracles() -> Outcome {
    let mut rng = TestRng::new(3);
    let graphs: Vec<Adj> = (0..50)
        .map(|i| {
            let n = 2 + rng.below(199) as usize;
            let p = [0.005, 0.02, 0.05][i % 3];
            oracle::random_graph(n, p, &mut rng)
        })
        .collect();
    for (i, adj) in graphs.iter().enumerate() {
        let g = csr_of(adj);
        let n = adj.len();
        let source = (i % n) as u32;
        let dist = algorithms::bfs(&g, source).unwrap().distances;
        let expected: Vec<u32> = oracle::bfs_distances(adj, source)
            .into_iter()
            .map(|d| if d == oracle::INF { UNREACHED } else { d })
            .collect();
        ensure(dist == expected, || format!("bfs graph {i}"))?;

        let bc = algorithms::bc(&g, source).unwrap();
        let (_, delta) = oracle::brandes(adj, source);
        ensure(bc.dependencies.iter().zip(&delta).all(|(a, b)| (a - b).abs() <= 1e-9), || format!("bc graph {i}"))?;

        ensure(algorithms::cc(&g) == oracle::components(adj), || format!("cc graph {i}"))?;
        ensure(algorithms::kcore(&g) == oracle::coreness(adj), || format!("kcore graph {i}"))?;

        let params = PageRankParams::default();
        let pr = algorithms::pagerank(&g, &params).unwrap();
        let reference = oracle::pagerank(adj, params.damping, pr.iterations);
        let l1: f64 = pr.scores.iter().zip(&reference).map(|(a, b)| (a - b).abs()).sum();
        ensure(l1 < 1e-7, || format!("pagerank graph {i}: l1 {l1}"))?;

        let set = algorithms::mis(&g, i as u64);
        ensure(oracle::is_independent(adj, &set) && oracle::is_maximal(adj, &set), || format!("mis graph {i}"))?;
        let colors = algorithms::coloring(&g);
        ensure(
            oracle::is_proper_coloring(adj, &colors) && oracle::num_colors(&colors) <= oracle::max_degree(adj) + 1,
            || format!("coloring graph {i}"),
        )?;

        let labels = algorithms::ldd(&g, 0.2, i as u64).unwrap();
        ensure(labels.iter().all(|&c| labels[c as usize] == c), || format!("ldd centers graph {i}"))?;
        ensure(oracle::clusters_connected(adj, &labels), || format!("ldd connectivity graph {i}"))?;
    }

    let mut ads_graphs = 0;
    for i in 0..60 {
        let n = 1 + (i % 14);
        let adj = oracle::random_graph(n, 0.15 + 0.7 * rng.unit(), &mut rng);
        let r = algorithms::ads(&csr_of(&adj), 0.001).unwrap();
        let optimum = oracle::densest_exhaustive(&adj);
        ensure(r.density >= optimum / (2.0 * 1.001) - 1e-12, || format!("ads graph {i}: {} vs {optimum}", r.density))?;
        ads_graphs += 1;
    }

    let mut worst_ratio: f64 = 0.0;
    for i in 0..30 {
        let n = 2 + rng.below(63) as usize;
        let adj = oracle::random_graph(n, 0.03 + 0.2 * rng.unit(), &mut rng);
        for k in [1, 2, 3, 4] {
            let arcs = algorithms::spanner(&csr_of(&adj), k, i).unwrap();
            let sub = oracle::adjacency(n, arcs.iter().map(|e| (e.src, e.dst)));
            ensure(oracle::components(&sub) == oracle::components(&adj), || format!("spanner cc graph {i}"))?;
            let stretch = oracle::stretch(&adj, &sub).ok_or_else(|| format!("spanner disconnects graph {i}"))?;
            ensure(stretch <= 8 * k, || format!("spanner stretch {stretch} > {} on graph {i}", 8 * k))?;
            worst_ratio = worst_ratio.max(stretch as f64 / k as f64);
        }
    }

    let mut radius_ratio: f64 = 0.0;
    for adj in &graphs {
        let labels = algorithms::ldd(&csr_of(adj), 0.2, 9).unwrap();
        let bound = 4.0 * (adj.len() as f64).ln() / 0.2;
        radius_ratio = radius_ratio.max(oracle::max_cluster_radius(adj, &labels) as f64 / bound.max(1.0));
    }
    Ok(format!(
        "50 graphs exact; ADS bound on {ads_graphs} graphs; worst spanner stretch/k {worst_ratio:.2}; \
         worst LDD radius/(4 ln n/beta) {radius_ratio:.2}"
    ))
}

fn mode_equivalence() -> Outcome {
    let mut rng = TestRng::new(4);
    for i in 0..200 {
        let n = 1 + rng.below(400) as usize;
        let adj = oracle::random_graph(n, 4.0 / n as f64 * rng.unit(), &mut rng);
        let g = csr_of(&adj);
        let density = rng.unit();
        let ids: Vec<u32> = (0..n as u32).filter(|_| rng.unit() < density).collect();
        let salt = rng.below(7) as u32;
        let cond = |v: u32| !(v + salt).is_multiple_of(7);
        let frontier = VertexSubset::from_ids(n, ids.clone()).unwrap();
        let step = |dir| EdgeMap::new(|_, _| true, cond).force(Some(dir)).run(&g, &frontier).to_vec();
        let (sparse, dense) = (step(Direction::Sparse), step(Direction::Dense));
        ensure(sparse == dense, || format!("instance {i}: sparse and dense differ"))?;
        ensure(sparse == oracle::frontier_step(&adj, &ids, cond), || format!("instance {i}: wrong frontier"))?;
    }
    Ok("200 instances identical".into())
}

fn round_trip() -> Outcome {
    let base = load_graph("rmat:log2n=14,arcs=65536", 5).unwrap();
    let present: HashSet<Edge> = base.arcs.iter().copied().collect();
    let raw = generate_update_batch(&RmatParams::default(), base.n, 20_000, 11).unwrap();
    let mut updates: Vec<Edge> = raw.updates.into_iter().filter(|e| !present.contains(e)).collect();
    let extra: Vec<Edge> = updates.iter().step_by(5).copied().collect();
    updates.extend(extra);
    let batch = EdgeBatch::new(updates);
    let reference = CsrGraph::from_sorted_arcs(base.n, &base.arcs).unwrap();
    let expected_stats = gcbench::api::ops::stats(&reference);
    let mut combos = 0;
    for kind in ContainerKind::dynamic() {
        for form in BatchForm::ALL {
            let mut g = kind.build(base.n, &base.arcs).map_err(|e| e.to_string())?;
            let prepared = prepare(&batch, form);
            let added = apply_insert(&mut g, &prepared).map_err(|e| e.to_string())?;
            ensure(added > 0, || "batch added nothing".into())?;
            apply_delete(&mut g, &prepared).map_err(|e| e.to_string())?;
            ensure(CsrGraph::from_container(&g).arcs() == base.arcs, || format!("{kind}/{form}: arcs differ"))?;
            ensure(gcbench::api::ops::stats(&g) == expected_stats, || format!("{kind}/{form}: stats differ"))?;
            combos += 1;
        }
    }
    Ok(format!("{combos} container/form combinations restored exactly"))
}

fn compression() -> Outcome {
    let mut rng = TestRng::new(6);
    for i in 0..100_000 {
        let source = rng.below(1 << 31) as u32;
        let len = rng.below(40);
        let span = 1 + rng.below(u32::MAX as u64);
        let set: std::collections::BTreeSet<u32> = (0..len).map(|_| rng.below(span) as u32).collect();
        let list: Vec<u32> = set.into_iter().collect();
        let bytes = bytecode_encode(source, &list);
        ensure(bytes == oracle::byte_code(source, &list), || format!("list {i}: encoding differs"))?;
        ensure(bytecode_decode(source, &bytes).ok().as_ref() == Some(&list), || format!("list {i}: decode differs"))?;
    }
    let g = load_graph("rmat:log2n=17,arcs=1048576", 1).unwrap();
    let csr = CsrGraph::from_sorted_arcs(g.n, &g.arcs).unwrap();
    let compressed = CompressedCsrGraph::from_csr(&csr);
    let (c, u) = (compressed.memory_bytes().unwrap(), csr.memory_bytes().unwrap());
    ensure(c < u, || format!("compressed {c} bytes >= csr {u} bytes"))?;
    Ok(format!("1e5 lists round-trip; RMAT 2^20 arcs: {c} vs {u} bytes ({:.2}x)", u as f64 / c as f64))
}

fn cli(args: &[&str]) -> Result<std::process::Output, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gcbench"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("gcbench {} failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out)
}

/// TSV text with the wall-clock column blanked.
fn without_seconds(tsv: &str) -> String {
    let col = tsv.lines().next().unwrap_or("").split('\t').position(|c| c == "seconds");
    tsv.lines()
        .map(|line| {
            line.split('\t')
                .enumerate()
                .map(|(i, f)| if Some(i) == col { "" } else { f })
                .collect::<Vec<_>>()
                .join("\t")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let read = |p: &str| std::fs::read_to_string(p).map_err(|e| e.to_string());

    for name in ["v1.tsv", "v2.tsv"] {
        cli(&["verify", "--graph", "er:n=100,p=0.05", "--seed", "3", "--threads", "1", "--out", &path(name)])?;
    }
    ensure(read(&path("v1.tsv"))? == read(&path("v2.tsv"))?, || "verify TSV differs between runs".into())?;

    for name in ["r1.tsv", "r2.tsv"] {
        cli(&[
            "run", "--algorithm", "pagerank", "--container", "hash-inline", "--graph", "rmat:log2n=10,arcs=8192",
            "--config", "min", "--trials", "2", "--threads", "1", "--seed", "5", "--out", &path(name),
        ])?;
    }
    let (r1, r2) = (read(&path("r1.tsv"))?, read(&path("r2.tsv"))?);
    ensure(without_seconds(&r1) == without_seconds(&r2), || "run TSV differs outside the seconds column".into())?;

    let g = load_graph("rmat:log2n=14,arcs=131072", 2).unwrap();
    let csr = CsrGraph::from_sorted_arcs(g.n, &g.arcs).unwrap();
    let many = par::hardware_threads().max(4);
    let params = algorithms::AlgoParams::default();
    for algo in [Algorithm::Bfs, Algorithm::KCore, Algorithm::PageRank, Algorithm::Cc] {
        let one = par::with_threads(1, || algorithms::run(algo, &csr, &params).unwrap().digest());
        let all = par::with_threads(many, || algorithms::run(algo, &csr, &params).unwrap().digest());
        ensure(one == all, || format!("{algo} digest differs between 1 and {many} threads"))?;
    }
    Ok(format!(
        "verify TSV byte-identical; run TSV identical except seconds; digests equal at 1 and {many} threads"
    ))
}

fn ablation() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let tsv = dir.path().join("ablation.tsv");
    let out = cli(&[
        "ablation", "--algorithm", "bfs", "--graph", "er:n=2000,p=0.003", "--trials", "2", "--threads", "1",
        "--out", &tsv.to_string_lossy(),
    ])?;
    let summary = String::from_utf8_lossy(&out.stdout).into_owned();
    let rows: Vec<Vec<&str>> = summary.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let names: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    let expected: Vec<&str> = ApiConfig::ALL.iter().map(|c| c.name()).collect();
    ensure(names == expected, || format!("configs {names:?}"))?;
    ensure(rows.iter().all(|r| r[3] == rows[0][3]), || "digests differ across configs".into())?;
    let slowdowns: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap_or(f64::NAN)).collect();
    ensure(slowdowns.iter().all(|s| s.is_finite() && *s > 0.0), || "slowdown column not populated".into())?;
    let records = std::fs::read_to_string(&tsv).map_err(|e| e.to_string())?.lines().count() - 1;
    ensure(records == 9 * 2, || format!("{records} records"))?;
    let listed: Vec<String> = names.iter().zip(&slowdowns).map(|(n, s)| format!("{n}={s:.2}")).collect();
    Ok(format!("9 configs, equal digests; slowdowns {}", listed.join(" ")))
}

fn perf_smoke(graph: &LoadedGraph) -> Outcome {
    let mean = |config| {
        let opts = RunOptions {
            algorithm: Algorithm::PageRank,
            container: ContainerKind::Csr,
            config,
            trials: 3,
            threads: 0,
            seed: 1,
        };
        run(graph, &opts).map(|r| r.mean_seconds()).map_err(|e| e.to_string())
    };
    let (min, full) = (mean(ApiConfig::Min)?, mean(ApiConfig::Full)?);
    let message = format!("full {full:.3}s vs min {min:.3}s (ratio {:.3})", full / min);
    ensure(full <= min * 1.05, || message.clone())?;
    Ok(message)
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("derived operations", Duration::from_secs(5), Box::new(derivations)),
        ("cross-container equivalence", Duration::from_secs(60), Box::new(cross_container)),
        ("algorithm oracles", Duration::from_secs(300), Box::new(oracles)),
        ("edge_map mode equivalence", Duration::from_secs(30), Box::new(mode_equivalence)),
        ("batch round trip", Duration::from_secs(60), Box::new(round_trip)),
        ("byte-code compression", Duration::from_secs(60), Box::new(compression)),
        ("determinism", Duration::from_secs(600), Box::new(determinism)),
        ("ablation completeness", Duration::from_secs(600), Box::new(ablation)),
        (
            "pagerank full vs min API",
            Duration::from_secs(600),
            Box::new(|| perf_smoke(&load_graph("rmat:log2n=17,arcs=1048576", 1).unwrap())),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  [{}] {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{}] {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
