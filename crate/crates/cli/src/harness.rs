//! Timed runs, ablation sweeps, update throughput and verification.

use std::hash::Hasher;
use std::time::Instant;

use gcbench::algorithms::{self, AlgoOutput, AlgoParams, Algorithm};
use gcbench::api::{ApiConfig, Masked};
use gcbench::batch::{apply_delete, apply_insert, generate_update_batch, prepare};
use gcbench::containers::{ContainerKind, CsrGraph};
use gcbench::digest::Fnv64;
use gcbench::generate::RmatParams;
use gcbench::model::EdgeBatch;
use gcbench::{par, GraphContainer, GraphError};

use crate::graphs::LoadedGraph;
use crate::report::{BenchRecord, VerifyRecord};
use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub algorithm: Algorithm,
    pub container: ContainerKind,
    pub config: ApiConfig,
    /// Timed trials after one untimed warmup.
    pub trials: usize,
    /// Worker threads; 0 means all hardware threads.
    pub threads: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            algorithm: Algorithm::Bfs,
            container: ContainerKind::Csr,
            config: ApiConfig::Full,
            trials: 3,
            threads: 0,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub records: Vec<BenchRecord>,
    /// Digest of the canonical output.
    pub digest: u64,
}

impl RunReport {
    pub fn mean_seconds(&self) -> f64 {
        self.records.iter().map(|r| r.seconds).sum::<f64>() / self.records.len() as f64
    }
}

fn resolve_threads(threads: usize) -> usize {
    if threads == 0 {
        par::hardware_threads()
    } else {
        threads
    }
}

fn algo_params(seed: u64) -> AlgoParams {
    AlgoParams {
        seed,
        ..AlgoParams::default()
    }
}

/// Warmup plus `opts.trials` timed runs of one algorithm on one container.
pub fn run(graph: &LoadedGraph, opts: &RunOptions) -> Result<RunReport> {
    if opts.trials == 0 {
        return Err(HarnessError::usage("trials must be at least 1"));
    }
    let g = opts.container.build(graph.n, &graph.arcs)?;
    timed(&*g, graph, opts)
}

fn timed(g: &dyn GraphContainer, graph: &LoadedGraph, opts: &RunOptions) -> Result<RunReport> {
    let threads = resolve_threads(opts.threads);
    let params = algo_params(opts.seed);
    let masked = Masked::with_config(g, opts.config);
    par::with_threads(threads, || {
        let digest = algorithms::run(opts.algorithm, &masked, &params)?.digest();
        let mut records = Vec::with_capacity(opts.trials);
        for trial in 0..opts.trials {
            let start = Instant::now();
            let out = algorithms::run(opts.algorithm, &masked, &params)?;
            let seconds = start.elapsed().as_secs_f64().max(1e-9);
            if out.digest() != digest {
                return Err(GraphError::Logic(format!("{} output changed between trials", opts.algorithm)).into());
            }
            records.push(BenchRecord {
                container: opts.container.name().to_string(),
                workload: opts.algorithm.name().to_string(),
                graph: graph.name.clone(),
                config: opts.config.name().to_string(),
                trial,
                threads,
                seed: opts.seed,
                seconds,
                digest,
            });
        }
        Ok(RunReport { records, digest })
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationRow {
    pub config: ApiConfig,
    pub mean_seconds: f64,
    /// `mean_seconds` over the full-API mean.
    pub slowdown: f64,
    pub digest: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationReport {
    pub records: Vec<BenchRecord>,
    /// One row per configuration, in [`ApiConfig::ALL`] order.
    pub rows: Vec<AblationRow>,
}

/// Runs `algorithm` on CSR under every API configuration.
pub fn run_ablation(
    graph: &LoadedGraph,
    algorithm: Algorithm,
    trials: usize,
    threads: usize,
    seed: u64,
) -> Result<AblationReport> {
    if trials == 0 {
        return Err(HarnessError::usage("trials must be at least 1"));
    }
    let csr = CsrGraph::from_sorted_arcs(graph.n, &graph.arcs)?;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for config in ApiConfig::ALL {
        let opts = RunOptions {
            algorithm,
            container: ContainerKind::Csr,
            config,
            trials,
            threads,
            seed,
        };
        let report = timed(&csr, graph, &opts)?;
        rows.push(AblationRow {
            config,
            mean_seconds: report.mean_seconds(),
            slowdown: 0.0,
            digest: report.digest,
        });
        records.extend(report.records);
    }
    let full = rows
        .iter()
        .find(|r| r.config == ApiConfig::Full)
        .map(|r| r.mean_seconds)
        .expect("full configuration is always swept");
    for row in &mut rows {
        row.slowdown = row.mean_seconds / full;
    }
    Ok(AblationReport { records, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpdateOptions {
    pub container: ContainerKind,
    pub batch_sizes: Vec<usize>,
    /// Insert/delete repetitions per batch size.
    pub repetitions: usize,
    pub threads: usize,
    pub seed: u64,
}

impl Default for UpdateOptions {
    fn default() -> Self {
        UpdateOptions {
            container: ContainerKind::SortedVec,
            batch_sizes: vec![10, 100, 1_000, 10_000, 100_000, 1_000_000],
            repetitions: 3,
            threads: 0,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpdateReport {
    /// Alternating insert and delete records.
    pub records: Vec<BenchRecord>,
    /// Whether the container held exactly the base graph afterwards.
    pub restored: bool,
}

impl UpdateReport {
    /// `(batch size, mean insert arcs/s, mean delete arcs/s)` per size, where
    /// a batch of size `s` carries `2s` directed arcs.
    pub fn throughput(&self) -> Vec<(usize, f64, f64)> {
        let mut sizes: Vec<usize> = Vec::new();
        for r in &self.records {
            let size = parse_size(&r.workload);
            if !sizes.contains(&size) {
                sizes.push(size);
            }
        }
        sizes
            .into_iter()
            .map(|size| {
                let rate = |op: &str| {
                    let times: Vec<f64> = self
                        .records
                        .iter()
                        .filter(|r| r.workload == format!("{op}:{size}"))
                        .map(|r| r.seconds)
                        .collect();
                    size as f64 / (times.iter().sum::<f64>() / times.len() as f64)
                };
                (size, rate("insert"), rate("delete"))
            })
            .collect()
    }
}

fn parse_size(workload: &str) -> usize {
    workload.split_once(':').and_then(|(_, s)| s.parse().ok()).unwrap_or(0)
}

/// Times inserting and then deleting RMAT batches of each size. Arcs of a
/// batch that were already in the base graph are put back, untimed, after
/// each delete.
pub fn run_updates(graph: &LoadedGraph, opts: &UpdateOptions) -> Result<UpdateReport> {
    if opts.batch_sizes.is_empty() || opts.batch_sizes.contains(&0) {
        return Err(HarnessError::usage("batch sizes must be positive"));
    }
    if opts.repetitions == 0 {
        return Err(HarnessError::usage("repetitions must be at least 1"));
    }
    let threads = resolve_threads(opts.threads);
    let mut g = opts.container.build(graph.n, &graph.arcs)?;
    let form = g.preferred_form();
    let params = RmatParams::default();
    par::with_threads(threads, || {
        let mut records = Vec::new();
        for &size in &opts.batch_sizes {
            for rep in 0..opts.repetitions {
                let batch_seed = mix(opts.seed, size as u64, rep as u64);
                let batch = generate_update_batch(&params, graph.n, size, batch_seed)?;
                let digest = batch_digest(&batch);
                let record = |op: &str, seconds: f64| BenchRecord {
                    container: opts.container.name().to_string(),
                    workload: format!("{op}:{size}"),
                    graph: graph.name.clone(),
                    config: form.name().to_string(),
                    trial: rep,
                    threads,
                    seed: opts.seed,
                    seconds: seconds.max(1e-9),
                    digest,
                };

                let start = Instant::now();
                let prepared = prepare(&batch, form);
                apply_insert(&mut g, &prepared)?;
                records.push(record("insert", start.elapsed().as_secs_f64()));

                let start = Instant::now();
                let prepared = prepare(&batch, form);
                apply_delete(&mut g, &prepared)?;
                records.push(record("delete", start.elapsed().as_secs_f64()));

                let existing: EdgeBatch = prepared
                    .arcs()
                    .iter()
                    .copied()
                    .filter(|e| graph.arcs.binary_search(e).is_ok())
                    .collect();
                if !existing.is_empty() {
                    apply_insert(&mut g, &prepare(&existing, form))?;
                }
            }
        }
        let restored = CsrGraph::from_container(&g).arcs() == graph.arcs;
        Ok(UpdateReport { records, restored })
    })
}

fn mix(seed: u64, size: u64, rep: u64) -> u64 {
    let mut h = Fnv64::new();
    h.write_u64(seed);
    h.write_u64(size);
    h.write_u64(rep);
    h.finish()
}

fn batch_digest(batch: &EdgeBatch) -> u64 {
    let mut h = Fnv64::new();
    for e in &batch.updates {
        h.write_u32(e.src);
        h.write_u32(e.dst);
    }
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub records: Vec<VerifyRecord>,
    /// Human-readable description of each failed check.
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks every algorithm on every registered container under every API
/// configuration against CSR with the full API, at one thread.
pub fn verify(graph: &LoadedGraph, seed: u64) -> Result<VerifyReport> {
    let built = ContainerKind::ALL
        .iter()
        .map(|k| Ok((k.name(), k.build(graph.n, &graph.arcs)?)))
        .collect::<Result<Vec<_>>>()?;
    let containers: Vec<(&str, &dyn GraphContainer)> = built.iter().map(|(name, g)| (*name, &**g)).collect();
    verify_with(graph, seed, &containers)
}

/// [`verify`] over an explicit set of named containers, each expected to
/// hold `graph`.
pub fn verify_with(graph: &LoadedGraph, seed: u64, containers: &[(&str, &dyn GraphContainer)]) -> Result<VerifyReport> {
    let params = algo_params(seed);
    let reference_graph = CsrGraph::from_sorted_arcs(graph.n, &graph.arcs)?;
    par::with_threads(1, || {
        let mut records = Vec::new();
        let mut mismatches = Vec::new();
        for algorithm in Algorithm::ALL {
            let reference = algorithms::run(algorithm, &reference_graph, &params)?;
            for &(name, g) in containers {
                for config in ApiConfig::ALL {
                    let outcome = algorithms::run(algorithm, &Masked::with_config(g, config), &params);
                    let (digest, ok, problem) = judge(&reference, outcome);
                    if let Some(problem) = problem {
                        mismatches.push(format!("{algorithm} on {name} with {config}: {problem}"));
                    }
                    records.push(VerifyRecord {
                        container: name.to_string(),
                        algorithm: algorithm.name().to_string(),
                        graph: graph.name.clone(),
                        config: config.name().to_string(),
                        digest,
                        ok,
                    });
                }
            }
        }
        Ok(VerifyReport { records, mismatches })
    })
}

fn judge(reference: &AlgoOutput, outcome: gcbench::Result<AlgoOutput>) -> (u64, bool, Option<String>) {
    match outcome {
        Ok(out) if out.matches(reference) => (out.digest(), true, None),
        Ok(out) => (
            out.digest(),
            false,
            Some(format!("digest {:016x}, expected {:016x}", out.digest(), reference.digest())),
        ),
        Err(e) => (0, false, Some(format!("failed: {e}"))),
    }
}
