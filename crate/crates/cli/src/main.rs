use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gcbench::algorithms::Algorithm;
use gcbench::api::ApiConfig;
use gcbench::containers::{ContainerKind, CsrGraph};
use gcbench::io::save_binary;
use gcbench_cli::graphs::{is_binary, read_graph_file};
use gcbench_cli::harness::UpdateOptions;
use gcbench_cli::report::write_tsv;
use gcbench_cli::{
    load_graph, run, run_ablation, run_updates, verify, HarnessError, RunOptions, TSV_HEADER, VERIFY_HEADER,
};

#[derive(Parser)]
#[command(name = "gcbench", version, about = "Benchmark graph containers under a shared algorithm suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// `t4`, `er:n=N,p=P`, `rmat:log2n=K,arcs=M[,a=..,b=..,c=..,d=..]`, or a file path.
    #[arg(long, default_value = "t4")]
    graph: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 0 uses every hardware thread.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// TSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list, or as GBCSR1 when OUT ends in `.bin`.
    Generate {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert between edge-list text and GBCSR1 binary (direction from the input's format).
    Convert { input: PathBuf, output: PathBuf },
    /// Time one algorithm on one container.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long, default_value = "csr")]
        container: ContainerKind,
        #[arg(long, default_value = "full")]
        config: ApiConfig,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Time one algorithm on CSR under every API configuration.
    Ablation {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Measure batch insert and delete throughput on a dynamic container.
    Updates {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "sorted-vec")]
        container: ContainerKind,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000,100000,1000000")]
        batch_sizes: Vec<usize>,
    },
    /// Compare every algorithm, container and API configuration against CSR.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(code) => code,
        Err(HarnessError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Generate { graph, seed, out } => {
            let g = load_graph(&graph, seed)?;
            write_graph(&g.arcs, g.n, &out)?;
        }
        Command::Convert { input, output } => {
            let (n, arcs) = read_graph_file(&input)?;
            if is_binary(&input)? {
                write_edge_list(&arcs, &output)?;
            } else {
                save_binary(&CsrGraph::from_sorted_arcs(n, &arcs)?, &output)?;
            }
        }
        Command::Run {
            common,
            algorithm,
            container,
            config,
            trials,
        } => {
            let g = load_graph(&common.graph, common.seed)?;
            let opts = RunOptions {
                algorithm,
                container,
                config,
                trials,
                threads: common.threads,
                seed: common.seed,
            };
            let report = run(&g, &opts)?;
            emit(common.out.as_deref(), TSV_HEADER, &report.records)?;
        }
        Command::Ablation {
            common,
            algorithm,
            trials,
        } => {
            let g = load_graph(&common.graph, common.seed)?;
            let report = run_ablation(&g, algorithm, trials, common.threads, common.seed)?;
            emit(common.out.as_deref(), TSV_HEADER, &report.records)?;
            if common.out.is_some() {
                println!("config\tmean_seconds\tslowdown\tdigest");
                for row in &report.rows {
                    println!("{}\t{:.6}\t{:.3}\t{:016x}", row.config, row.mean_seconds, row.slowdown, row.digest);
                }
            }
        }
        Command::Updates {
            common,
            container,
            batch_sizes,
        } => {
            let g = load_graph(&common.graph, common.seed)?;
            let opts = UpdateOptions {
                container,
                batch_sizes,
                threads: common.threads,
                seed: common.seed,
                ..UpdateOptions::default()
            };
            let report = run_updates(&g, &opts)?;
            emit(common.out.as_deref(), TSV_HEADER, &report.records)?;
            if common.out.is_some() {
                println!("batch_size\tinserts_per_second\tdeletes_per_second");
                for (size, ins, del) in report.throughput() {
                    println!("{size}\t{ins:.0}\t{del:.0}");
                }
            }
            if !report.restored {
                eprintln!("error: container no longer matches the base graph");
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify { common } => {
            let g = load_graph(&common.graph, common.seed)?;
            let report = verify(&g, common.seed)?;
            emit(common.out.as_deref(), VERIFY_HEADER, &report.records)?;
            for m in &report.mismatches {
                eprintln!("mismatch: {m}");
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit<R: std::fmt::Display>(out: Option<&Path>, header: &str, records: &[R]) -> io::Result<()> {
    match out {
        Some(path) => write_tsv(BufWriter::new(File::create(path)?), header, records),
        None => write_tsv(io::stdout().lock(), header, records),
    }
}

fn write_graph(arcs: &[gcbench::Edge], n: usize, out: &Path) -> Result<(), HarnessError> {
    if out.extension().is_some_and(|e| e == "bin") {
        save_binary(&CsrGraph::from_sorted_arcs(n, arcs)?, out)?;
        Ok(())
    } else {
        write_edge_list(arcs, out)
    }
}

/// One line per undirected edge, smaller id first.
fn write_edge_list(arcs: &[gcbench::Edge], out: &Path) -> Result<(), HarnessError> {
    let mut w = BufWriter::new(File::create(out)?);
    for e in arcs.iter().filter(|e| e.src < e.dst) {
        writeln!(w, "{} {}", e.src, e.dst)?;
    }
    w.flush()?;
    Ok(())
}
