//! TSV records.

use std::fmt;
use std::io::{self, Write};

pub const TSV_HEADER: &str = "container\tworkload\tgraph\tconfig\ttrial\tthreads\tseed\tseconds\tdigest";

pub const VERIFY_HEADER: &str = "container\talgorithm\tgraph\tconfig\tdigest\tstatus";

/// One timed trial.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub container: String,
    /// Algorithm name, or `insert:<size>` / `delete:<size>` for updates.
    pub workload: String,
    pub graph: String,
    /// API configuration, or batch form for updates.
    pub config: String,
    pub trial: usize,
    pub threads: usize,
    pub seed: u64,
    pub seconds: f64,
    pub digest: u64,
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.9}\t{:016x}",
            self.container,
            self.workload,
            self.graph,
            self.config,
            self.trial,
            self.threads,
            self.seed,
            self.seconds,
            self.digest
        )
    }
}

/// One verification check against the CSR full-API reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRecord {
    pub container: String,
    pub algorithm: String,
    pub graph: String,
    pub config: String,
    pub digest: u64,
    pub ok: bool,
}

impl fmt::Display for VerifyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{:016x}\t{}",
            self.container,
            self.algorithm,
            self.graph,
            self.config,
            self.digest,
            if self.ok { "ok" } else { "MISMATCH" }
        )
    }
}

pub fn write_tsv<W: Write, R: fmt::Display>(mut w: W, header: &str, records: &[R]) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for r in records {
        writeln!(w, "{r}")?;
    }
    w.flush()
}
