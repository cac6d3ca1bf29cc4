//! Benchmark harness behind the `gcbench` binary: graph loading, timed
//! runs, API ablation sweeps, batch-update throughput and cross-container
//! verification, all reported as TSV.

pub mod graphs;
pub mod harness;
pub mod report;

use gcbench::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad flags or names; the binary exits with status 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        HarnessError::Usage(message.into())
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub use graphs::{load_graph, GraphSpec, LoadedGraph};
pub use harness::{
    run, run_ablation, run_updates, verify, verify_with, AblationReport, AblationRow, RunOptions, RunReport,
    UpdateOptions, VerifyReport,
};
pub use report::{BenchRecord, VerifyRecord, TSV_HEADER, VERIFY_HEADER};
