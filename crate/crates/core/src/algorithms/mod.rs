//! The ten benchmark problems, written only against [`GraphContainer`] and
//! the traversal primitives.
//!
//! Every algorithm produces the same canonical output on every container and
//! capability mask. Randomized algorithms draw from seeded counter-based
//! streams, and floating-point sums go through fixed-point accumulators, so
//! results also do not depend on the thread count.

mod ads;
mod bc;
mod bfs;
pub mod buckets;
mod cc;
mod coloring;
mod kcore;
mod ldd;
mod mis;
mod pagerank;
mod spanner;

use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;

pub use ads::{ads, DenseSubgraph};
pub use bc::{bc, BcResult};
pub use bfs::{bfs, BfsResult, UNREACHED};
pub use buckets::Buckets;
pub use cc::cc;
pub use coloring::{coloring, UNCOLORED};
pub use kcore::kcore;
pub use ldd::{decompose, ldd, start_rounds, Decomposition};
pub use mis::{mis, priorities as mis_priorities};
pub use pagerank::{pagerank, PageRankParams, PageRankResult};
pub use spanner::spanner;

use crate::api::GraphContainer;
use crate::digest::Fnv64;
use crate::error::{GraphError, Result};
use crate::model::{Edge, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Bfs,
    Bc,
    Spanner,
    Ldd,
    Cc,
    Ads,
    KCore,
    Coloring,
    Mis,
    PageRank,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Bfs,
        Algorithm::Bc,
        Algorithm::Spanner,
        Algorithm::Ldd,
        Algorithm::Cc,
        Algorithm::Ads,
        Algorithm::KCore,
        Algorithm::Coloring,
        Algorithm::Mis,
        Algorithm::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Bc => "bc",
            Algorithm::Spanner => "spanner",
            Algorithm::Ldd => "ldd",
            Algorithm::Cc => "cc",
            Algorithm::Ads => "ads",
            Algorithm::KCore => "kcore",
            Algorithm::Coloring => "coloring",
            Algorithm::Mis => "mis",
            Algorithm::PageRank => "pagerank",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            GraphError::Config(format!("unknown algorithm {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgoParams {
    /// BFS and BC source.
    pub source: VertexId,
    /// Spanner stretch parameter.
    pub k: u32,
    /// LDD decomposition parameter in `(0, 1]`.
    pub beta: f64,
    /// ADS approximation slack.
    pub epsilon: f64,
    pub pagerank: PageRankParams,
    /// Drives LDD, spanner and MIS randomness.
    pub seed: u64,
}

impl Default for AlgoParams {
    fn default() -> Self {
        AlgoParams {
            source: 0,
            k: 4,
            beta: 0.2,
            epsilon: 0.001,
            pagerank: PageRankParams::default(),
            seed: 1,
        }
    }
}

/// Output of one algorithm run.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgoOutput {
    Bfs(BfsResult),
    Bc(BcResult),
    Spanner(Vec<Edge>),
    Ldd(Vec<VertexId>),
    Cc(Vec<VertexId>),
    Ads(DenseSubgraph),
    KCore(Vec<u32>),
    Coloring(Vec<u32>),
    Mis(Vec<bool>),
    PageRank(PageRankResult),
}

/// Largest L1 gap at which two PageRank vectors count as equal.
pub const PAGERANK_TOLERANCE: f64 = 1e-7;
/// Largest per-vertex gap at which two BC vectors count as equal.
pub const BC_TOLERANCE: f64 = 1e-9;

impl AlgoOutput {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgoOutput::Bfs(_) => Algorithm::Bfs,
            AlgoOutput::Bc(_) => Algorithm::Bc,
            AlgoOutput::Spanner(_) => Algorithm::Spanner,
            AlgoOutput::Ldd(_) => Algorithm::Ldd,
            AlgoOutput::Cc(_) => Algorithm::Cc,
            AlgoOutput::Ads(_) => Algorithm::Ads,
            AlgoOutput::KCore(_) => Algorithm::KCore,
            AlgoOutput::Coloring(_) => Algorithm::Coloring,
            AlgoOutput::Mis(_) => Algorithm::Mis,
            AlgoOutput::PageRank(_) => Algorithm::PageRank,
        }
    }

    /// Stable hash of the canonical output. BFS parents are excluded since
    /// ties between equally close parents are broken by scheduling; floating
    /// values are rounded to 1e-9.
    pub fn digest(&self) -> u64 {
        let mut h = Fnv64::new();
        h.write_tag(self.algorithm().name());
        match self {
            AlgoOutput::Bfs(r) => h.write_u32_slice(&r.distances),
            AlgoOutput::Bc(r) => {
                r.sigma.iter().for_each(|&x| h.write_f64_rounded(x));
                r.dependencies.iter().for_each(|&x| h.write_f64_rounded(x));
            }
            AlgoOutput::Spanner(arcs) => {
                h.write_u64(arcs.len() as u64);
                for e in arcs {
                    h.write_u32(e.src);
                    h.write_u32(e.dst);
                }
            }
            AlgoOutput::Ldd(xs) | AlgoOutput::Cc(xs) | AlgoOutput::KCore(xs) | AlgoOutput::Coloring(xs) => {
                h.write_u32_slice(xs)
            }
            AlgoOutput::Ads(r) => {
                h.write_u32_slice(&r.vertices);
                h.write_f64_rounded(r.density);
            }
            AlgoOutput::Mis(flags) => flags.iter().for_each(|&b| h.write_u8(b as u8)),
            AlgoOutput::PageRank(r) => r.scores.iter().for_each(|&x| h.write_f64_rounded(x)),
        }
        h.finish()
    }

    /// Canonical equality: exact, except PageRank (L1 within
    /// [`PAGERANK_TOLERANCE`]) and BC (within [`BC_TOLERANCE`] per vertex).
    pub fn matches(&self, other: &AlgoOutput) -> bool {
        match (self, other) {
            (AlgoOutput::Bfs(a), AlgoOutput::Bfs(b)) => a.distances == b.distances,
            (AlgoOutput::Bc(a), AlgoOutput::Bc(b)) => {
                close(&a.sigma, &b.sigma, |d| d <= BC_TOLERANCE)
                    && close(&a.dependencies, &b.dependencies, |d| d <= BC_TOLERANCE)
            }
            (AlgoOutput::PageRank(a), AlgoOutput::PageRank(b)) => {
                a.scores.len() == b.scores.len()
                    && a.scores.iter().zip(&b.scores).map(|(x, y)| (x - y).abs()).sum::<f64>() < PAGERANK_TOLERANCE
            }
            (a, b) => a == b,
        }
    }
}

fn close(a: &[f64], b: &[f64], ok: impl Fn(f64) -> bool) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| ok((x - y).abs()))
}

/// Runs `algorithm` on `g`.
pub fn run<G: GraphContainer + ?Sized>(algorithm: Algorithm, g: &G, params: &AlgoParams) -> Result<AlgoOutput> {
    Ok(match algorithm {
        Algorithm::Bfs => AlgoOutput::Bfs(bfs(g, params.source)?),
        Algorithm::Bc => AlgoOutput::Bc(bc(g, params.source)?),
        Algorithm::Spanner => AlgoOutput::Spanner(spanner(g, params.k, params.seed)?),
        Algorithm::Ldd => AlgoOutput::Ldd(ldd(g, params.beta, params.seed)?),
        Algorithm::Cc => AlgoOutput::Cc(cc(g)),
        Algorithm::Ads => AlgoOutput::Ads(ads(g, params.epsilon)?),
        Algorithm::KCore => AlgoOutput::KCore(kcore(g)),
        Algorithm::Coloring => AlgoOutput::Coloring(coloring(g)),
        Algorithm::Mis => AlgoOutput::Mis(mis(g, params.seed)),
        Algorithm::PageRank => AlgoOutput::PageRank(pagerank(g, &params.pagerank)?),
    })
}
