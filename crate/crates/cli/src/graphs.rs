//! Graph arguments: `t4`, `er:n=<n>,p=<p>`, `rmat:log2n=<k>,arcs=<m>[,a=..,b=..,c=..,d=..]`,
//! or a path to an edge list or `GBCSR1` file.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gcbench::generate::{generate, GeneratorParams, RmatParams};
use gcbench::io::{load_binary, load_edge_list, MAGIC};
use gcbench::model::{t4_arcs, Edge};
use gcbench::GraphContainer;

use crate::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    T4,
    Generated(GeneratorParams),
    File(PathBuf),
}

/// A graph ready to be built into any container.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    /// Label used in reports.
    pub name: String,
    pub n: usize,
    /// Symmetric, sorted, duplicate- and loop-free arcs.
    pub arcs: Vec<Edge>,
}

impl FromStr for GraphSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "t4" {
            return Ok(GraphSpec::T4);
        }
        let Some((kind, args)) = s.split_once(':') else {
            return Ok(GraphSpec::File(PathBuf::from(s)));
        };
        let mut fields = Vec::new();
        for pair in args.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| HarnessError::usage(format!("expected key=value in graph spec, got {pair:?}")))?;
            fields.push((key, value));
        }
        let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let number = |key: &str| -> Result<Option<f64>> {
            get(key)
                .map(|v| v.parse::<f64>().map_err(|_| HarnessError::usage(format!("bad value for {key}: {v:?}"))))
                .transpose()
        };
        let required = |key: &str| -> Result<f64> {
            number(key)?.ok_or_else(|| HarnessError::usage(format!("graph spec {s:?} is missing {key}")))
        };
        let known: &[&str] = match kind {
            "er" => &["n", "p"],
            "rmat" => &["log2n", "arcs", "a", "b", "c", "d"],
            // Windows-style paths such as C:\graph.txt.
            _ => return Ok(GraphSpec::File(PathBuf::from(s))),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !known.contains(k)) {
            return Err(HarnessError::usage(format!("unknown key {k:?} for {kind} graphs")));
        }
        let params = match kind {
            "er" => GeneratorParams::ErdosRenyi {
                n: required("n")? as usize,
                p: required("p")?,
            },
            _ => {
                let d = RmatParams::default();
                GeneratorParams::Rmat {
                    params: RmatParams {
                        a: number("a")?.unwrap_or(d.a),
                        b: number("b")?.unwrap_or(d.b),
                        c: number("c")?.unwrap_or(d.c),
                        d: number("d")?.unwrap_or(d.d),
                    },
                    log2_n: required("log2n")? as u32,
                    arcs: required("arcs")? as usize,
                }
            }
        };
        Ok(GraphSpec::Generated(params))
    }
}

/// Builds or reads the graph named by `spec`. `seed` only affects generated
/// graphs.
pub fn load_graph(spec: &str, seed: u64) -> Result<LoadedGraph> {
    let (n, arcs) = match spec.parse::<GraphSpec>()? {
        GraphSpec::T4 => (4, t4_arcs()),
        GraphSpec::Generated(params) => generate(&params, seed)?,
        GraphSpec::File(path) => read_graph_file(&path)?,
    };
    Ok(LoadedGraph {
        name: spec.to_string(),
        n,
        arcs,
    })
}

/// Reads `GBCSR1` files (detected by magic) or text edge lists.
pub fn read_graph_file(path: &Path) -> Result<(usize, Vec<Edge>)> {
    if is_binary(path)? {
        let g = load_binary(path)?;
        Ok((g.num_vertices(), g.arcs()))
    } else {
        Ok(load_edge_list(path)?)
    }
}

pub fn is_binary(path: &Path) -> Result<bool> {
    let mut head = [0u8; 8];
    let mut f = File::open(path)?;
    let mut read = 0;
    while read < head.len() {
        match f.read(&mut head[read..])? {
            0 => break,
            k => read += k,
        }
    }
    Ok(read == head.len() && head == MAGIC)
}
