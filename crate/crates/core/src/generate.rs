//! Seeded synthetic graph generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GraphError, Result};
use crate::model::{symmetrize, Edge, VertexId};
use crate::par;

/// Arcs drawn per independent random stream; fixed so output does not
/// depend on the thread count.
const RMAT_CHUNK: usize = 1 << 14;

/// Quadrant probabilities for recursive-matrix sampling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RmatParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for RmatParams {
    fn default() -> Self {
        RmatParams {
            a: 0.5,
            b: 0.1,
            c: 0.1,
            d: 0.3,
        }
    }
}

impl RmatParams {
    pub fn validate(&self) -> Result<()> {
        let parts = [self.a, self.b, self.c, self.d];
        if parts.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(GraphError::InvalidParameter(format!("RMAT probabilities out of range: {self:?}")));
        }
        let total: f64 = parts.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(GraphError::InvalidParameter(format!("RMAT probabilities sum to {total}, not 1")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeneratorParams {
    Rmat {
        params: RmatParams,
        log2_n: u32,
        arcs: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
}

impl GeneratorParams {
    pub fn num_vertices(&self) -> usize {
        match *self {
            GeneratorParams::Rmat { log2_n, .. } => 1usize << log2_n,
            GeneratorParams::ErdosRenyi { n, .. } => n,
        }
    }
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples one vertex pair by recursive quadrant descent over a
/// `2^log2_n x 2^log2_n` adjacency matrix.
fn rmat_pair(rng: &mut impl Rng, params: &RmatParams, log2_n: u32) -> Edge {
    let (mut src, mut dst) = (0u32, 0u32);
    let ab = params.a + params.b;
    let abc = ab + params.c;
    for level in (0..log2_n).rev() {
        let r: f64 = rng.random();
        let bit = 1u32 << level;
        if r < params.a {
        } else if r < ab {
            dst |= bit;
        } else if r < abc {
            src |= bit;
        } else {
            src |= bit;
            dst |= bit;
        }
    }
    Edge::new(src, dst)
}

/// `count` directed arcs, duplicates and self-loops included.
pub fn rmat_arcs(params: &RmatParams, log2_n: u32, count: usize, seed: u64) -> Result<Vec<Edge>> {
    params.validate()?;
    if log2_n > 31 {
        return Err(GraphError::InvalidParameter(format!("log2_n = {log2_n} exceeds 31")));
    }
    let chunks = count.div_ceil(RMAT_CHUNK);
    let parts = par::map_range(chunks, |chunk| {
        let mut rng = stream_rng(seed, chunk as u64);
        let len = RMAT_CHUNK.min(count - chunk * RMAT_CHUNK);
        (0..len).map(|_| rmat_pair(&mut rng, params, log2_n)).collect::<Vec<_>>()
    });
    Ok(parts.concat())
}

/// Each unordered pair `{i, j}` is an edge with probability `p`. Returns the
/// symmetrized, sorted arc list.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Vec<Edge>> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GraphError::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    if n > VertexId::MAX as usize {
        return Err(GraphError::InvalidParameter(format!("{n} vertices exceed the id space")));
    }
    if p == 0.0 || n < 2 {
        return Ok(Vec::new());
    }
    let log_q = (1.0 - p).ln();
    let rows = par::map_range(n, |i| {
        let mut out = Vec::new();
        let mut j = i + 1;
        if p >= 1.0 {
            out.extend((j..n).map(|j| Edge::new(i as VertexId, j as VertexId)));
            return out;
        }
        let mut rng = stream_rng(seed, i as u64);
        loop {
            // Geometric skip over pairs that are not drawn.
            let u: f64 = 1.0 - rng.random::<f64>();
            let skip = (u.ln() / log_q).floor();
            if !skip.is_finite() || skip >= (n - j) as f64 {
                break;
            }
            j += skip as usize;
            out.push(Edge::new(i as VertexId, j as VertexId));
            j += 1;
            if j >= n {
                break;
            }
        }
        out
    });
    Ok(symmetrize(rows.into_iter().flatten()))
}

/// Returns `(n, arcs)` with arcs symmetrized, deduplicated and loop-free.
pub fn generate(params: &GeneratorParams, seed: u64) -> Result<(usize, Vec<Edge>)> {
    match *params {
        GeneratorParams::Rmat {
            params,
            log2_n,
            arcs,
        } => {
            let raw = rmat_arcs(&params, log2_n, arcs, seed)?;
            Ok((1usize << log2_n, symmetrize(raw)))
        }
        GeneratorParams::ErdosRenyi { n, p } => Ok((n, erdos_renyi(n, p, seed)?)),
    }
}
