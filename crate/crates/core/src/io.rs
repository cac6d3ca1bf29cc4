//! Edge-list text input and the `GBCSR1` binary CSR format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::containers::CsrGraph;
use crate::error::{GraphError, Result};
use crate::model::{symmetrize, Edge, VertexId};

pub const MAGIC: [u8; 8] = *b"GBCSR1\0\0";

/// Parses `u v` pairs, one per line. Blank lines and lines starting with `#`
/// are skipped. Returns `n = 1 + max id` and the symmetrized, deduplicated,
/// loop-free arcs in sorted order.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(usize, Vec<Edge>)> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| GraphError::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let mut id = || -> Result<VertexId> {
            let field = fields.next().ok_or_else(|| parse_err("expected two vertex ids".into()))?;
            field
                .parse::<VertexId>()
                .map_err(|e| parse_err(format!("bad vertex id {field:?}: {e}")))
        };
        let (u, v) = (id()?, id()?);
        if u == VertexId::MAX || v == VertexId::MAX {
            return Err(parse_err(format!("vertex id {} is reserved", VertexId::MAX)));
        }
        n = n.max(u.max(v) as usize + 1);
        edges.push(Edge::new(u, v));
    }
    Ok((n, symmetrize(edges)))
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<(usize, Vec<Edge>)> {
    parse_edge_list(BufReader::new(File::open(path)?))
}

pub fn write_binary<W: Write>(g: &CsrGraph, mut w: W) -> Result<()> {
    let n = g.offsets().len() - 1;
    w.write_all(&MAGIC)?;
    w.write_all(&(n as u64).to_le_bytes())?;
    w.write_all(&(g.neighbor_array().len() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        w.write_all(&o.to_le_bytes())?;
    }
    for &v in g.neighbor_array() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<CsrGraph> {
    let mut magic = [0u8; 8];
    read_exact(&mut r, &mut magic, "magic")?;
    if magic != MAGIC {
        return Err(GraphError::Format(format!("bad magic {magic:?}")));
    }
    let n = read_u64(&mut r, "vertex count")?;
    let m = read_u64(&mut r, "arc count")?;
    if n > VertexId::MAX as u64 {
        return Err(GraphError::Format(format!("{n} vertices exceed the 32-bit id space")));
    }
    let mut offsets = Vec::with_capacity(n as usize + 1);
    for _ in 0..=n {
        offsets.push(read_u64(&mut r, "offsets")?);
    }
    let mut neighbors = Vec::with_capacity(m.min(1 << 28) as usize);
    let mut buf = [0u8; 4];
    for _ in 0..m {
        read_exact(&mut r, &mut buf, "neighbor ids")?;
        neighbors.push(u32::from_le_bytes(buf));
    }
    if r.read(&mut buf)? != 0 {
        return Err(GraphError::Format("trailing bytes after neighbor ids".into()));
    }
    CsrGraph::from_parts(offsets, neighbors)
}

pub fn save_binary(g: &CsrGraph, path: impl AsRef<Path>) -> Result<()> {
    write_binary(g, BufWriter::new(File::create(path)?))
}

pub fn load_binary(path: impl AsRef<Path>) -> Result<CsrGraph> {
    read_binary(BufReader::new(File::open(path)?))
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => GraphError::Format(format!("truncated file while reading {what}")),
        _ => GraphError::Io(e),
    })
}

fn read_u64<R: Read>(r: &mut R, what: &str) -> Result<u64> {
    let mut buf = [0u8; 8];
    read_exact(r, &mut buf, what)?;
    Ok(u64::from_le_bytes(buf))
}
