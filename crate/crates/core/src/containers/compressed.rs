//! Byte-coded CSR.
//!
//! Each neighbor list is difference encoded: the first neighbor relative to
//! the source vertex (zigzag-mapped, since it may be smaller), then the gaps
//! between consecutive neighbors. Every value is written as a little-endian
//! base-128 varint whose high bit marks continuation.

use crate::api::{Capabilities, GraphContainer};
use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;

use super::CsrGraph;

#[inline]
fn zigzag(x: i64) -> u64 {
    ((x << 1) ^ (x >> 63)) as u64
}

#[inline]
fn unzigzag(x: u64) -> i64 {
    (x >> 1) as i64 ^ -((x & 1) as i64)
}

#[inline]
fn put_varint(out: &mut Vec<u8>, mut x: u64) {
    while x >= 0x80 {
        out.push((x as u8) | 0x80);
        x >>= 7;
    }
    out.push(x as u8);
}

/// Reads one varint at `*pos`. `None` on truncation or overflow.
#[inline]
fn get_varint(bytes: &[u8], pos: &mut usize) -> Option<u64> {
    let mut value = 0u64;
    let mut shift = 0u32;
    loop {
        let byte = *bytes.get(*pos)?;
        *pos += 1;
        if shift >= 64 || (shift == 63 && byte > 1) {
            return None;
        }
        value |= u64::from(byte & 0x7f) << shift;
        if byte & 0x80 == 0 {
            return Some(value);
        }
        shift += 7;
    }
}

/// Appends the encoding of `neighbors` (strictly increasing) to `out`.
pub fn encode_into(source: VertexId, neighbors: &[VertexId], out: &mut Vec<u8>) {
    let Some((&first, rest)) = neighbors.split_first() else { return };
    put_varint(out, zigzag(i64::from(first) - i64::from(source)));
    let mut prev = first;
    for &v in rest {
        debug_assert!(v > prev, "neighbors must be strictly increasing");
        put_varint(out, u64::from(v - prev));
        prev = v;
    }
}

pub fn bytecode_encode(source: VertexId, neighbors: &[VertexId]) -> Vec<u8> {
    let mut out = Vec::with_capacity(neighbors.len() * 2);
    encode_into(source, neighbors, &mut out);
    out
}

/// Decodes a whole segment.
pub fn bytecode_decode(source: VertexId, bytes: &[u8]) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut pos = 0;
    let mut prev: Option<i64> = None;
    while pos < bytes.len() {
        let raw = get_varint(bytes, &mut pos)
            .ok_or_else(|| GraphError::Decode(format!("truncated or overlong varint at byte {pos}")))?;
        let value = match prev {
            None => i64::from(source) + unzigzag(raw),
            Some(p) => {
                if raw == 0 {
                    return Err(GraphError::Decode(format!("zero gap at byte {pos}")));
                }
                p.checked_add(i64::try_from(raw).map_err(|_| GraphError::Decode("gap overflow".into()))?)
                    .ok_or_else(|| GraphError::Decode("gap overflow".into()))?
            }
        };
        if !(0..=i64::from(VertexId::MAX)).contains(&value) {
            return Err(GraphError::Decode(format!("decoded id {value} out of range")));
        }
        out.push(value as VertexId);
        prev = Some(value);
    }
    Ok(out)
}

/// Iterates a segment produced by [`encode_into`]; the stream is trusted.
struct SegmentIter<'a> {
    bytes: &'a [u8],
    pos: usize,
    remaining: u32,
    prev: i64,
    first: bool,
}

impl Iterator for SegmentIter<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let raw = get_varint(self.bytes, &mut self.pos).expect("corrupt compressed segment");
        self.prev = if self.first {
            self.first = false;
            self.prev + unzigzag(raw)
        } else {
            self.prev + raw as i64
        };
        Some(self.prev as VertexId)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedCsrGraph {
    /// Byte position of each vertex's segment; `n + 1` entries.
    offsets: Vec<u64>,
    degrees: Vec<u32>,
    bytes: Vec<u8>,
}

impl CompressedCsrGraph {
    pub fn from_csr(csr: &CsrGraph) -> Self {
        let n = csr.num_vertices();
        let segments: Vec<Vec<u8>> = par::map_range(n, |v| bytecode_encode(v as VertexId, csr.neighbors_of(v as VertexId)));
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut total = 0u64;
        for seg in &segments {
            total += seg.len() as u64;
            offsets.push(total);
        }
        CompressedCsrGraph {
            offsets,
            degrees: (0..n).map(|v| csr.neighbors_of(v as VertexId).len() as u32).collect(),
            bytes: segments.concat(),
        }
    }

    pub fn segment(&self, v: VertexId) -> &[u8] {
        let v = v as usize;
        &self.bytes[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn decode(&self, v: VertexId) -> Result<Vec<VertexId>> {
        bytecode_decode(v, self.segment(v))
    }

    #[inline]
    fn iter(&self, v: VertexId) -> SegmentIter<'_> {
        SegmentIter {
            bytes: self.segment(v),
            pos: 0,
            remaining: self.degrees[v as usize],
            prev: i64::from(v),
            first: true,
        }
    }
}

impl GraphContainer for CompressedCsrGraph {
    fn num_vertices(&self) -> usize {
        self.degrees.len()
    }

    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        self.iter(v).for_each(f)
    }

    /// Segments decode sequentially, so there is no parallel map.
    fn capabilities(&self) -> Capabilities {
        Capabilities {
            parallel_map: false,
            parallel_map_early_exit: false,
            batch_updates: false,
            ..Capabilities::FULL
        }
    }

    fn name(&self) -> &'static str {
        "compressed-csr"
    }

    fn num_edges(&self) -> Option<usize> {
        Some(self.degrees.iter().map(|&d| d as usize).sum())
    }

    fn degree(&self, v: VertexId) -> Option<usize> {
        Some(self.degrees[v as usize] as usize)
    }

    fn map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        Some(self.iter(v).any(f))
    }

    fn memory_bytes(&self) -> Option<usize> {
        Some(self.offsets.len() * 8 + self.degrees.len() * 4 + self.bytes.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::t4_arcs;

    #[test]
    fn encode_examples() {
        assert_eq!(bytecode_encode(6, &[5, 7, 10]), vec![0x01, 0x02, 0x03]);
        assert_eq!(bytecode_encode(0, &[200]), vec![0x90, 0x03]);
        assert!(bytecode_encode(3, &[]).is_empty());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(bytecode_decode(6, &[0x01, 0x02, 0x03]).unwrap(), vec![5, 7, 10]);
        assert_eq!(bytecode_decode(0, &[]).unwrap(), Vec::<VertexId>::new());
        assert_eq!(bytecode_decode(0, &[0x90, 0x03]).unwrap(), vec![200]);
    }

    #[test]
    fn truncated_stream_is_an_error() {
        assert!(matches!(bytecode_decode(0, &[0x90]), Err(GraphError::Decode(_))));
        assert!(bytecode_decode(0, &[0xff; 11]).is_err());
    }

    #[test]
    fn zigzag_round_trip() {
        for x in [0i64, 1, -1, 63, -64, 1 << 40, -(1 << 40), i64::MAX, i64::MIN] {
            assert_eq!(unzigzag(zigzag(x)), x);
        }
        assert_eq!(zigzag(-1), 1);
        assert_eq!(zigzag(200), 400);
    }

    #[test]
    fn matches_csr() {
        let csr = CsrGraph::from_sorted_arcs(4, &t4_arcs()).unwrap();
        let c = CompressedCsrGraph::from_csr(&csr);
        for v in 0..4 {
            assert_eq!(c.decode(v).unwrap(), csr.neighbors_of(v));
            let mut seen = Vec::new();
            c.map_neighbors(v, &mut |u| seen.push(u));
            assert_eq!(seen, csr.neighbors_of(v));
        }
        assert_eq!(c.num_edges(), Some(8));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip(source in any::<u32>(), raw in proptest::collection::btree_set(any::<u32>(), 0..64)) {
                let list: Vec<u32> = raw.into_iter().collect();
                let bytes = bytecode_encode(source, &list);
                prop_assert_eq!(bytecode_decode(source, &bytes).unwrap(), list);
            }
        }
    }
}
