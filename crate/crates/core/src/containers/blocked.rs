//! Sorted ids kept in fixed-capacity sorted chunks under a sorted directory.
//! A chunk that overflows splits at its midpoint; two neighbors that fit in
//! one chunk after a delete are merged.

use crate::api::NeighborSet;
use crate::batch::BatchForm;
use crate::model::VertexId;
use crate::par;

pub const CHUNK_CAPACITY: usize = 128;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockedSet {
    chunks: Vec<Vec<VertexId>>,
    len: usize,
}

impl BlockedSet {
    pub fn chunks(&self) -> &[Vec<VertexId>] {
        &self.chunks
    }

    /// Index of the chunk that should hold `v`: the last chunk whose first
    /// element is `<= v`, or 0.
    fn chunk_for(&self, v: VertexId) -> usize {
        self.chunks.partition_point(|c| c[0] <= v).saturating_sub(1)
    }

    fn split_if_full(&mut self, idx: usize) {
        if self.chunks[idx].len() > CHUNK_CAPACITY {
            let mid = self.chunks[idx].len() / 2;
            let tail = self.chunks[idx].split_off(mid);
            let mut tail_chunk = Vec::with_capacity(CHUNK_CAPACITY + 1);
            tail_chunk.extend_from_slice(&tail);
            self.chunks.insert(idx + 1, tail_chunk);
        }
    }

    fn merge_around(&mut self, idx: usize) {
        if self.chunks[idx].is_empty() {
            self.chunks.remove(idx);
            return;
        }
        if idx + 1 < self.chunks.len() && self.chunks[idx].len() + self.chunks[idx + 1].len() <= CHUNK_CAPACITY {
            let next = self.chunks.remove(idx + 1);
            self.chunks[idx].extend_from_slice(&next);
        } else if idx > 0 && self.chunks[idx - 1].len() + self.chunks[idx].len() <= CHUNK_CAPACITY {
            let cur = self.chunks.remove(idx);
            self.chunks[idx - 1].extend_from_slice(&cur);
        }
    }

    /// Rebuilds the directory from a sorted sequence, chunks half full.
    fn rebuild(&mut self, items: Vec<VertexId>) {
        self.len = items.len();
        self.chunks = items
            .chunks(CHUNK_CAPACITY / 2)
            .map(|c| {
                let mut chunk = Vec::with_capacity(CHUNK_CAPACITY + 1);
                chunk.extend_from_slice(c);
                chunk
            })
            .collect();
    }

    #[cfg(test)]
    fn check_invariants(&self) {
        let all: Vec<_> = self.iter().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), self.len);
        assert!(self.chunks.iter().all(|c| !c.is_empty() && c.len() <= CHUNK_CAPACITY));
    }
}

pub struct BlockedIter<'a> {
    inner: std::iter::Flatten<std::slice::Iter<'a, Vec<VertexId>>>,
}

impl Iterator for BlockedIter<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        self.inner.next().copied()
    }
}

impl NeighborSet for BlockedSet {
    type Iter<'a> = BlockedIter<'a>;
    const KIND: &'static str = "blocked";
    const INLINE_KIND: &'static str = "blocked-inline";
    const ORDERED: bool = true;
    const HAS_PARALLEL_MAP: bool = true;
    const PREFERRED_FORM: BatchForm = BatchForm::GlobalSort;

    fn iter(&self) -> BlockedIter<'_> {
        BlockedIter {
            inner: self.chunks.iter().flatten(),
        }
    }

    fn size(&self) -> usize {
        self.len
    }

    fn contains(&self, v: VertexId) -> bool {
        if self.chunks.is_empty() {
            return false;
        }
        self.chunks[self.chunk_for(v)].binary_search(&v).is_ok()
    }

    fn insert(&mut self, v: VertexId) -> bool {
        if self.chunks.is_empty() {
            let mut chunk = Vec::with_capacity(CHUNK_CAPACITY + 1);
            chunk.push(v);
            self.chunks.push(chunk);
            self.len = 1;
            return true;
        }
        let idx = self.chunk_for(v);
        let chunk = &mut self.chunks[idx];
        match chunk.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                chunk.insert(pos, v);
                self.len += 1;
                self.split_if_full(idx);
                true
            }
        }
    }

    fn delete(&mut self, v: VertexId) -> bool {
        if self.chunks.is_empty() {
            return false;
        }
        let idx = self.chunk_for(v);
        match self.chunks[idx].binary_search(&v) {
            Ok(pos) => {
                self.chunks[idx].remove(pos);
                self.len -= 1;
                self.merge_around(idx);
                true
            }
            Err(_) => false,
        }
    }

    fn parallel_map(&self, f: &(dyn Fn(VertexId) + Sync)) {
        par::slice_for_each(&self.chunks, |c| c.iter().for_each(|&v| f(v)));
    }

    fn parallel_map_early_exit(&self, f: &(dyn Fn(VertexId) -> bool + Sync)) -> bool {
        par::slice_any(&self.chunks, |c| c.iter().any(|&v| f(v)))
    }

    /// Large batches merge with the whole set and rechunk.
    fn insert_batch(&mut self, ids: &[VertexId]) -> usize {
        if ids.len() * 8 < self.len || ids.len() <= 4 {
            return ids.iter().filter(|&&v| self.insert(v)).count();
        }
        let before = self.len;
        let mut merged = Vec::with_capacity(self.len + ids.len());
        let mut old = self.iter().peekable();
        for &v in ids {
            while let Some(&x) = old.peek() {
                if x >= v {
                    break;
                }
                merged.push(x);
                old.next();
            }
            if old.peek() == Some(&v) {
                continue;
            }
            merged.push(v);
        }
        merged.extend(old);
        self.rebuild(merged);
        self.len - before
    }

    fn delete_batch(&mut self, ids: &[VertexId]) -> usize {
        if ids.len() * 8 < self.len || ids.len() <= 4 {
            return ids.iter().filter(|&&v| self.delete(v)).count();
        }
        let before = self.len;
        let mut j = 0;
        let kept: Vec<VertexId> = self
            .iter()
            .filter(|&v| {
                while j < ids.len() && ids[j] < v {
                    j += 1;
                }
                !(j < ids.len() && ids[j] == v)
            })
            .collect();
        self.rebuild(kept);
        before - self.len
    }

    fn heap_bytes(&self) -> usize {
        self.chunks.capacity() * std::mem::size_of::<Vec<VertexId>>()
            + self.chunks.iter().map(|c| c.capacity() * std::mem::size_of::<VertexId>()).sum::<usize>()
    }
}
