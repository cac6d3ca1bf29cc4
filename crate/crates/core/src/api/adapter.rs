//! Lifting per-vertex neighbor sets into a whole-graph container.

use std::ops::Range;

use super::{Capabilities, GraphContainer};
use crate::batch::{BatchForm, PreparedBatch};
use crate::error::{GraphError, Result};
use crate::model::{Edge, VertexId};
use crate::par;

/// A set of neighbor ids for one vertex.
///
/// Required: iteration and single-element updates. The rest has defaults
/// derived from the iterator, so any ordinary set type plugs in without
/// extra code.
pub trait NeighborSet: Default + Clone + Send + Sync {
    type Iter<'a>: Iterator<Item = VertexId>
    where
        Self: 'a;

    const KIND: &'static str;

    /// Container name when lifted with inline slots.
    const INLINE_KIND: &'static str;

    /// Iteration visits ids in increasing order.
    const ORDERED: bool;

    /// Whether [`size`](Self::size) is cheap. When false the adapter serves
    /// degrees from its own metadata.
    const HAS_SIZE: bool = true;

    const HAS_PARALLEL_MAP: bool = false;

    /// The batch form this set benefits from.
    const PREFERRED_FORM: BatchForm;

    fn iter(&self) -> Self::Iter<'_>;

    fn size(&self) -> usize {
        self.iter().count()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.iter().any(|x| x == v)
    }

    /// Returns true iff `v` was not already present.
    fn insert(&mut self, v: VertexId) -> bool;

    /// Returns true iff `v` was present.
    fn delete(&mut self, v: VertexId) -> bool;

    fn parallel_map(&self, f: &(dyn Fn(VertexId) + Sync)) {
        self.iter().for_each(f)
    }

    fn parallel_map_early_exit(&self, f: &(dyn Fn(VertexId) -> bool + Sync)) -> bool {
        self.iter().any(f)
    }

    /// Inserts distinct ids, sorted when `Self::ORDERED`. Returns how many
    /// were new.
    fn insert_batch(&mut self, ids: &[VertexId]) -> usize {
        ids.iter().filter(|&&v| self.insert(v)).count()
    }

    /// Deletes distinct ids, sorted when `Self::ORDERED`. Returns how many
    /// were present.
    fn delete_batch(&mut self, ids: &[VertexId]) -> usize {
        ids.iter().filter(|&&v| self.delete(v)).count()
    }

    /// Heap bytes owned by the set, excluding `size_of::<Self>()`.
    fn heap_bytes(&self) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateKind {
    Insert,
    Delete,
}

/// Degrees and arc count maintained by the framework alongside the sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetadataTracker {
    degrees: Vec<u32>,
    total: usize,
}

impl MetadataTracker {
    pub fn new(n: usize) -> Self {
        MetadataTracker {
            degrees: vec![0; n],
            total: 0,
        }
    }

    pub fn from_degrees(degrees: Vec<u32>) -> Self {
        let total = degrees.iter().map(|&d| d as usize).sum();
        MetadataTracker { degrees, total }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degrees[v as usize] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total_edges(&self) -> usize {
        self.total
    }

    /// Records one update; a no-op unless `applied`.
    pub fn on_update(&mut self, e: Edge, kind: UpdateKind, applied: bool) -> Result<()> {
        if !applied {
            return Ok(());
        }
        let d = &mut self.degrees[e.src as usize];
        match kind {
            UpdateKind::Insert => {
                *d += 1;
                self.total += 1;
            }
            UpdateKind::Delete => {
                if *d == 0 || self.total == 0 {
                    return Err(GraphError::Logic(format!(
                        "degree underflow deleting {e:?}: tracker and container disagree"
                    )));
                }
                *d -= 1;
                self.total -= 1;
            }
        }
        Ok(())
    }
}

/// One slot of the vertex table: up to `K` neighbors stored inline, the rest
/// in the spill set. The spill set is empty whenever fewer than `K` inline
/// slots are used.
#[derive(Clone, Debug)]
pub struct VertexEntry<S, const K: usize> {
    inline: [VertexId; K],
    inline_len: u32,
    spill: S,
}

impl<S: NeighborSet, const K: usize> Default for VertexEntry<S, K> {
    fn default() -> Self {
        VertexEntry {
            inline: [0; K],
            inline_len: 0,
            spill: S::default(),
        }
    }
}

impl<S: NeighborSet, const K: usize> VertexEntry<S, K> {
    #[inline]
    pub fn inline(&self) -> &[VertexId] {
        &self.inline[..self.inline_len as usize]
    }

    pub fn spill(&self) -> &S {
        &self.spill
    }

    fn inline_position(&self, v: VertexId) -> Option<usize> {
        self.inline().iter().position(|&x| x == v)
    }

    fn contains(&self, v: VertexId) -> bool {
        self.inline_position(v).is_some() || (self.spill_in_use() && self.spill.contains(v))
    }

    #[inline]
    fn spill_in_use(&self) -> bool {
        self.inline_len as usize == K
    }

    fn push_inline(&mut self, v: VertexId) {
        self.inline[self.inline_len as usize] = v;
        self.inline_len += 1;
    }

    fn size(&self) -> usize {
        let spill = if self.spill_in_use() { self.spill.size() } else { 0 };
        self.inline_len as usize + spill
    }

    fn insert(&mut self, v: VertexId) -> bool {
        if self.inline_position(v).is_some() {
            return false;
        }
        if !self.spill_in_use() {
            self.push_inline(v);
            return true;
        }
        self.spill.insert(v)
    }

    fn delete(&mut self, v: VertexId) -> bool {
        if let Some(pos) = self.inline_position(v) {
            let last = self.inline_len as usize - 1;
            self.inline.swap(pos, last);
            self.inline_len -= 1;
            self.refill();
            return true;
        }
        self.spill_in_use() && self.spill.delete(v)
    }

    /// Moves spill elements inline until the inline slots are full again.
    fn refill(&mut self) {
        while (self.inline_len as usize) < K {
            let Some(v) = self.spill.iter().next() else { break };
            self.spill.delete(v);
            self.push_inline(v);
        }
    }

    fn insert_batch(&mut self, ids: &[VertexId]) -> usize {
        if K == 0 {
            return self.spill.insert_batch(ids);
        }
        let fresh: Vec<VertexId> = ids.iter().copied().filter(|&v| self.inline_position(v).is_none()).collect();
        let mut rest = &fresh[..];
        let mut added = 0;
        if !self.spill_in_use() {
            let room = (K - self.inline_len as usize).min(rest.len());
            for &v in &rest[..room] {
                self.push_inline(v);
            }
            added += room;
            rest = &rest[room..];
        }
        if !rest.is_empty() {
            added += self.spill.insert_batch(rest);
        }
        added
    }

    fn delete_batch(&mut self, ids: &[VertexId]) -> usize {
        if K == 0 {
            return self.spill.delete_batch(ids);
        }
        let mut removed = 0;
        let mut rest = Vec::with_capacity(ids.len());
        for &v in ids {
            match self.inline_position(v) {
                Some(pos) => {
                    let last = self.inline_len as usize - 1;
                    self.inline.swap(pos, last);
                    self.inline_len -= 1;
                    removed += 1;
                }
                None => rest.push(v),
            }
        }
        if !rest.is_empty() {
            removed += self.spill.delete_batch(&rest);
        }
        self.refill();
        removed
    }

    fn for_each(&self, f: &mut dyn FnMut(VertexId)) {
        self.inline().iter().for_each(|&v| f(v));
        if self.spill_in_use() {
            self.spill.iter().for_each(f);
        }
    }
}

/// A graph stored as a dense vertex table of neighbor sets with optional
/// inline slots. `K = 0` disables inlining.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph<S, const K: usize> {
    entries: Vec<VertexEntry<S, K>>,
    meta: MetadataTracker,
}

impl<S: NeighborSet, const K: usize> AdjacencyGraph<S, K> {
    pub fn new(n: usize) -> Self {
        AdjacencyGraph {
            entries: (0..n).map(|_| VertexEntry::default()).collect(),
            meta: MetadataTracker::new(n),
        }
    }

    /// Lifts one set per vertex; set `i` holds the neighbors of vertex `i`.
    pub fn from_sets(sets: Vec<S>) -> Result<Self> {
        let n = sets.len();
        let mut entries = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for set in sets {
            let mut entry = VertexEntry {
                inline: [0; K],
                inline_len: 0,
                spill: set,
            };
            let mut degree = 0u32;
            for v in entry.spill.iter() {
                if v as usize >= n {
                    return Err(GraphError::out_of_range(v, n));
                }
                degree += 1;
            }
            entry.refill();
            entries.push(entry);
            degrees.push(degree);
        }
        Ok(AdjacencyGraph {
            entries,
            meta: MetadataTracker::from_degrees(degrees),
        })
    }

    /// Builds from arcs sorted by `(src, dst)` without duplicates.
    pub fn from_sorted_arcs(n: usize, arcs: &[Edge]) -> Result<Self> {
        let mut g = Self::new(n);
        let batch = crate::batch::prepare(&crate::model::EdgeBatch::new(arcs.to_vec()), BatchForm::GlobalSort);
        g.insert_sorted_batch(&batch)?;
        Ok(g)
    }

    pub fn metadata(&self) -> &MetadataTracker {
        &self.meta
    }

    pub fn entry(&self, v: VertexId) -> &VertexEntry<S, K> {
        &self.entries[v as usize]
    }

    fn check(&self, e: Edge) -> Result<()> {
        e.check(self.entries.len())
    }

    /// Pairs each batch group with its vertex entry and degree slot so the
    /// groups can be applied in parallel.
    fn apply_groups(
        &mut self,
        batch: &PreparedBatch,
        apply: impl Fn(&mut VertexEntry<S, K>, &[VertexId]) -> usize + Sync + Send,
        kind: UpdateKind,
    ) -> Result<usize> {
        batch.check(self.entries.len())?;
        let sort_locally = S::ORDERED && !batch.form().locally_sorted();
        let mut groups: Vec<(VertexId, Range<usize>)> = batch.groups();
        groups.sort_unstable_by_key(|g| g.0);

        struct Work<'a, E> {
            entry: &'a mut E,
            degree: &'a mut u32,
            range: Range<usize>,
            applied: usize,
        }
        let mut work = Vec::with_capacity(groups.len());
        let mut entries: &mut [VertexEntry<S, K>] = &mut self.entries;
        let mut degrees: &mut [u32] = &mut self.meta.degrees;
        let mut offset = 0usize;
        for (src, range) in groups {
            let skip = src as usize - offset;
            let (_, tail) = std::mem::take(&mut entries).split_at_mut(skip);
            let (entry, tail) = tail.split_first_mut().expect("source in range");
            entries = tail;
            let (_, dtail) = std::mem::take(&mut degrees).split_at_mut(skip);
            let (degree, dtail) = dtail.split_first_mut().expect("source in range");
            degrees = dtail;
            offset = src as usize + 1;
            work.push(Work {
                entry,
                degree,
                range,
                applied: 0,
            });
        }

        let arcs = batch.arcs();
        par::for_each_mut(&mut work, |w| {
            let mut ids: Vec<VertexId> = arcs[w.range.clone()].iter().map(|e| e.dst).collect();
            if sort_locally {
                ids.sort_unstable();
            }
            w.applied = apply(w.entry, &ids);
            match kind {
                UpdateKind::Insert => *w.degree += w.applied as u32,
                UpdateKind::Delete => *w.degree -= w.applied as u32,
            }
        });
        let applied: usize = work.iter().map(|w| w.applied).sum();
        match kind {
            UpdateKind::Insert => self.meta.total += applied,
            UpdateKind::Delete => self.meta.total -= applied,
        }
        Ok(applied)
    }
}

impl<S: NeighborSet, const K: usize> GraphContainer for AdjacencyGraph<S, K> {
    fn num_vertices(&self) -> usize {
        self.entries.len()
    }

    fn map_neighbors(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        self.entries[v as usize].for_each(f)
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            parallel_map: S::HAS_PARALLEL_MAP,
            parallel_map_early_exit: S::HAS_PARALLEL_MAP,
            ..Capabilities::FULL
        }
    }

    fn name(&self) -> &'static str {
        if K > 0 {
            S::INLINE_KIND
        } else {
            S::KIND
        }
    }

    fn num_edges(&self) -> Option<usize> {
        Some(self.meta.total)
    }

    fn degree(&self, v: VertexId) -> Option<usize> {
        if S::HAS_SIZE {
            Some(self.entries[v as usize].size())
        } else {
            Some(self.meta.degree(v))
        }
    }

    fn map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &mut dyn FnMut(VertexId) -> bool,
    ) -> Option<bool> {
        let entry = &self.entries[v as usize];
        if entry.inline().iter().any(|&u| f(u)) {
            return Some(true);
        }
        Some(entry.spill_in_use() && entry.spill.iter().any(f))
    }

    fn parallel_map_neighbors(&self, v: VertexId, f: &(dyn Fn(VertexId) + Sync)) -> Option<()> {
        if !S::HAS_PARALLEL_MAP {
            return None;
        }
        let entry = &self.entries[v as usize];
        entry.inline().iter().for_each(|&u| f(u));
        if entry.spill_in_use() {
            entry.spill.parallel_map(f);
        }
        Some(())
    }

    fn parallel_map_neighbors_early_exit(
        &self,
        v: VertexId,
        f: &(dyn Fn(VertexId) -> bool + Sync),
    ) -> Option<bool> {
        if !S::HAS_PARALLEL_MAP {
            return None;
        }
        let entry = &self.entries[v as usize];
        if entry.inline().iter().any(|&u| f(u)) {
            return Some(true);
        }
        Some(entry.spill_in_use() && entry.spill.parallel_map_early_exit(f))
    }

    fn memory_bytes(&self) -> Option<usize> {
        let table = self.entries.len() * std::mem::size_of::<VertexEntry<S, K>>();
        let spills = par::sum_range(self.entries.len(), |v| self.entries[v].spill.heap_bytes() as u64) as usize;
        let meta = self.meta.degrees.len() * std::mem::size_of::<u32>();
        Some(table + spills + meta)
    }

    fn preferred_form(&self) -> BatchForm {
        S::PREFERRED_FORM
    }

    /// Any form works: groups are split per source here, and ordered sets
    /// get their groups sorted locally when the batch did not do it.
    fn accepts_form(&self, _form: BatchForm) -> bool {
        true
    }

    fn insert_sorted_batch(&mut self, batch: &PreparedBatch) -> Result<usize> {
        self.apply_groups(batch, |entry, ids| entry.insert_batch(ids), UpdateKind::Insert)
    }

    fn delete_sorted_batch(&mut self, batch: &PreparedBatch) -> Result<usize> {
        self.apply_groups(batch, |entry, ids| entry.delete_batch(ids), UpdateKind::Delete)
    }

    fn insert_edge(&mut self, e: Edge) -> Result<bool> {
        self.check(e)?;
        let applied = self.entries[e.src as usize].insert(e.dst);
        self.meta.on_update(e, UpdateKind::Insert, applied)?;
        Ok(applied)
    }

    fn delete_edge(&mut self, e: Edge) -> Result<bool> {
        self.check(e)?;
        let entry = &mut self.entries[e.src as usize];
        let applied = entry.contains(e.dst) && entry.delete(e.dst);
        self.meta.on_update(e, UpdateKind::Delete, applied)?;
        Ok(applied)
    }
}
