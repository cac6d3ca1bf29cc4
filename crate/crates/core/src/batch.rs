//! Batch preparation and application.
//!
//! Raw batches may contain duplicates and self-loops. [`prepare`] turns one
//! into one of three normalized forms:
//!
//! * `GlobalSort`: all arcs sorted by `(src, dst)`.
//! * `SemiSort`: arcs with equal source are contiguous, nothing else is
//!   ordered.
//! * `SemiSortLocalSort`: grouped by source, each group's destinations sorted.
//!
//! A globally sorted batch is also a valid instance of the other two forms.

use std::collections::hash_map::Entry;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::api::GraphContainer;
use crate::error::{GraphError, Result};
use crate::generate::{rmat_arcs, RmatParams};
use crate::model::{Edge, EdgeBatch, VertexId};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BatchForm {
    GlobalSort,
    SemiSort,
    SemiSortLocalSort,
}

impl BatchForm {
    pub const ALL: [BatchForm; 3] = [BatchForm::GlobalSort, BatchForm::SemiSort, BatchForm::SemiSortLocalSort];

    /// True iff a batch in this form also meets the guarantees of `required`.
    pub fn satisfies(self, required: BatchForm) -> bool {
        match self {
            BatchForm::GlobalSort => true,
            BatchForm::SemiSortLocalSort => required != BatchForm::GlobalSort,
            BatchForm::SemiSort => required == BatchForm::SemiSort,
        }
    }

    /// Whether destinations within each source group are sorted.
    pub fn locally_sorted(self) -> bool {
        self != BatchForm::SemiSort
    }

    pub fn name(self) -> &'static str {
        match self {
            BatchForm::GlobalSort => "sort",
            BatchForm::SemiSort => "semisort",
            BatchForm::SemiSortLocalSort => "semisort-localsort",
        }
    }
}

impl fmt::Display for BatchForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BatchForm {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        BatchForm::ALL
            .into_iter()
            .find(|form| form.name() == s)
            .ok_or_else(|| GraphError::Config(format!("unknown batch form '{s}'")))
    }
}

/// A normalized batch: no duplicates, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedBatch {
    form: BatchForm,
    arcs: Vec<Edge>,
    /// One range per source; `None` for `GlobalSort`, whose groups are
    /// implied by the ordering.
    groups: Option<Vec<Range<usize>>>,
}

impl PreparedBatch {
    pub fn form(&self) -> BatchForm {
        self.form
    }

    pub fn arcs(&self) -> &[Edge] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Per-source ranges into [`arcs`](Self::arcs), each with a distinct source.
    pub fn groups(&self) -> Vec<(VertexId, Range<usize>)> {
        match &self.groups {
            Some(groups) => groups.iter().map(|r| (self.arcs[r.start].src, r.clone())).collect(),
            None => {
                let mut out: Vec<(VertexId, Range<usize>)> = Vec::new();
                for (i, e) in self.arcs.iter().enumerate() {
                    match out.last_mut() {
                        Some((src, range)) if *src == e.src => range.end = i + 1,
                        _ => out.push((e.src, i..i + 1)),
                    }
                }
                out
            }
        }
    }

    pub fn destinations(&self, range: Range<usize>) -> impl Iterator<Item = VertexId> + '_ {
        self.arcs[range].iter().map(|e| e.dst)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        self.arcs.iter().try_for_each(|e| e.check(n))
    }
}

/// Normalizes `batch` into `form`. Self-loops are dropped and later
/// duplicates of an arc are discarded.
pub fn prepare(batch: &EdgeBatch, form: BatchForm) -> PreparedBatch {
    let arcs = batch.updates.iter().copied().filter(|e| !e.is_self_loop());
    match form {
        BatchForm::GlobalSort => {
            let mut arcs: Vec<Edge> = arcs.collect();
            par::sort_unstable(&mut arcs);
            arcs.dedup();
            PreparedBatch {
                form,
                arcs,
                groups: None,
            }
        }
        BatchForm::SemiSort | BatchForm::SemiSortLocalSort => {
            // Stable group-by: sources appear in first-seen order.
            let mut slot: FxHashMap<VertexId, usize> = FxHashMap::default();
            let mut buckets: Vec<(VertexId, Vec<VertexId>, FxHashSet<VertexId>)> = Vec::new();
            for e in arcs {
                let idx = match slot.entry(e.src) {
                    Entry::Occupied(o) => *o.get(),
                    Entry::Vacant(v) => {
                        buckets.push((e.src, Vec::new(), FxHashSet::default()));
                        *v.insert(buckets.len() - 1)
                    }
                };
                let (_, dsts, seen) = &mut buckets[idx];
                if seen.insert(e.dst) {
                    dsts.push(e.dst);
                }
            }
            if form == BatchForm::SemiSortLocalSort {
                par::for_each_mut(&mut buckets, |(_, dsts, _)| dsts.sort_unstable());
            }
            let mut out = Vec::with_capacity(buckets.iter().map(|b| b.1.len()).sum());
            let mut groups = Vec::with_capacity(buckets.len());
            for (src, dsts, _) in buckets {
                let start = out.len();
                out.extend(dsts.into_iter().map(|dst| Edge::new(src, dst)));
                groups.push(start..out.len());
            }
            PreparedBatch {
                form,
                arcs: out,
                groups: Some(groups),
            }
        }
    }
}

fn check_form<G: GraphContainer + ?Sized>(g: &G, batch: &PreparedBatch) -> Result<()> {
    if !g.capabilities().batch_updates {
        return Err(g.unsupported("batch updates"));
    }
    if !g.accepts_form(batch.form()) {
        return Err(GraphError::Config(format!(
            "{} requires {} batches, got {}",
            g.name(),
            g.preferred_form(),
            batch.form()
        )));
    }
    Ok(())
}

/// Inserts a prepared batch; returns the number of arcs that were new.
pub fn apply_insert<G: GraphContainer + ?Sized>(g: &mut G, batch: &PreparedBatch) -> Result<usize> {
    check_form(g, batch)?;
    g.insert_sorted_batch(batch)
}

/// Deletes a prepared batch; returns the number of arcs that were present.
pub fn apply_delete<G: GraphContainer + ?Sized>(g: &mut G, batch: &PreparedBatch) -> Result<usize> {
    check_form(g, batch)?;
    g.delete_sorted_batch(batch)
}

/// `size` directed arcs sampled by RMAT over `n` vertices, each followed by
/// its reverse. Duplicates and self-loops are kept.
pub fn generate_update_batch(params: &RmatParams, n: usize, size: usize, seed: u64) -> Result<EdgeBatch> {
    if size == 0 {
        return Err(GraphError::InvalidParameter("batch size must be positive".into()));
    }
    if n == 0 {
        return Err(GraphError::InvalidParameter("cannot sample updates for an empty graph".into()));
    }
    let log2_n = n.next_power_of_two().trailing_zeros();
    let mut arcs = Vec::with_capacity(size);
    let mut round = 0u64;
    // Ids past n are rejected and resampled from a fresh stream.
    while arcs.len() < size {
        let want = size - arcs.len();
        let sample = rmat_arcs(params, log2_n, want, seed.wrapping_add(round.wrapping_mul(0x9E37_79B9_7F4A_7C15)))?;
        arcs.extend(sample.into_iter().filter(|e| (e.src as usize) < n && (e.dst as usize) < n));
        round += 1;
    }
    let mut updates = Vec::with_capacity(2 * size);
    for e in arcs {
        updates.push(e);
        updates.push(e.reversed());
    }
    Ok(EdgeBatch::new(updates))
}
