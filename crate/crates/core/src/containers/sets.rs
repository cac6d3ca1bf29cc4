//! Off-the-shelf set types used as neighbor sets.

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;

use crate::api::NeighborSet;
use crate::batch::BatchForm;
use crate::model::VertexId;
use crate::par;

/// A sorted, duplicate-free vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SortedVecSet(Vec<VertexId>);

impl SortedVecSet {
    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }
}

impl NeighborSet for SortedVecSet {
    type Iter<'a> = std::iter::Copied<std::slice::Iter<'a, VertexId>>;
    const KIND: &'static str = "sorted-vec";
    const INLINE_KIND: &'static str = "sorted-vec-inline";
    const ORDERED: bool = true;
    const HAS_PARALLEL_MAP: bool = true;
    const PREFERRED_FORM: BatchForm = BatchForm::SemiSortLocalSort;

    fn iter(&self) -> Self::Iter<'_> {
        self.0.iter().copied()
    }

    fn size(&self) -> usize {
        self.0.len()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    fn insert(&mut self, v: VertexId) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    fn delete(&mut self, v: VertexId) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    fn parallel_map(&self, f: &(dyn Fn(VertexId) + Sync)) {
        par::slice_for_each(&self.0, |&v| f(v));
    }

    fn parallel_map_early_exit(&self, f: &(dyn Fn(VertexId) -> bool + Sync)) -> bool {
        par::slice_any(&self.0, |&v| f(v))
    }

    /// Linear merge of two sorted sequences.
    fn insert_batch(&mut self, ids: &[VertexId]) -> usize {
        if ids.len() <= 4 {
            return ids.iter().filter(|&&v| self.insert(v)).count();
        }
        let before = self.0.len();
        let old = std::mem::take(&mut self.0);
        let mut merged = Vec::with_capacity(old.len() + ids.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() && j < ids.len() {
            match old[i].cmp(&ids[j]) {
                std::cmp::Ordering::Less => {
                    merged.push(old[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(ids[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    merged.push(old[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&old[i..]);
        merged.extend_from_slice(&ids[j..]);
        self.0 = merged;
        self.0.len() - before
    }

    fn delete_batch(&mut self, ids: &[VertexId]) -> usize {
        if ids.len() <= 4 {
            return ids.iter().filter(|&&v| self.delete(v)).count();
        }
        let before = self.0.len();
        let mut j = 0;
        self.0.retain(|&v| {
            while j < ids.len() && ids[j] < v {
                j += 1;
            }
            !(j < ids.len() && ids[j] == v)
        });
        before - self.0.len()
    }

    fn heap_bytes(&self) -> usize {
        self.0.capacity() * std::mem::size_of::<VertexId>()
    }
}

/// The standard library B-tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BTreeNeighbors(BTreeSet<VertexId>);

impl NeighborSet for BTreeNeighbors {
    type Iter<'a> = std::iter::Copied<std::collections::btree_set::Iter<'a, VertexId>>;
    const KIND: &'static str = "btree";
    const INLINE_KIND: &'static str = "btree-inline";
    const ORDERED: bool = true;
    const PREFERRED_FORM: BatchForm = BatchForm::SemiSortLocalSort;

    fn iter(&self) -> Self::Iter<'_> {
        self.0.iter().copied()
    }

    fn size(&self) -> usize {
        self.0.len()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    fn delete(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    /// Estimate: std B-tree nodes hold up to 11 keys and run about two
    /// thirds full; a leaf with `u32` keys is 56 bytes.
    fn heap_bytes(&self) -> usize {
        const LEAF_BYTES: usize = 56;
        self.0.len().div_ceil(7) * LEAF_BYTES
    }
}

/// Open-addressing (SwissTable) hash set with a fixed hasher, so iteration
/// order is reproducible across runs but otherwise arbitrary.
#[derive(Clone, Debug, Default)]
pub struct HashNeighbors(FxHashSet<VertexId>);

impl NeighborSet for HashNeighbors {
    type Iter<'a> = std::iter::Copied<std::collections::hash_set::Iter<'a, VertexId>>;
    const KIND: &'static str = "hash";
    const INLINE_KIND: &'static str = "hash-inline";
    const ORDERED: bool = false;
    const PREFERRED_FORM: BatchForm = BatchForm::SemiSort;

    fn iter(&self) -> Self::Iter<'_> {
        self.0.iter().copied()
    }

    fn size(&self) -> usize {
        self.0.len()
    }

    fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    fn delete(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    fn insert_batch(&mut self, ids: &[VertexId]) -> usize {
        self.0.reserve(ids.len());
        ids.iter().filter(|&&v| self.0.insert(v)).count()
    }

    /// One slot plus one control byte per bucket.
    fn heap_bytes(&self) -> usize {
        let buckets = if self.0.capacity() == 0 {
            0
        } else {
            (self.0.capacity() * 8 / 7).next_power_of_two()
        };
        buckets * (std::mem::size_of::<VertexId>() + 1)
    }
}
