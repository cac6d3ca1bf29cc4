//! Frontiers: vertex subsets with a sparse (sorted id list) and a dense
//! (one bit per vertex) representation.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{GraphError, Result};
use crate::model::VertexId;
use crate::par;

const WORD_BITS: usize = 64;

/// Fixed-length bit array. Bit `k` is vertex `k`, least significant bit
/// first within each 64-bit word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    words: Vec<u64>,
    len: usize,
}

impl Bitmap {
    pub fn new(len: usize) -> Self {
        Bitmap {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut bits = Bitmap {
            words: vec![u64::MAX; len.div_ceil(WORD_BITS)],
            len,
        };
        bits.clear_tail();
        bits
    }

    /// Builds a bitmap from raw words; bits at positions `>= len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        let mut bits = Bitmap { words, len };
        bits.clear_tail();
        bits
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Heap bytes used by the bit storage.
    pub fn storage_bytes(&self) -> usize {
        self.words.len() * std::mem::size_of::<u64>()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn count_ones(&self) -> usize {
        par::sum_range(self.words.len(), |w| self.words[w].count_ones() as u64) as usize
    }

    /// Set bit positions in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD_BITS + bit)
            })
        })
    }

    pub fn to_ids(&self) -> Vec<VertexId> {
        let per_word: Vec<Vec<VertexId>> = par::map_range(self.words.len(), |w| {
            let mut word = self.words[w];
            let mut ids = Vec::with_capacity(word.count_ones() as usize);
            while word != 0 {
                ids.push((w * WORD_BITS) as VertexId + word.trailing_zeros());
                word &= word - 1;
            }
            ids
        });
        per_word.concat()
    }
}

/// Bit array supporting concurrent test-and-set.
pub struct AtomicBitmap {
    words: Vec<AtomicU64>,
    len: usize,
}

impl AtomicBitmap {
    pub fn new(len: usize) -> Self {
        AtomicBitmap {
            words: (0..len.div_ceil(WORD_BITS)).map(|_| AtomicU64::new(0)).collect(),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / WORD_BITS].load(Ordering::Relaxed) >> (i % WORD_BITS) & 1 == 1
    }

    /// Sets bit `i`; returns true iff this call changed it.
    #[inline]
    pub fn claim(&self, i: usize) -> bool {
        let mask = 1u64 << (i % WORD_BITS);
        self.words[i / WORD_BITS].fetch_or(mask, Ordering::AcqRel) & mask == 0
    }

    pub fn into_bitmap(self) -> Bitmap {
        let words = self.words.into_iter().map(AtomicU64::into_inner).collect();
        Bitmap::from_words(words, self.len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Repr {
    /// Strictly increasing vertex ids.
    Sparse(Vec<VertexId>),
    Dense(Bitmap),
}

/// A set of vertices drawn from the universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubset {
    n: usize,
    repr: Repr,
    size: usize,
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset {
            n,
            repr: Repr::Sparse(Vec::new()),
            size: 0,
        }
    }

    pub fn all(n: usize) -> Self {
        VertexSubset {
            n,
            repr: Repr::Dense(Bitmap::full(n)),
            size: n,
        }
    }

    pub fn singleton(n: usize, v: VertexId) -> Result<Self> {
        if v as usize >= n {
            return Err(GraphError::out_of_range(v, n));
        }
        Ok(VertexSubset {
            n,
            repr: Repr::Sparse(vec![v]),
            size: 1,
        })
    }

    /// Sorts and deduplicates `ids`.
    pub fn from_ids(n: usize, mut ids: Vec<VertexId>) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&v| v as usize >= n) {
            return Err(GraphError::out_of_range(bad, n));
        }
        par::sort_unstable(&mut ids);
        ids.dedup();
        Ok(Self::from_sorted_ids(n, ids))
    }

    /// `ids` must already be strictly increasing and in range.
    pub(crate) fn from_sorted_ids(n: usize, ids: Vec<VertexId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(ids.last().is_none_or(|&v| (v as usize) < n));
        VertexSubset {
            n,
            size: ids.len(),
            repr: Repr::Sparse(ids),
        }
    }

    pub fn from_bitmap(bits: Bitmap) -> Self {
        VertexSubset {
            n: bits.len(),
            size: bits.count_ones(),
            repr: Repr::Dense(bits),
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn to_dense(self) -> Self {
        match self.repr {
            Repr::Dense(_) => self,
            Repr::Sparse(ids) => {
                let mut bits = Bitmap::new(self.n);
                for &v in &ids {
                    bits.set(v as usize);
                }
                VertexSubset {
                    n: self.n,
                    size: self.size,
                    repr: Repr::Dense(bits),
                }
            }
        }
    }

    pub fn to_sparse(self) -> Self {
        match self.repr {
            Repr::Sparse(_) => self,
            Repr::Dense(bits) => Self::from_sorted_ids(self.n, bits.to_ids()),
        }
    }

    pub fn contains(&self, v: VertexId) -> Result<bool> {
        if v as usize >= self.n {
            return Err(GraphError::out_of_range(v, self.n));
        }
        Ok(self.contains_unchecked(v))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, v: VertexId) -> bool {
        match &self.repr {
            Repr::Dense(bits) => bits.get(v as usize),
            Repr::Sparse(ids) => ids.binary_search(&v).is_ok(),
        }
    }

    /// Members in increasing order.
    pub fn to_vec(&self) -> Vec<VertexId> {
        match &self.repr {
            Repr::Sparse(ids) => ids.clone(),
            Repr::Dense(bits) => bits.to_ids(),
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = VertexId> + '_> {
        match &self.repr {
            Repr::Sparse(ids) => Box::new(ids.iter().copied()),
            Repr::Dense(bits) => Box::new(bits.ones().map(|v| v as VertexId)),
        }
    }
}
