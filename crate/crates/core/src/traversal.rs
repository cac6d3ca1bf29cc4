//! Frontier traversal: direction-optimizing `edge_map` plus the per-vertex
//! `vertex_map` / `vertex_filter` companions.
//!
//! Sparse (push) mode walks the neighbors of each frontier vertex; dense
//! (pull) mode scans every eligible vertex for a neighbor in the frontier.
//! Both produce the same member set when `update` is idempotent.

use std::borrow::Cow;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use crate::api::{ops, GraphContainer};
use crate::model::VertexId;
use crate::par;
use crate::subset::{AtomicBitmap, Bitmap, Repr, VertexSubset};

/// Default sparse/dense cutoff as a fraction of the arc count.
pub const DEFAULT_THRESHOLD: f64 = 1.0 / 20.0;

/// Vertices above this degree use the container's parallel maps.
pub const DEFAULT_GRAIN: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Sparse,
    Dense,
}

/// Size of a frontier and the number of arcs leaving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrontierWork {
    pub size: usize,
    pub out_degree_sum: usize,
}

pub fn frontier_work<G: GraphContainer + ?Sized>(g: &G, frontier: &VertexSubset) -> FrontierWork {
    let out_degree_sum = match frontier.repr() {
        Repr::Sparse(ids) => par::sum_range(ids.len(), |i| ops::degree(g, ids[i]) as u64),
        Repr::Dense(bits) => {
            let words = bits.words();
            par::sum_range(words.len(), |w| {
                let mut word = words[w];
                let mut sum = 0u64;
                while word != 0 {
                    let v = (w * 64) as VertexId + word.trailing_zeros();
                    sum += ops::degree(g, v) as u64;
                    word &= word - 1;
                }
                sum
            })
        }
    } as usize;
    FrontierWork {
        size: frontier.len(),
        out_degree_sum,
    }
}

/// An `edge_map` invocation.
///
/// `update(src, dst)` returns true to emit `dst`; it may run concurrently for
/// different pairs and must be safe to do so. `cond(dst)` returns false once
/// `dst` no longer needs updates.
pub struct EdgeMap<U, C> {
    update: U,
    cond: C,
    dense_early_exit: bool,
    threshold: f64,
    force: Option<Direction>,
    grain: usize,
}

impl<U, C> EdgeMap<U, C>
where
    U: Fn(VertexId, VertexId) -> bool + Sync + Send,
    C: Fn(VertexId) -> bool + Sync + Send,
{
    pub fn new(update: U, cond: C) -> Self {
        EdgeMap {
            update,
            cond,
            dense_early_exit: true,
            threshold: DEFAULT_THRESHOLD,
            force: None,
            grain: DEFAULT_GRAIN,
        }
    }

    /// Keep scanning a vertex in dense mode after it has been emitted. Needed
    /// when `update` aggregates over all frontier neighbors.
    pub fn no_dense_early_exit(mut self) -> Self {
        self.dense_early_exit = false;
        self
    }

    pub fn threshold(mut self, fraction: f64) -> Self {
        self.threshold = fraction;
        self
    }

    pub fn force(mut self, direction: Option<Direction>) -> Self {
        self.force = direction;
        self
    }

    pub fn grain(mut self, grain: usize) -> Self {
        self.grain = grain;
        self
    }

    pub fn run<G: GraphContainer + ?Sized>(&self, g: &G, frontier: &VertexSubset) -> VertexSubset {
        self.run_traced(g, frontier).0
    }

    /// Like [`run`](Self::run), also reporting the direction taken.
    pub fn run_traced<G: GraphContainer + ?Sized>(
        &self,
        g: &G,
        frontier: &VertexSubset,
    ) -> (VertexSubset, Direction) {
        let n = g.num_vertices();
        debug_assert_eq!(frontier.universe(), n);
        if frontier.is_empty() {
            return (VertexSubset::empty(n), self.force.unwrap_or(Direction::Sparse));
        }
        let direction = self.force.unwrap_or_else(|| {
            let work = frontier_work(g, frontier);
            let m = ops::num_edges(g);
            if (work.size + work.out_degree_sum) as f64 > self.threshold * m as f64 {
                Direction::Dense
            } else {
                Direction::Sparse
            }
        });
        let out = match direction {
            Direction::Sparse => self.sparse(g, frontier),
            Direction::Dense => self.dense(g, frontier),
        };
        (out, direction)
    }

    /// Push mode. A claim bit per destination makes each vertex appear at
    /// most once in the output.
    pub fn sparse<G: GraphContainer + ?Sized>(&self, g: &G, frontier: &VertexSubset) -> VertexSubset {
        let n = g.num_vertices();
        let ids: Cow<'_, [VertexId]> = match frontier.repr() {
            Repr::Sparse(ids) => Cow::Borrowed(ids),
            Repr::Dense(bits) => Cow::Owned(bits.to_ids()),
        };
        let claimed = AtomicBitmap::new(n);
        let caps = g.capabilities();
        let (update, cond) = (&self.update, &self.cond);
        let emit = |u: VertexId, v: VertexId| cond(v) && update(u, v) && claimed.claim(v as usize);

        let mut out = par::flat_map_slice(&ids, |&u, out| {
            if caps.parallel_map && caps.degree && ops::degree(g, u) > self.grain {
                let found = Mutex::new(Vec::new());
                ops::parallel_map(g, u, &|v| {
                    if emit(u, v) {
                        found.lock().unwrap().push(v);
                    }
                });
                out.append(&mut found.into_inner().unwrap());
            } else {
                g.map_neighbors(u, &mut |v| {
                    if emit(u, v) {
                        out.push(v);
                    }
                });
            }
        });
        par::sort_unstable(&mut out);
        VertexSubset::from_sorted_ids(n, out)
    }

    /// Pull mode over every vertex with `cond(v)`.
    pub fn dense<G: GraphContainer + ?Sized>(&self, g: &G, frontier: &VertexSubset) -> VertexSubset {
        let n = g.num_vertices();
        let bits: Cow<'_, Bitmap> = match frontier.repr() {
            Repr::Dense(bits) => Cow::Borrowed(bits),
            Repr::Sparse(_) => match frontier.clone().to_dense().repr() {
                Repr::Dense(bits) => Cow::Owned(bits.clone()),
                Repr::Sparse(_) => unreachable!(),
            },
        };
        let caps = g.capabilities();
        let (update, cond) = (&self.update, &self.cond);
        let in_frontier = |u: VertexId| bits.get(u as usize);

        let scan = |v: VertexId| -> bool {
            let big = caps.degree && ops::degree(g, v) > self.grain;
            if self.dense_early_exit {
                if big && (caps.parallel_map_early_exit || caps.parallel_map) {
                    let emitted = AtomicBool::new(false);
                    ops::parallel_map_early_exit(g, v, &|u| {
                        if in_frontier(u) && update(u, v) {
                            emitted.store(true, Ordering::Relaxed);
                        }
                        emitted.load(Ordering::Relaxed) || !cond(v)
                    });
                    emitted.into_inner()
                } else {
                    let mut emitted = false;
                    ops::map_early_exit(g, v, &mut |u| {
                        if in_frontier(u) && update(u, v) {
                            emitted = true;
                        }
                        emitted || !cond(v)
                    });
                    emitted
                }
            } else if big && caps.parallel_map {
                let emitted = AtomicBool::new(false);
                ops::parallel_map(g, v, &|u| {
                    if in_frontier(u) && update(u, v) {
                        emitted.store(true, Ordering::Relaxed);
                    }
                });
                emitted.into_inner()
            } else {
                let mut emitted = false;
                g.map_neighbors(v, &mut |u| {
                    if in_frontier(u) && update(u, v) {
                        emitted = true;
                    }
                });
                emitted
            }
        };

        let words = par::map_range(n.div_ceil(64), |w| {
            let mut word = 0u64;
            let base = w * 64;
            for bit in 0..64.min(n - base) {
                let v = (base + bit) as VertexId;
                if cond(v) && scan(v) {
                    word |= 1 << bit;
                }
            }
            word
        });
        VertexSubset::from_bitmap(Bitmap::from_words(words, n))
    }
}

/// Applies `f` once to every member of `s`.
pub fn vertex_map<F>(s: &VertexSubset, f: F)
where
    F: Fn(VertexId) + Sync + Send,
{
    match s.repr() {
        Repr::Sparse(ids) => par::slice_for_each(ids, |&v| f(v)),
        Repr::Dense(bits) => {
            let words = bits.words();
            par::for_each_index(words.len(), |w| {
                let mut word = words[w];
                while word != 0 {
                    f((w * 64) as VertexId + word.trailing_zeros());
                    word &= word - 1;
                }
            })
        }
    }
}

/// Members of `s` satisfying `pred`, in the same representation as `s`.
pub fn vertex_filter<P>(s: &VertexSubset, pred: P) -> VertexSubset
where
    P: Fn(VertexId) -> bool + Sync + Send,
{
    match s.repr() {
        Repr::Sparse(ids) => {
            let kept = par::filter_range(ids.len(), |i| pred(ids[i]));
            let kept = kept.into_iter().map(|i| ids[i as usize]).collect();
            VertexSubset::from_sorted_ids(s.universe(), kept)
        }
        Repr::Dense(bits) => {
            let words = bits.words();
            let filtered = par::map_range(words.len(), |w| {
                let mut word = words[w];
                let mut out = 0u64;
                while word != 0 {
                    let bit = word.trailing_zeros();
                    if pred((w * 64) as VertexId + bit) {
                        out |= 1 << bit;
                    }
                    word &= word - 1;
                }
                out
            });
            VertexSubset::from_bitmap(Bitmap::from_words(filtered, s.universe()))
        }
    }
}
