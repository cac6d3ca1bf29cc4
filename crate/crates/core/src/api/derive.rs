//! Neighborhood primitives derived from `map_neighbors` alone.

use super::GraphContainer;
use crate::containers::CsrGraph;
use crate::model::VertexId;

/// Folds `map` over the neighbors of `v`. `combine` must be associative and
/// commutative with `identity` as its unit, since visit order is unspecified.
pub fn reduce<G, T, M, C>(g: &G, v: VertexId, map: M, combine: C, identity: T) -> T
where
    G: GraphContainer + ?Sized,
    M: Fn(VertexId) -> T,
    C: Fn(T, T) -> T,
    T: Clone,
{
    let mut acc = Some(identity);
    g.map_neighbors(v, &mut |u| {
        let current = acc.take().expect("accumulator present");
        acc = Some(combine(current, map(u)));
    });
    acc.expect("accumulator present")
}

pub fn count<G, P>(g: &G, v: VertexId, pred: P) -> usize
where
    G: GraphContainer + ?Sized,
    P: Fn(VertexId) -> bool,
{
    let mut n = 0;
    g.map_neighbors(v, &mut |u| n += usize::from(pred(u)));
    n
}

pub fn degree<G: GraphContainer + ?Sized>(g: &G, v: VertexId) -> usize {
    count(g, v, |_| true)
}

/// Neighbors of `v` in increasing order.
pub fn get_neighbors<G: GraphContainer + ?Sized>(g: &G, v: VertexId) -> Vec<VertexId> {
    let mut out = Vec::new();
    g.map_neighbors(v, &mut |u| out.push(u));
    out.sort_unstable();
    out
}

/// A new static graph holding the arcs `(u, v)` of `g` with `pred(u, v)`.
/// `g` itself is not modified.
pub fn filter<G, P>(g: &G, pred: P) -> CsrGraph
where
    G: GraphContainer + ?Sized,
    P: Fn(VertexId, VertexId) -> bool + Sync + Send,
{
    CsrGraph::filtered(g, pred)
}
