//! Slow, obviously-correct reference computations over plain adjacency
//! lists. Shares no code with `gcbench`; test suites compare the two.

use std::collections::{BTreeSet, VecDeque};

/// Sorted neighbor lists.
pub type Adj = Vec<Vec<u32>>;

pub const INF: u32 = u32::MAX;

/// Adjacency lists from arcs; duplicates are removed, direction is kept.
pub fn adjacency(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Adj {
    let mut sets = vec![BTreeSet::new(); n];
    for (u, v) in arcs {
        sets[u as usize].insert(v);
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Undirected simple graph from unordered pairs.
pub fn undirected(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Adj {
    adjacency(
        n,
        edges.into_iter().filter(|(u, v)| u != v).flat_map(|(u, v)| [(u, v), (v, u)]),
    )
}

pub fn arcs(adj: &Adj) -> Vec<(u32, u32)> {
    adj.iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().map(move |&v| (u as u32, v)))
        .collect()
}

pub fn num_arcs(adj: &Adj) -> usize {
    adj.iter().map(Vec::len).sum()
}

pub fn max_degree(adj: &Adj) -> usize {
    adj.iter().map(Vec::len).max().unwrap_or(0)
}

/// Small xorshift generator for test inputs.
#[derive(Clone, Debug)]
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Each unordered pair joined with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut TestRng) -> Adj {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.unit() < p {
                edges.push((u, v));
            }
        }
    }
    undirected(n, edges)
}

pub fn bfs_distances(adj: &Adj, source: u32) -> Vec<u32> {
    let mut dist = vec![INF; adj.len()];
    let mut queue = VecDeque::from([source]);
    dist[source as usize] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u as usize] {
            if dist[v as usize] == INF {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Brandes' single-source pass: path counts and dependencies, with the
/// source's dependency reported as 0.
pub fn brandes(adj: &Adj, source: u32) -> (Vec<f64>, Vec<f64>) {
    let n = adj.len();
    let mut sigma = vec![0.0; n];
    let mut dist = vec![INF; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([source as usize]);
    sigma[source as usize] = 1.0;
    dist[source as usize] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            let v = v as usize;
            if dist[v] == INF {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
            if dist[v] == dist[u] + 1 {
                sigma[v] += sigma[u];
            }
        }
    }
    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        for &v in &adj[w] {
            let v = v as usize;
            if dist[v] != INF && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
    }
    delta[source as usize] = 0.0;
    (sigma, delta)
}

/// Component labels by flood fill; each label is the component's smallest id.
pub fn components(adj: &Adj) -> Vec<u32> {
    let mut label = vec![INF; adj.len()];
    for s in 0..adj.len() {
        if label[s] != INF {
            continue;
        }
        let mut stack = vec![s];
        label[s] = s as u32;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if label[v as usize] == INF {
                    label[v as usize] = s as u32;
                    stack.push(v as usize);
                }
            }
        }
    }
    label
}

/// Coreness by repeatedly deleting a minimum-degree vertex.
pub fn coreness(adj: &Adj) -> Vec<u32> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut core = vec![0u32; n];
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| degree[v]).unwrap();
        k = k.max(degree[v]);
        core[v] = k as u32;
        removed[v] = true;
        for &u in &adj[v] {
            if !removed[u as usize] {
                degree[u as usize] -= 1;
            }
        }
    }
    core
}

/// Power iteration on the dense transition matrix for exactly `iters`
/// steps, dangling mass spread uniformly.
pub fn pagerank(adj: &Adj, damping: f64, iters: u32) -> Vec<f64> {
    let n = adj.len();
    let mut m = vec![vec![0.0; n]; n];
    for (u, ns) in adj.iter().enumerate() {
        for &v in ns {
            m[v as usize][u] = 1.0 / ns.len() as f64;
        }
    }
    let mut p = vec![1.0 / n as f64; n];
    for _ in 0..iters {
        let dangling: f64 = (0..n).filter(|&u| adj[u].is_empty()).map(|u| p[u]).sum();
        p = (0..n)
            .map(|v| {
                let inflow: f64 = (0..n).map(|u| m[v][u] * p[u]).sum();
                (1.0 - damping) / n as f64 + damping * (inflow + dangling / n as f64)
            })
            .collect();
    }
    p
}

/// Undirected edges inside `set` divided by its size.
pub fn density(adj: &Adj, set: &[u32]) -> f64 {
    if set.is_empty() {
        return 0.0;
    }
    let inside: BTreeSet<u32> = set.iter().copied().collect();
    let arcs: usize = set
        .iter()
        .map(|&v| adj[v as usize].iter().filter(|u| inside.contains(u)).count())
        .sum();
    arcs as f64 / 2.0 / set.len() as f64
}

/// Maximum density over all nonempty vertex subsets.
pub fn densest_exhaustive(adj: &Adj) -> f64 {
    let n = adj.len();
    assert!(n <= 20, "exhaustive search over {n} vertices");
    let mut best = 0.0f64;
    for mask in 1u32..(1 << n) {
        let set: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
        best = best.max(density(adj, &set));
    }
    best
}

pub fn is_independent(adj: &Adj, member: &[bool]) -> bool {
    arcs(adj).iter().all(|&(u, v)| !(member[u as usize] && member[v as usize]))
}

/// Every vertex outside the set has a neighbor inside it.
pub fn is_maximal(adj: &Adj, member: &[bool]) -> bool {
    (0..adj.len()).all(|v| member[v] || adj[v].iter().any(|&u| member[u as usize]))
}

pub fn is_proper_coloring(adj: &Adj, colors: &[u32]) -> bool {
    arcs(adj).iter().all(|&(u, v)| colors[u as usize] != colors[v as usize])
}

pub fn num_colors(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Hop distances between all pairs.
pub fn all_pairs(adj: &Adj) -> Vec<Vec<u32>> {
    (0..adj.len() as u32).map(|s| bfs_distances(adj, s)).collect()
}

/// Largest spanner distance between the endpoints of an original edge, or
/// `None` if some edge's endpoints are disconnected in the spanner.
pub fn stretch(adj: &Adj, spanner: &Adj) -> Option<u32> {
    let dist = all_pairs(spanner);
    let mut worst = 0;
    for (u, v) in arcs(adj) {
        let d = dist[u as usize][v as usize];
        if d == INF {
            return None;
        }
        worst = worst.max(d);
    }
    Some(worst)
}

/// Whether every label class induces a connected subgraph.
pub fn clusters_connected(adj: &Adj, labels: &[u32]) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut classes = BTreeSet::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        if !classes.insert(labels[s]) {
            return false;
        }
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                let v = v as usize;
                if !seen[v] && labels[v] == labels[s] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    true
}

/// Largest hop distance from a cluster's center to a member, measured
/// inside the cluster.
pub fn max_cluster_radius(adj: &Adj, labels: &[u32]) -> u32 {
    let mut worst = 0;
    for c in labels.iter().copied().collect::<BTreeSet<_>>() {
        let inside: Adj = adj
            .iter()
            .enumerate()
            .map(|(u, ns)| {
                if labels[u] != c {
                    return Vec::new();
                }
                ns.iter().copied().filter(|&v| labels[v as usize] == c).collect()
            })
            .collect();
        let d = bfs_distances(&inside, c);
        worst = worst.max(
            (0..adj.len()).filter(|&v| labels[v] == c).map(|v| d[v]).max().unwrap_or(0),
        );
    }
    worst
}

/// Expected `edge_map` output: every vertex satisfying `cond` with an
/// in-frontier neighbor.
pub fn frontier_step(adj: &Adj, frontier: &[u32], cond: impl Fn(u32) -> bool) -> Vec<u32> {
    let mut out = BTreeSet::new();
    for &u in frontier {
        for &v in &adj[u as usize] {
            if cond(v) {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

/// Unsigned LEB128 with zigzag-coded first gap relative to `source`.
pub fn byte_code(source: u32, sorted: &[u32]) -> Vec<u8> {
    fn push(out: &mut Vec<u8>, mut x: u64) {
        while x >= 0x80 {
            out.push((x as u8 & 0x7f) | 0x80);
            x >>= 7;
        }
        out.push(x as u8);
    }
    let mut out = Vec::new();
    let mut prev = None;
    for &v in sorted {
        match prev {
            None => {
                let d = v as i64 - source as i64;
                push(&mut out, ((d << 1) ^ (d >> 63)) as u64);
            }
            Some(p) => push(&mut out, (v - p) as u64),
        }
        prev = Some(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t4() -> Adj {
        undirected(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    }

    #[test]
    fn references_on_t4() {
        let g = t4();
        assert_eq!(bfs_distances(&g, 0), vec![0, 1, 1, 2]);
        assert_eq!(brandes(&g, 3).1, vec![0.0, 0.0, 2.0, 0.0]);
        assert_eq!(components(&g), vec![0; 4]);
        assert_eq!(coreness(&g), vec![2, 2, 2, 1]);
        assert_eq!(densest_exhaustive(&g), 1.0);
        assert!(clusters_connected(&g, &[0, 0, 0, 3]));
        assert!(!clusters_connected(&g, &[0, 1, 1, 0]));
        let p = pagerank(&g, 0.85, 50);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn byte_code_layout() {
        assert_eq!(byte_code(5, &[3, 4, 200]), vec![3, 1, 0xc4, 0x01]);
        assert!(byte_code(0, &[]).is_empty());
    }
}
