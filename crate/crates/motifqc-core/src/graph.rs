//! Simple undirected graphs with dense pair-indexed adjacency.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
}

/// An immutable simple undirected graph.
///
/// Keeps three synchronized views: a row-bitset adjacency matrix (for O(1)
/// pair lookups and word-parallel intersections), sorted neighbor lists (the
/// "arbitrary but consistent ordering" answering i-th-neighbor queries), and
/// per-vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    m: u64,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Edges may be given in any
    /// order and orientation; self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let words = n.div_ceil(64).max(1);
        let mut g = Graph {
            n,
            words,
            rows: vec![0u64; n * words],
            adj: vec![Vec::new(); n],
            degrees: vec![0; n],
            m: 0,
        };
        for &(a, b) in edges {
            if a as usize >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b as usize >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if g.bit(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.m += 1;
        }
        for u in 0..n {
            let mut list: Vec<u32> = Vec::new();
            let base = u * words;
            for w in 0..words {
                let mut bits = g.rows[base + w];
                while bits != 0 {
                    let tz = bits.trailing_zeros();
                    list.push((w * 64) as u32 + tz);
                    bits &= bits - 1;
                }
            }
            g.degrees[u] = list.len() as u32;
            g.adj[u] = list;
        }
        Ok(g)
    }

    /// Builds a graph by evaluating `edge_fn(u, v)` for every pair `u < v`,
    /// in row-major order. Used by the seeded generators.
    pub fn from_pair_fn(n: usize, mut edge_fn: impl FnMut(u32, u32) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut m = 0u64;
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if edge_fn(u, v) {
                    rows[u as usize * words + v as usize / 64] |= 1u64 << (v % 64);
                    rows[v as usize * words + u as usize / 64] |= 1u64 << (u % 64);
                    // Pairs arrive in increasing order, so pushes keep both
                    // lists sorted.
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                    m += 1;
                }
            }
        }
        let degrees = adj.iter().map(|l| l.len() as u32).collect();
        Graph {
            n,
            words,
            rows,
            adj,
            degrees,
            m,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_pair_fn(n, |_, _| false)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_pair_fn(n, |_, _| true)
    }

    /// Path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Self {
        Self::from_pair_fn(n, |u, v| v == u + 1)
    }

    /// Cycle on n vertices (n >= 3).
    pub fn cycle(n: usize) -> Self {
        Self::from_pair_fn(n, |u, v| v == u + 1 || (u == 0 && v as usize == n - 1))
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Self {
        Self::from_pair_fn(n, |u, _| u == 0)
    }

    #[inline]
    fn bit(&self, u: u32, v: u32) -> bool {
        self.rows[u as usize * self.words + v as usize / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, u: u32, v: u32) {
        self.rows[u as usize * self.words + v as usize / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u != v);
        self.bit(u, v)
    }

    #[inline]
    pub fn degree(&self, u: u32) -> u32 {
        self.degrees[u as usize]
    }

    /// Neighbors of `u` in strictly increasing order.
    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    /// The adjacency row of `u` as a bitset (`words_per_row` words).
    #[inline]
    pub(crate) fn row(&self, u: u32) -> &[u64] {
        let base = u as usize * self.words;
        &self.rows[base..base + self.words]
    }

    #[inline]
    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32).flat_map(move |u| {
            self.adj[u as usize]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Degeneracy via iterative minimum-degree peeling.
    pub fn degeneracy(&self) -> u32 {
        peel_degeneracy(self.n, |u| &self.adj[u])
    }

    /// The induced subgraph on `vertices` (must be sorted and distinct).
    /// Vertex `i` of the result corresponds to `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Graph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let d = vertices.len();
        Graph::from_pair_fn(d, |i, j| {
            self.has_edge(vertices[i as usize], vertices[j as usize])
        })
    }
}

/// Degeneracy of an adjacency-list graph: repeatedly remove a minimum-degree
/// vertex; the answer is the largest degree seen at removal time.
pub fn peel_degeneracy<'a, F>(n: usize, neighbors: F) -> u32
where
    F: Fn(usize) -> &'a [u32],
{
    if n == 0 {
        return 0;
    }
    let mut deg: Vec<u32> = (0..n).map(|u| neighbors(u).len() as u32).collect();
    let max_deg = *deg.iter().max().unwrap() as usize;
    // Bucket queue over current degrees; entries go stale when a degree
    // drops and are skipped on pop.
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_deg + 1];
    for (u, &d) in deg.iter().enumerate() {
        buckets[d as usize].push(u as u32);
    }
    let mut removed = vec![false; n];
    let mut degeneracy = 0u32;
    let mut floor = 0usize;
    let mut remaining = n;
    while remaining > 0 && floor <= max_deg {
        let Some(u) = buckets[floor].pop() else {
            floor += 1;
            continue;
        };
        let u = u as usize;
        if removed[u] || deg[u] as usize != floor {
            continue;
        }
        removed[u] = true;
        remaining -= 1;
        degeneracy = degeneracy.max(floor as u32);
        for &v in neighbors(u) {
            let v = v as usize;
            if !removed[v] {
                let dv = deg[v] as usize;
                deg[v] = (dv - 1) as u32;
                buckets[dv - 1].push(v as u32);
                if dv - 1 < floor {
                    floor = dv - 1;
                }
            }
        }
    }
    degeneracy
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_builds_consistent_views() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 1), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(2), 2);
        let total: u32 = (0..4).map(|u| g.degree(u)).sum();
        assert_eq!(total as u64, 2 * g.edge_count());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange(3, 3))
        );
    }

    #[test]
    fn neighbor_lists_are_sorted() {
        let g = Graph::from_pair_fn(70, |u, v| (u + v) % 3 == 0);
        for u in 0..70 {
            let l = g.neighbors(u);
            assert!(l.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn degeneracy_known_values() {
        assert_eq!(Graph::empty(10).degeneracy(), 0);
        assert_eq!(Graph::complete(10).degeneracy(), 9);
        assert_eq!(Graph::path(10).degeneracy(), 1);
        assert_eq!(Graph::cycle(10).degeneracy(), 2);
        assert_eq!(Graph::star(10).degeneracy(), 1);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::from_edges(5, &[(0, 2), (2, 4), (1, 3)]).unwrap();
        let sub = g.induced_subgraph(&[0, 2, 4]);
        assert_eq!(sub.n(), 3);
        assert!(sub.has_edge(0, 1));
        assert!(sub.has_edge(1, 2));
        assert!(!sub.has_edge(0, 2));
    }
}
