//! Immutable graph types shared by every other module.
//!
//! A [`BipartiteGraph`] stores side-local indices: `a ∈ [0, n_a)` and
//! `b ∈ [0, n_b)`. When a single vertex space is needed (cycle search,
//! girth) side-B vertex `b` becomes `n_a + b`.

mod cycles;
mod density;

pub use cycles::{
    break_short_cycles, count_short_cycles, enumerate_cycles, girth, Cycle, CycleSearch,
    DEFAULT_CYCLE_BUDGET,
};
pub use density::{
    balanced_density_scan, DensityMethod, DensityReport, DensityScan, DensityViolation,
};

use serde::Serialize;

use crate::error::{Error, Result, Side};
use crate::matching::Matching;
use crate::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    /// Sorted, duplicate-free `(a, b)` pairs.
    edges: Vec<Edge>,
    #[serde(skip)]
    adj_a: Vec<Vec<usize>>,
    #[serde(skip)]
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds a graph from `(a, b)` pairs. Duplicate pairs collapse to one edge.
    pub fn new(n_a: usize, n_b: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n_a {
                return Err(Error::EndpointOutOfRange {
                    side: Side::A,
                    index: a,
                    bound: n_a,
                });
            }
            if b >= n_b {
                return Err(Error::EndpointOutOfRange {
                    side: Side::B,
                    index: b,
                    bound: n_b,
                });
            }
            list.push((a, b));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj_a = vec![Vec::new(); n_a];
        let mut adj_b = vec![Vec::new(); n_b];
        for &(a, b) in &list {
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        for l in adj_b.iter_mut() {
            l.sort_unstable();
        }
        Ok(BipartiteGraph {
            n_a,
            n_b,
            edges: list,
            adj_a,
            adj_b,
        })
    }

    pub fn empty(n_a: usize, n_b: usize) -> Self {
        Self::new(n_a, n_b, []).expect("edgeless graph is always valid")
    }

    /// Complete bipartite graph `K_{n_a, n_b}`.
    pub fn complete(n_a: usize, n_b: usize) -> Self {
        let edges = (0..n_a).flat_map(|a| (0..n_b).map(move |b| (a, b)));
        Self::new(n_a, n_b, edges).expect("complete graph is valid")
    }

    /// Even cycle `C_{2m}` on sides of size `m`: `a_i – b_i – a_{i+1}`.
    pub fn cycle(m: usize) -> Self {
        assert!(m >= 2, "bipartite cycle needs at least 2 vertices per side");
        let edges = (0..m).flat_map(|i| [(i, i), ((i + 1) % m, i)]);
        Self::new(m, m, edges).expect("cycle is valid")
    }

    /// Path alternating `a0 – b0 – a1 – b1 – …` with `len` edges.
    pub fn path(len: usize) -> Self {
        let n_a = len / 2 + 1;
        let n_b = len.div_ceil(2);
        let edges = (0..len).map(|i| if i % 2 == 0 { (i / 2, i / 2) } else { (i / 2 + 1, i / 2) });
        Self::new(n_a, n_b, edges).expect("path is valid")
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn num_vertices(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.n_a == self.n_b
    }

    pub fn require_balanced(&self) -> Result<usize> {
        if self.is_balanced() {
            Ok(self.n_a)
        } else {
            Err(Error::Unbalanced {
                n_a: self.n_a,
                n_b: self.n_b,
            })
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n_a && self.adj_a[a].binary_search(&b).is_ok()
    }

    /// Position of `(a, b)` in [`edges`](Self::edges).
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a, b)).ok()
    }

    pub fn neighbors_a(&self, a: usize) -> &[usize] {
        &self.adj_a[a]
    }

    pub fn neighbors_b(&self, b: usize) -> &[usize] {
        &self.adj_b[b]
    }

    /// True when some edge of the graph joins an endpoint of `e` to an endpoint of `f`.
    pub fn edges_joined(&self, e: Edge, f: Edge) -> bool {
        self.has_edge(e.0, f.1) || self.has_edge(f.0, e.1)
    }

    /// Graph on the unified vertex space `A ∪ B` (B shifted by `n_a`).
    pub fn to_general(&self) -> GeneralGraph {
        GeneralGraph::new(
            self.n_a + self.n_b,
            self.edges.iter().map(|&(a, b)| (a, self.n_a + b)),
        )
        .expect("bipartite edges are never loops")
    }

    /// Maps a unified vertex back to its side-local index.
    pub fn split_vertex(&self, v: usize) -> (Side, usize) {
        if v < self.n_a {
            (Side::A, v)
        } else {
            (Side::B, v - self.n_a)
        }
    }

    /// Maps a unified-space edge `{u, v}` to `(a, b)`.
    pub fn unified_to_edge(&self, u: usize, v: usize) -> Edge {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        debug_assert!(lo < self.n_a && hi >= self.n_a);
        (lo, hi - self.n_a)
    }

    pub fn without_edges(&self, removed: &[Edge]) -> BipartiteGraph {
        let mut drop = removed.to_vec();
        drop.sort_unstable();
        let keep = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err());
        BipartiteGraph::new(self.n_a, self.n_b, keep).expect("subgraph stays in range")
    }

    /// Number of edges spanned by the vertex sets `sa ⊆ A`, `sb ⊆ B`.
    pub fn edges_between(&self, sa: &[usize], sb: &[usize]) -> usize {
        let mut sorted_b = sb.to_vec();
        sorted_b.sort_unstable();
        sa.iter()
            .map(|&a| {
                self.adj_a[a]
                    .iter()
                    .filter(|b| sorted_b.binary_search(b).is_ok())
                    .count()
            })
            .sum()
    }

    /// Conflict graph of `m`: vertex `i` is `m[i]`; `i ~ j` when some host edge
    /// joins an endpoint of `m[i]` to an endpoint of `m[j]`.
    ///
    /// Independent sets of the result are exactly the induced submatchings of
    /// `m`; cliques are the connected submatchings.
    pub fn contract_matching(&self, m: &Matching) -> Result<GeneralGraph> {
        m.validate(self)?;
        Ok(self.contract_unchecked(m.edges()))
    }

    pub(crate) fn contract_unchecked(&self, edges: &[Edge]) -> GeneralGraph {
        let k = edges.len();
        let mut pairs = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if self.edges_joined(edges[i], edges[j]) {
                    pairs.push((i, j));
                }
            }
        }
        GeneralGraph::from_sorted_pairs(k, pairs)
    }
}

/// Simple undirected graph on `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralGraph {
    n: usize,
    /// Sorted pairs with `u < v`.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl GeneralGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index: w, bound: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_pairs(n, list))
    }

    fn from_sorted_pairs(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        GeneralGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_pairs(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        Self::from_sorted_pairs(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// `2|E| / n` as an exact rational (zero for the empty graph).
    pub fn average_degree(&self) -> crate::Rational {
        if self.n == 0 {
            crate::Rational::zero()
        } else {
            crate::Rational::new(2 * self.edges.len() as i64, self.n as i64)
        }
    }

    pub fn complement(&self) -> GeneralGraph {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        Self::from_sorted_pairs(self.n, pairs)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> GeneralGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut pairs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    pairs.push((i, j));
                }
            }
        }
        GeneralGraph::new(vertices.len(), pairs).expect("induced subgraph is valid")
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }
}
