//! Definition-level brute-force oracles. Nothing here calls the library's
//! solvers; graphs are read only through their edge lists.

#![allow(dead_code)]

use std::collections::HashSet;

use mtcap_core::{BipartiteGraph, GeneralGraph, Rational};
use rand::Rng;

pub type Edge = (usize, usize);

pub struct Oracle {
    pub n_a: usize,
    pub n_b: usize,
    pub edges: Vec<Edge>,
    set: HashSet<Edge>,
}

impl Oracle {
    pub fn new(g: &BipartiteGraph) -> Self {
        Oracle {
            n_a: g.n_a(),
            n_b: g.n_b(),
            edges: g.edges().to_vec(),
            set: g.edges().iter().copied().collect(),
        }
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.set.contains(&(a, b))
    }

    pub fn is_matching(&self, m: &[Edge]) -> bool {
        m.iter().all(|e| self.set.contains(e))
            && m.iter().enumerate().all(|(i, e)| m[i + 1..].iter().all(|f| e.0 != f.0 && e.1 != f.1))
    }

    /// Two disjoint edges are joined when a host edge connects them.
    pub fn joined(&self, e: Edge, f: Edge) -> bool {
        self.has(e.0, f.1) || self.has(f.0, e.1)
    }

    pub fn is_induced(&self, m: &[Edge]) -> bool {
        self.is_matching(m)
            && m.iter().enumerate().all(|(i, &e)| m[i + 1..].iter().all(|&f| !self.joined(e, f)))
    }

    pub fn is_connected(&self, m: &[Edge]) -> bool {
        self.is_matching(m)
            && m.iter().enumerate().all(|(i, &e)| m[i + 1..].iter().all(|&f| self.joined(e, f)))
    }

    /// Every matching with exactly `k` edges, as subsets of the edge list.
    pub fn matchings(&self, k: usize) -> Vec<Vec<Edge>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.grow(0, k, &mut cur, &mut out);
        out
    }

    fn grow(&self, from: usize, k: usize, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..self.edges.len() {
            let e = self.edges[i];
            if cur.iter().all(|f| f.0 != e.0 && f.1 != e.1) {
                cur.push(e);
                self.grow(i + 1, k, cur, out);
                cur.pop();
            }
        }
    }

    pub fn matching_number(&self) -> usize {
        (1..=self.n_a.min(self.n_b)).take_while(|&k| !self.matchings(k).is_empty()).count()
    }

    /// Largest induced subset of `m`, by trying every subset.
    pub fn max_induced_subset(&self, m: &[Edge]) -> usize {
        (0u32..1 << m.len())
            .filter(|mask| {
                let sub: Vec<Edge> = (0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
                self.is_induced(&sub)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `α_k` straight from the definition; 1 when no `k`-matching exists.
    pub fn alpha_k(&self, k: usize) -> Rational {
        self.matchings(k)
            .iter()
            .map(|m| Rational::new(self.max_induced_subset(m) as i64, k as i64))
            .min()
            .unwrap_or_else(Rational::one)
    }

    pub fn alpha_upto(&self, k: usize) -> Rational {
        (1..=k).map(|l| self.alpha_k(l)).min().expect("k >= 1")
    }

    /// Largest connected matching by include/exclude over the edge list.
    /// Being connected is hereditary, so a failing partial set is cut.
    pub fn nu_c(&self) -> usize {
        fn rec(o: &Oracle, i: usize, cur: &mut Vec<Edge>, best: &mut usize) {
            *best = (*best).max(cur.len());
            if i == o.edges.len() || cur.len() + (o.edges.len() - i) <= *best {
                return;
            }
            let e = o.edges[i];
            if cur.iter().all(|&f| f.0 != e.0 && f.1 != e.1 && o.joined(e, f)) {
                cur.push(e);
                rec(o, i + 1, cur, best);
                cur.pop();
            }
            rec(o, i + 1, cur, best);
        }
        let mut best = 0;
        rec(self, 0, &mut Vec::new(), &mut best);
        best
    }

    /// Number of perfect matchings (balanced graphs only): the permanent of
    /// the biadjacency matrix, summed row by row over sets of used columns.
    pub fn perfect_matchings(&self) -> u64 {
        assert_eq!(self.n_a, self.n_b);
        let n = self.n_a;
        let mut ways = vec![0u64; 1 << n];
        ways[0] = 1;
        for used in 0usize..1 << n {
            let row = used.count_ones() as usize;
            if ways[used] == 0 || row == n {
                continue;
            }
            for b in 0..n {
                if used >> b & 1 == 0 && self.has(row, b) {
                    ways[used | 1 << b] += ways[used];
                }
            }
        }
        ways[(1 << n) - 1]
    }

    /// Largest `k` with `k`-subsets of both sides forming a complete bipartite subgraph.
    pub fn max_balanced_biclique(&self) -> usize {
        let mut best = 0;
        for ma in 0u32..1 << self.n_a {
            let sa: Vec<usize> = (0..self.n_a).filter(|i| ma >> i & 1 == 1).collect();
            let common = (0..self.n_b).filter(|&b| sa.iter().all(|&a| self.has(a, b))).count();
            best = best.max(sa.len().min(common));
        }
        best
    }

    /// Whether the graph on `A ∪ B` is connected (isolated vertices count).
    pub fn is_connected_graph(&self) -> bool {
        let n = self.n_a + self.n_b;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let (x, y) = (a, self.n_a + b);
                let other = if x == v { y } else if y == v { x } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Shortest cycle length by BFS from every vertex; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n_a + self.n_b;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(self.n_a + b);
            adj[self.n_a + b].push(a);
        }
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::from([s]);
            dist[s] = 0;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

pub fn general_has(h: &GeneralGraph, u: usize, v: usize) -> bool {
    h.edges().contains(&(u.min(v), u.max(v)))
}

/// Independence number by trying every vertex subset.
pub fn mis(h: &GeneralGraph) -> usize {
    best_subset(h, false)
}

/// Clique number by trying every vertex subset.
pub fn clique(h: &GeneralGraph) -> usize {
    best_subset(h, true)
}

fn best_subset(h: &GeneralGraph, want_edges: bool) -> usize {
    let n = h.n();
    let mut adj = vec![0u32; n];
    for &(u, v) in h.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).filter(|i| mask >> i & 1 == 1).all(|i| {
                let others = mask & !(1 << i);
                if want_edges {
                    adj[i] & others == others
                } else {
                    adj[i] & others == 0
                }
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn random_bipartite(n_a: usize, n_b: usize, p: f64, rng: &mut impl Rng) -> BipartiteGraph {
    let edges: Vec<Edge> = (0..n_a)
        .flat_map(|a| (0..n_b).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::new(n_a, n_b, edges).unwrap()
}

pub fn random_general(n: usize, p: f64, rng: &mut impl Rng) -> GeneralGraph {
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    GeneralGraph::new(n, edges).unwrap()
}

/// Every bipartite graph with the given side sizes.
pub fn all_bipartite(n_a: usize, n_b: usize) -> impl Iterator<Item = BipartiteGraph> {
    let cells = n_a * n_b;
    (0u64..1 << cells).map(move |mask| {
        let edges = (0..cells).filter(|c| mask >> c & 1 == 1).map(|c| (c / n_b, c % n_b));
        BipartiteGraph::new(n_a, n_b, edges).unwrap()
    })
}

/// Every labeled simple graph on `n` vertices.
pub fn all_general(n: usize) -> impl Iterator<Item = GeneralGraph> {
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        GeneralGraph::new(n, edges).unwrap()
    })
}

/// Connected bipartite graphs with at most four vertices per side.
pub fn connected_corpus() -> Vec<BipartiteGraph> {
    let mut out = Vec::new();
    for n_a in 1..=4 {
        for n_b in 1..=4 {
            out.extend(all_bipartite(n_a, n_b).filter(|g| Oracle::new(g).is_connected_graph()));
        }
    }
    out
}
