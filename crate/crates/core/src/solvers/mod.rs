//! Exact solvers for independent sets, cliques and connected matchings, plus
//! the two independent-set floors (Turán greedy and the Ramsey bound).
//!
//! Every exact solver returns the lexicographically smallest optimum.

mod clique;

pub(crate) use clique::{mis_size_small, Bits};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, GeneralGraph};
use crate::matching::Matching;
use crate::{Edge, Rational};

/// Sorted, duplicate-free vertex list of some [`GeneralGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Maximum clique, lexicographically smallest among maximum ones.
pub fn max_clique(h: &GeneralGraph) -> VertexSet {
    max_clique_budgeted(h, None).expect("unbounded search cannot exceed its budget")
}

pub fn max_clique_budgeted(h: &GeneralGraph, budget: Option<u64>) -> Result<VertexSet> {
    let adj = clique::graph_bits(h);
    clique::max_clique_bits(&adj, &[], budget).map(VertexSet::new)
}

/// Maximum independent set, lexicographically smallest among maximum ones.
pub fn max_independent_set(h: &GeneralGraph) -> VertexSet {
    max_independent_set_budgeted(h, None).expect("unbounded search cannot exceed its budget")
}

pub fn max_independent_set_budgeted(h: &GeneralGraph, budget: Option<u64>) -> Result<VertexSet> {
    let n = h.n();
    let adj = clique::adjacency_bits(n, |v| (0..n).filter(|&w| w != v && !h.has_edge(v, w)).collect());
    clique::max_clique_bits(&adj, &[], budget).map(VertexSet::new)
}

/// Independence number of a graph on at most 64 vertices.
pub fn independence_number_small(h: &GeneralGraph) -> usize {
    assert!(h.n() <= 64, "small solver handles at most 64 vertices");
    let masks: Vec<u64> = (0..h.n())
        .map(|v| h.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    mis_size_small(&masks)
}

/// Edge-compatibility graph of `g`: vertices are the edges of `g` (in sorted
/// order); two are adjacent when they are vertex-disjoint and joined by an
/// edge of `g`. Its cliques are exactly the connected matchings of `g`.
pub fn connected_matching_graph(g: &BipartiteGraph) -> GeneralGraph {
    let edges = g.edges();
    let mut pairs = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for (j, &f) in edges.iter().enumerate().skip(i + 1) {
            if e.0 != f.0 && e.1 != f.1 && g.edges_joined(e, f) {
                pairs.push((i, j));
            }
        }
    }
    GeneralGraph::new(edges.len(), pairs).expect("pairs are in range")
}

/// Adjacency of [`connected_matching_graph`] plus its two partitions into
/// stars (edges sharing an A endpoint, resp. a B endpoint).
fn connected_matching_bits(g: &BipartiteGraph) -> (Vec<Bits>, Vec<Vec<Bits>>) {
    let h = connected_matching_graph(g);
    let m = g.num_edges();
    let mut by_a = vec![Bits::new(m); g.n_a()];
    let mut by_b = vec![Bits::new(m); g.n_b()];
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        by_a[a].insert(i);
        by_b[b].insert(i);
    }
    by_a.retain(|c| !c.is_empty());
    by_b.retain(|c| !c.is_empty());
    (clique::graph_bits(&h), vec![by_a, by_b])
}

fn edges_at(g: &BipartiteGraph, idx: &[usize]) -> Vec<Edge> {
    idx.iter().map(|&i| g.edges()[i]).collect()
}

/// Maximum connected matching of `g`.
pub fn max_connected_matching(g: &BipartiteGraph, budget: Option<u64>) -> Result<Matching> {
    let (adj, parts) = connected_matching_bits(g);
    let idx = clique::max_clique_bits(&adj, &parts, budget)?;
    Matching::new(g, edges_at(g, &idx))
}

/// `ν_c(g)`, without producing a witness (cheaper than
/// [`max_connected_matching`]).
pub fn connected_matching_number(g: &BipartiteGraph, budget: Option<u64>) -> Result<usize> {
    let (adj, parts) = connected_matching_bits(g);
    clique::clique_size_bits(&adj, &parts, budget)
}

/// `ω(h)`, without producing a witness.
pub fn clique_number(h: &GeneralGraph) -> usize {
    clique::clique_size_bits(&clique::graph_bits(h), &[], None).expect("no budget")
}

/// A connected matching with at least `k` edges, if one exists.
pub fn connected_matching_of_size(
    g: &BipartiteGraph,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<Matching>> {
    let (adj, parts) = connected_matching_bits(g);
    let found = clique::clique_of_size_bits(&adj, &parts, k, budget)?;
    found
        .map(|idx| Matching::new(g, edges_at(g, &idx)))
        .transpose()
}

/// Minimum-degree greedy independent set: repeatedly take a vertex of minimum
/// remaining degree (smallest index on ties) and delete it with its
/// neighbours. The result has at least `⌈n / (d_avg + 1)⌉` vertices.
pub fn turan_greedy(h: &GeneralGraph) -> VertexSet {
    let n = h.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut picked = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("some vertex remains");
        picked.push(v);
        let mut gone = vec![v];
        gone.extend(h.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &x in &gone {
            alive[x] = false;
            remaining -= 1;
        }
        for &x in &gone {
            for &y in h.neighbors(x) {
                if alive[y] {
                    degree[y] -= 1;
                }
            }
        }
    }
    VertexSet::new(picked)
}

/// `⌈n / (d_avg + 1)⌉` for `h`.
pub fn turan_floor(h: &GeneralGraph) -> usize {
    if h.n() == 0 {
        return 0;
    }
    let v = Rational::from_int(h.n() as i64) / (h.average_degree() + Rational::one());
    v.ceil_int() as usize
}

/// Value of `log₂ n / log₂(k / log₂ n)` together with a certified integer floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RamseyBound {
    pub value: f64,
    /// `value` rounded down to a multiple of `1e-6`.
    pub lower: Rational,
    pub floor: u64,
}

/// Independent-set floor for an `n`-vertex graph without a `(k+1)`-clique,
/// valid when `k ≥ 2·log₂ n`. Logarithms are base 2.
pub fn ramsey_bound(n: u64, k: u64) -> Result<RamseyBound> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} < 2")));
    }
    let log_n = (n as f64).log2();
    if (k as f64) < 2.0 * log_n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} < 2·log2(n) = {}",
            2.0 * log_n
        )));
    }
    let ratio = k as f64 / log_n;
    if ratio <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "k / log2(n) = {ratio} is not above 1"
        )));
    }
    let value = log_n / ratio.log2();
    let near = value.round();
    let floor = if (value - near).abs() < 1e-9 {
        near
    } else {
        value.floor()
    };
    let lower = Rational::new((value * 1e6).floor() as i64, 1_000_000);
    Ok(RamseyBound {
        value,
        lower,
        floor: floor as u64,
    })
}

/// Largest `k` such that `g` contains `K_{k,k}` (subset enumeration over side A).
pub fn max_balanced_biclique(g: &BipartiteGraph) -> usize {
    assert!(g.n_a() <= 24, "biclique enumeration is exponential in |A|");
    let mut best = 0;
    for mask in 1u32..(1 << g.n_a()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let common = (0..g.n_b())
            .filter(|&b| (0..g.n_a()).all(|a| mask >> a & 1 == 0 || g.has_edge(a, b)))
            .count();
        best = best.max(size.min(common));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mis_examples() {
        assert_eq!(max_independent_set(&GeneralGraph::empty(4)).members(), &[0, 1, 2, 3]);
        assert_eq!(max_independent_set(&GeneralGraph::complete(4)).members(), &[0]);
        assert_eq!(max_independent_set(&GeneralGraph::cycle(5)).members(), &[0, 2]);
        assert_eq!(max_independent_set(&GeneralGraph::empty(0)).len(), 0);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique(&GeneralGraph::complete(4)).len(), 4);
        assert_eq!(max_clique(&GeneralGraph::empty(3)).members(), &[0]);
        assert_eq!(max_clique(&GeneralGraph::empty(0)).len(), 0);
        assert_eq!(max_clique(&GeneralGraph::cycle(5)).members(), &[0, 1]);
    }

    #[test]
    fn connected_matching_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        assert_eq!(connected_matching_number(&k33, None).unwrap(), 3);
        let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(connected_matching_number(&two, None).unwrap(), 1);
        let c6 = BipartiteGraph::cycle(3);
        let m = max_connected_matching(&c6, None).unwrap();
        assert_eq!(m.len(), 3);
        assert!(crate::matching::classify(&c6, m.edges()).unwrap().is_connected);
        assert_eq!(connected_matching_number(&BipartiteGraph::empty(2, 2), None).unwrap(), 0);
    }

    #[test]
    fn connected_matching_budget() {
        let g = BipartiteGraph::complete(4, 4);
        assert_eq!(
            max_connected_matching(&g, Some(2)),
            Err(Error::BudgetExceeded { budget: 2 })
        );
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_greedy(&GeneralGraph::empty(5)).len(), 5);
        assert_eq!(turan_greedy(&GeneralGraph::complete(4)).len(), 1);
        let p3 = GeneralGraph::path(3);
        assert_eq!(turan_greedy(&p3).members(), &[0, 2]);
        assert_eq!(turan_floor(&p3), 2);
        assert_eq!(turan_floor(&GeneralGraph::complete(4)), 1);
    }

    #[test]
    fn ramsey_examples() {
        let r = ramsey_bound(16, 8).unwrap();
        assert_eq!(r.floor, 4);
        assert_eq!(r.value, 4.0);
        assert_eq!(ramsey_bound(16, 16).unwrap().floor, 2);
        let err = ramsey_bound(4, 2).unwrap_err();
        assert!(err.to_string().contains("k = 2 < 2·log2(n)"));
        assert!(ramsey_bound(1, 8).is_err());
    }

    #[test]
    fn biclique_examples() {
        assert_eq!(max_balanced_biclique(&BipartiteGraph::complete(3, 3)), 3);
        assert_eq!(max_balanced_biclique(&BipartiteGraph::empty(3, 3)), 0);
        assert_eq!(max_balanced_biclique(&BipartiteGraph::cycle(3)), 1);
    }
}
