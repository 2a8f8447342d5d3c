//! Reduction gadgets and the maps that carry solutions across them.
//!
//! Balanced bipartite graphs on `n` vertices per side use index `i` on side A
//! for `u_i` and index `i` on side B for `v_i`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, GeneralGraph};
use crate::matching::Matching;
use crate::solvers::VertexSet;
use crate::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfCover {
    pub graph: BipartiteGraph,
    pub n: usize,
    pub seed: u64,
}

/// Random half-cover of `K_n`: for each pair `i < j`, in ascending order, one
/// 64-bit ChaCha8 draw decides the edge; a top bit of 0 adds `(u_i, v_j)` and a
/// top bit of 1 adds `(u_j, v_i)`.
pub fn gen_half_cover(n: usize, seed: u64) -> Result<HalfCover> {
    if n == 0 {
        return Err(Error::InvalidParameter("half-cover needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_u64() >> 63 == 0 {
                edges.push((i, j));
            } else {
                edges.push((j, i));
            }
        }
    }
    Ok(HalfCover {
        graph: BipartiteGraph::new(n, n, edges)?,
        n,
        seed,
    })
}

/// True when `g` has no diagonal edge and covers every pair `{i, j}` in at
/// least one orientation.
pub fn validate_half_cover(g: &BipartiteGraph) -> Result<bool> {
    let n = g.require_balanced()?;
    if (0..n).any(|i| g.has_edge(i, i)) {
        return Ok(false);
    }
    Ok((0..n).all(|i| (i + 1..n).all(|j| g.has_edge(i, j) || g.has_edge(j, i))))
}

/// `G ⊟ H`: all diagonal edges `(u_i, v_i)`, plus each off-diagonal edge of
/// `h` whose index pair is an edge of `g`.
pub fn boxminus(g: &GeneralGraph, h: &BipartiteGraph) -> Result<BipartiteGraph> {
    let n = h.require_balanced()?;
    if g.n() != n {
        return Err(Error::SizeMismatch(format!(
            "general graph has {} vertices, bipartite graph has {n} per side",
            g.n()
        )));
    }
    let lifted = h
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j)| i != j && g.has_edge(i, j));
    BipartiteGraph::new(n, n, (0..n).map(|i| (i, i)).chain(lifted))
}

/// Clique of `g` from a connected matching of `G ⊟ H`: the indices of its
/// diagonal edges.
pub fn boxminus_clique(m: &Matching) -> VertexSet {
    VertexSet::new(m.edges().iter().filter(|e| e.0 == e.1).map(|e| e.0).collect())
}

/// Diagonal matching of a clique; connected in `G ⊟ H` when `h` is a
/// half-cover.
pub fn boxminus_matching(clique: &VertexSet) -> Matching {
    Matching::from_edges_unchecked(clique.members().iter().map(|&i| (i, i)).collect())
}

/// Gadget with a connected matching covering a whole side exactly when `g`
/// has a connected matching of size `k`.
///
/// `g` has `N` vertices per side; the output has `n = 2N - k`. Side A holds
/// the original `A` at `0..N` and the new `A'` at `N..n`; side B holds `B` at
/// `0..N` and `B'` at `N..n`. Edges: those of `g`, all of `A' × (B ∪ B')`, and
/// all of `(A ∪ A') × B'`.
pub fn perfect_cm_gadget(g: &BipartiteGraph, k: usize) -> Result<BipartiteGraph> {
    let big_n = g.require_balanced()?;
    if k == 0 || k > big_n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} is outside 1..={big_n}"
        )));
    }
    let n = 2 * big_n - k;
    let mut edges = g.edges().to_vec();
    for a in big_n..n {
        edges.extend((0..n).map(|b| (a, b)));
    }
    for b in big_n..n {
        edges.extend((0..big_n).map(|a| (a, b)));
    }
    BipartiteGraph::new(n, n, edges)
}

/// Extends a connected matching of `g` with `k` edges to a perfect connected
/// matching of [`perfect_cm_gadget`]`(g, k)`: the `N - k` free vertices of `A`
/// are paired in order with `B'`, and those of `B` with `A'`.
pub fn perfect_cm_extend(g: &BipartiteGraph, k: usize, m: &Matching) -> Result<Matching> {
    let big_n = g.require_balanced()?;
    m.validate(g)?;
    if m.len() != k {
        return Err(Error::SizeMismatch(format!(
            "matching has {} edges, expected {k}",
            m.len()
        )));
    }
    let mut edges = m.edges().to_vec();
    let free_a = (0..big_n).filter(|&a| m.edges().iter().all(|e| e.0 != a));
    let free_b = (0..big_n).filter(|&b| m.edges().iter().all(|e| e.1 != b));
    edges.extend(free_a.zip(big_n..));
    edges.extend(free_b.zip(big_n..).map(|(b, a)| (a, b)));
    let gadget = perfect_cm_gadget(g, k)?;
    Matching::new(&gadget, edges)
}

/// Edges of a gadget matching that lie inside the original graph.
pub fn perfect_cm_restrict(g: &BipartiteGraph, m: &Matching) -> Matching {
    let big_n = g.n_a();
    Matching::from_edges_unchecked(
        m.edges()
            .iter()
            .copied()
            .filter(|&(a, b)| a < big_n && b < big_n)
            .collect(),
    )
}

/// Balanced bipartite graph on `n` per side with the diagonal `(v_i, v'_i)`
/// and `(v_i, v'_j)` for every edge `{i, j}` of `h` with `i < j`. The diagonal
/// is its only perfect matching, and induced sub-matchings of it correspond to
/// independent sets of `h`.
pub fn mis_gadget(h: &GeneralGraph) -> BipartiteGraph {
    let n = h.n();
    BipartiteGraph::new(n, n, (0..n).map(|i| (i, i)).chain(h.edges().iter().copied()))
        .expect("indices are in range")
}

/// Diagonal sub-matching for an independent set of `h`.
pub fn mis_matching(set: &VertexSet) -> Matching {
    Matching::from_edges_unchecked(set.members().iter().map(|&i| (i, i)).collect())
}

/// Index layout of [`biclique_cm_gadget`] for a graph with `n` per side.
///
/// Side A: `A₁` at `0..n`, `B'` at `n..2n`, `A₂` at `2n..3n`.
/// Side B: `B₁` at `0..n`, `A'` at `n..2n`, `B₂` at `2n..3n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BicliqueLayout {
    pub n: usize,
}

impl BicliqueLayout {
    pub fn a1(&self, i: usize) -> usize {
        i
    }
    pub fn b_prime(&self, i: usize) -> usize {
        self.n + i
    }
    pub fn a2(&self, i: usize) -> usize {
        2 * self.n + i
    }
    pub fn b1(&self, i: usize) -> usize {
        i
    }
    pub fn a_prime(&self, i: usize) -> usize {
        self.n + i
    }
    pub fn b2(&self, i: usize) -> usize {
        2 * self.n + i
    }
}

/// Gadget from biclique to connected matching.
///
/// A copy of `g` on `(A₁, B₁)`; bicliques `(A₁, A')`, `(B', B₁)` and
/// `(A₂, B₂)`; every vertex of `A₁ ∪ B'` joined to all of `B₂`, and every
/// vertex of `B₁ ∪ A'` joined to all of `A₂`. See [`BicliqueLayout`].
pub fn biclique_cm_gadget(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    let n = g.require_balanced()?;
    let l = BicliqueLayout { n };
    let mut edges: Vec<Edge> = g.edges().iter().map(|&(a, b)| (l.a1(a), l.b1(b))).collect();
    for i in 0..n {
        for j in 0..n {
            edges.push((l.a1(i), l.a_prime(j)));
            edges.push((l.b_prime(i), l.b1(j)));
            edges.push((l.a2(i), l.b2(j)));
            edges.push((l.a1(i), l.b2(j)));
            edges.push((l.b_prime(i), l.b2(j)));
            edges.push((l.a2(i), l.b1(j)));
            edges.push((l.a2(i), l.a_prime(j)));
        }
    }
    BipartiteGraph::new(3 * n, 3 * n, edges)
}

/// Connected matching of size `2n + k` built from a balanced biclique
/// `(r, s)` of `g` with `k` vertices per side: `R` matched into `A'`, `S`
/// into `B'`, the rest of `A₁` into `B₂`, the rest of `B₁` into `A₂`, and the
/// leftover `A₂`, `B₂` vertices with each other.
pub fn biclique_cm_matching(g: &BipartiteGraph, r: &[usize], s: &[usize]) -> Result<Matching> {
    let n = g.require_balanced()?;
    if r.len() != s.len() {
        return Err(Error::SizeMismatch("biclique sides differ in size".into()));
    }
    let l = BicliqueLayout { n };
    let mut edges = Vec::new();
    edges.extend(r.iter().enumerate().map(|(j, &a)| (l.a1(a), l.a_prime(j))));
    edges.extend(s.iter().enumerate().map(|(j, &b)| (l.b_prime(j), l.b1(b))));
    let rest_a: Vec<usize> = (0..n).filter(|a| !r.contains(a)).collect();
    let rest_b: Vec<usize> = (0..n).filter(|b| !s.contains(b)).collect();
    edges.extend(rest_a.iter().enumerate().map(|(j, &a)| (l.a1(a), l.b2(j))));
    edges.extend(rest_b.iter().enumerate().map(|(j, &b)| (l.a2(j), l.b1(b))));
    let k = r.len();
    edges.extend((0..k).map(|j| (l.a2(n - k + j), l.b2(n - k + j))));
    Matching::new(&biclique_cm_gadget(g)?, edges)
}

/// The sets `X_A ⊆ A₁` and `X_B ⊆ B₁` covered by the `(A₁, A')` and
/// `(B', B₁)` edges of a gadget matching.
pub fn biclique_cm_extract(n: usize, m: &Matching) -> (Vec<usize>, Vec<usize>) {
    let l = BicliqueLayout { n };
    let mut xa: Vec<usize> = m
        .edges()
        .iter()
        .filter(|&&(a, b)| a < n && (l.a_prime(0)..l.a_prime(n)).contains(&b))
        .map(|e| e.0)
        .collect();
    let mut xb: Vec<usize> = m
        .edges()
        .iter()
        .filter(|&&(a, b)| (l.b_prime(0)..l.b_prime(n)).contains(&a) && b < n)
        .map(|e| e.1)
        .collect();
    xa.sort_unstable();
    xb.sort_unstable();
    (xa, xb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::classify;
    use crate::solvers::{connected_matching_number, max_balanced_biclique};

    fn nu(g: &BipartiteGraph) -> usize {
        connected_matching_number(g, None).unwrap()
    }

    #[test]
    fn half_cover_examples() {
        let h = gen_half_cover(1, 7).unwrap();
        assert_eq!(h.graph.num_edges(), 0);
        let h = gen_half_cover(2, 7).unwrap();
        assert_eq!(h.graph.num_edges(), 1);
        assert!(h.graph.has_edge(0, 1) ^ h.graph.has_edge(1, 0));
        assert!(gen_half_cover(0, 1).is_err());
        assert_eq!(gen_half_cover(12, 5).unwrap(), gen_half_cover(12, 5).unwrap());
        assert_ne!(gen_half_cover(12, 5).unwrap().graph, gen_half_cover(12, 6).unwrap().graph);
    }

    #[test]
    fn half_cover_validation() {
        for n in 1..=20 {
            assert!(validate_half_cover(&gen_half_cover(n, n as u64).unwrap().graph).unwrap());
        }
        let diag = BipartiteGraph::new(2, 2, [(0, 0), (0, 1)]).unwrap();
        assert!(!validate_half_cover(&diag).unwrap());
        assert!(!validate_half_cover(&BipartiteGraph::empty(2, 2)).unwrap());
        assert!(validate_half_cover(&BipartiteGraph::empty(2, 3)).is_err());
    }

    #[test]
    fn boxminus_examples() {
        let h = gen_half_cover(4, 1).unwrap().graph;
        let g = boxminus(&GeneralGraph::empty(4), &h).unwrap();
        assert_eq!(g.num_edges(), 4);
        assert_eq!(nu(&g), 1);

        let h3 = gen_half_cover(3, 9).unwrap().graph;
        let g = boxminus(&GeneralGraph::complete(3), &h3).unwrap();
        assert_eq!(nu(&g), 3);
        let diag = boxminus_matching(&VertexSet::new(vec![0, 1, 2]));
        assert!(classify(&g, diag.edges()).unwrap().is_connected);
        assert_eq!(boxminus_clique(&diag).members(), &[0, 1, 2]);
        assert!(boxminus(&GeneralGraph::empty(3), &h).is_err());
    }

    #[test]
    fn perfect_cm_examples() {
        let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let h = perfect_cm_gadget(&two, 1).unwrap();
        assert_eq!(h.n_a(), 3);
        assert_eq!(nu(&h), 3);
        let k22 = BipartiteGraph::complete(2, 2);
        let h = perfect_cm_gadget(&k22, 2).unwrap();
        assert_eq!(h, k22);
        assert_eq!(nu(&h), 2);
        assert!(perfect_cm_gadget(&k22, 3).is_err());
        assert!(perfect_cm_gadget(&k22, 0).is_err());
        // Two disjoint edges have no connected matching of size 2.
        assert!(nu(&perfect_cm_gadget(&two, 2).unwrap()) < 2);
    }

    #[test]
    fn perfect_cm_extension_is_connected() {
        let g = BipartiteGraph::new(3, 3, [(0, 0), (0, 1), (1, 1), (2, 2)]).unwrap();
        let m = Matching::new(&g, vec![(0, 0), (1, 1)]).unwrap();
        let ext = perfect_cm_extend(&g, 2, &m).unwrap();
        let h = perfect_cm_gadget(&g, 2).unwrap();
        assert_eq!(ext.len(), h.n_a());
        assert!(classify(&h, ext.edges()).unwrap().is_connected);
        assert_eq!(perfect_cm_restrict(&g, &ext).edges(), m.edges());
    }

    #[test]
    fn mis_gadget_examples() {
        let g = mis_gadget(&GeneralGraph::path(2));
        assert_eq!(g.edges(), &[(0, 0), (0, 1), (1, 1)]);
        let g = mis_gadget(&GeneralGraph::empty(3));
        assert_eq!(g.num_edges(), 3);
        let g = mis_gadget(&GeneralGraph::complete(3));
        assert_eq!(g.edges(), &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        let m = mis_matching(&VertexSet::new(vec![0, 2]));
        assert_eq!(m.edges(), &[(0, 0), (2, 2)]);
    }

    #[test]
    fn biclique_gadget_shape() {
        let g = BipartiteGraph::complete(2, 2);
        let h = biclique_cm_gadget(&g).unwrap();
        assert_eq!(h.n_a(), 6);
        assert_eq!(h.num_edges(), 4 + 7 * 4);
        let m = biclique_cm_matching(&g, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(m.len(), 6);
        assert!(classify(&h, m.edges()).unwrap().is_connected);
        assert_eq!(biclique_cm_extract(2, &m), (vec![0, 1], vec![0, 1]));
        assert_eq!(max_balanced_biclique(&g), 2);
        assert_eq!(nu(&h), 6);
    }

    #[test]
    fn biclique_converse_matching_is_connected() {
        let g = BipartiteGraph::new(3, 3, [(0, 1), (1, 1), (2, 0)]).unwrap();
        let h = biclique_cm_gadget(&g).unwrap();
        let m = biclique_cm_matching(&g, &[1], &[1]).unwrap();
        assert_eq!(m.len(), 7);
        assert!(classify(&h, m.edges()).unwrap().is_connected);
    }
}
