//! Matchings, their classification, and enumeration in lexicographic order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::solvers;
use crate::Edge;

/// A set of pairwise vertex-disjoint host edges, kept in a fixed order.
///
/// Construction through [`Matching::new`] checks both properties against the
/// host; the host itself is not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(host: &BipartiteGraph, edges: Vec<Edge>) -> Result<Self> {
        let m = Matching { edges };
        m.validate(host)?;
        Ok(m)
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub(crate) fn from_edges_unchecked(edges: Vec<Edge>) -> Self {
        Matching { edges }
    }

    pub fn validate(&self, host: &BipartiteGraph) -> Result<()> {
        for &(a, b) in &self.edges {
            if !host.has_edge(a, b) {
                return Err(Error::EdgeNotInHost(a, b));
            }
        }
        if let Some((e, f)) = first_conflict(&self.edges) {
            return Err(Error::NotAMatching(e, f));
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sub-matching made of the edges at `indices`.
    pub fn select(&self, indices: &[usize]) -> Matching {
        Matching {
            edges: indices.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }
}

fn first_conflict(edges: &[Edge]) -> Option<(Edge, Edge)> {
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 == f.0 || e.1 == f.1 {
                return Some((e, f));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchingClass {
    pub is_matching: bool,
    pub is_induced: bool,
    pub is_connected: bool,
}

/// Classifies an edge list of `g` as a matching, induced matching and/or
/// connected matching.
pub fn classify(g: &BipartiteGraph, edges: &[Edge]) -> Result<MatchingClass> {
    for &(a, b) in edges {
        if !g.has_edge(a, b) {
            return Err(Error::EdgeNotInHost(a, b));
        }
    }
    let is_matching = first_conflict(edges).is_none();
    let (mut any_joined, mut all_joined) = (false, true);
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if g.edges_joined(e, f) {
                any_joined = true;
            } else {
                all_joined = false;
            }
        }
    }
    Ok(MatchingClass {
        is_matching,
        is_induced: is_matching && !any_joined,
        is_connected: is_matching && all_joined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeMode {
    /// Matchings of exactly `k` edges.
    Exact,
    /// Matchings of `1..=k` edges.
    UpTo,
}

/// Every matching of the requested sizes, each exactly once, in lexicographic
/// order of the sorted edge list.
pub fn enumerate_matchings(g: &BipartiteGraph, k: usize, mode: SizeMode) -> Result<MatchingIter<'_>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "matching size must be at least 1".into(),
        ));
    }
    Ok(MatchingIter {
        g,
        k,
        min_size: match mode {
            SizeMode::Exact => k,
            SizeMode::UpTo => 1,
        },
        chosen: Vec::with_capacity(k),
        cursor: 0,
        used_a: vec![false; g.n_a()],
        used_b: vec![false; g.n_b()],
        done: false,
    })
}

/// Depth-first stream over matchings; see [`enumerate_matchings`].
pub struct MatchingIter<'g> {
    g: &'g BipartiteGraph,
    k: usize,
    min_size: usize,
    chosen: Vec<usize>,
    cursor: usize,
    used_a: Vec<bool>,
    used_b: Vec<bool>,
    done: bool,
}

impl MatchingIter<'_> {
    /// Advances to the next matching and exposes it as edge indices into the
    /// host's sorted edge list, without allocating.
    pub fn advance(&mut self) -> Option<&[usize]> {
        let edges = self.g.edges();
        let m = edges.len();
        loop {
            if self.done {
                return None;
            }
            if self.chosen.len() < self.k {
                let need = self.min_size.saturating_sub(self.chosen.len() + 1);
                let last = m.saturating_sub(need);
                let found = (self.cursor..last).find(|&j| {
                    let (a, b) = edges[j];
                    !self.used_a[a] && !self.used_b[b]
                });
                if let Some(j) = found {
                    let (a, b) = edges[j];
                    self.used_a[a] = true;
                    self.used_b[b] = true;
                    self.chosen.push(j);
                    self.cursor = j + 1;
                    if self.chosen.len() >= self.min_size {
                        return Some(&self.chosen);
                    }
                    continue;
                }
            }
            match self.chosen.pop() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(i) => {
                    let (a, b) = edges[i];
                    self.used_a[a] = false;
                    self.used_b[b] = false;
                    self.cursor = i + 1;
                }
            }
        }
    }
}

impl Iterator for MatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        let g = self.g;
        self.advance().map(|idx| Matching {
            edges: idx.iter().map(|&i| g.edges()[i]).collect(),
        })
    }
}

/// Largest induced sub-matching of `m`, via an exact maximum independent set
/// of the conflict graph. Ties go to the lexicographically smallest index set;
/// edges keep their order in `m`.
pub fn max_induced_submatching(g: &BipartiteGraph, m: &Matching) -> Result<Matching> {
    let conflict = g.contract_matching(m)?;
    let mis = solvers::max_independent_set(&conflict);
    Ok(m.select(mis.members()))
}

/// Extracts a non-repetitive sub-matching of a matching in a balanced graph
/// whose sides share an index set.
///
/// Edges are scanned in stored order: the first remaining edge `(u_i, v_j)` is
/// kept, and any remaining edge covering `v_i` or `u_j` is dropped. No two
/// kept edges cover both `u_x` and `v_x` for an index `x`, and at least
/// `⌈|m| / 3⌉` edges survive.
pub fn nonrepetitive_core(g: &BipartiteGraph, m: &Matching) -> Result<Matching> {
    g.require_balanced()?;
    m.validate(g)?;
    let mut remaining: Vec<Edge> = m.edges().to_vec();
    let mut kept = Vec::new();
    while !remaining.is_empty() {
        let (i, j) = remaining.remove(0);
        kept.push((i, j));
        remaining.retain(|&(a, b)| b != i && a != j);
    }
    Ok(Matching { edges: kept })
}

/// True when no index is covered on side A by one edge and on side B by a
/// different edge.
pub fn is_nonrepetitive(m: &Matching) -> bool {
    m.edges().iter().enumerate().all(|(x, &(a, _))| {
        m.edges()
            .iter()
            .enumerate()
            .all(|(y, &(_, b))| x == y || a != b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> BipartiteGraph {
        BipartiteGraph::path(3)
    }

    #[test]
    fn classify_examples() {
        let c = classify(&p4(), &[(0, 0), (1, 1)]).unwrap();
        assert!(c.is_matching && !c.is_induced && c.is_connected);

        let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let c = classify(&two, &[(0, 0), (1, 1)]).unwrap();
        assert!(c.is_matching && c.is_induced && !c.is_connected);

        let c = classify(&p4(), &[(1, 0), (1, 1)]).unwrap();
        assert!(!c.is_matching && !c.is_induced && !c.is_connected);
    }

    #[test]
    fn classify_small_sets_are_both() {
        let c = classify(&p4(), &[(1, 0)]).unwrap();
        assert!(c.is_matching && c.is_induced && c.is_connected);
        let c = classify(&p4(), &[]).unwrap();
        assert!(c.is_matching && c.is_induced && c.is_connected);
    }

    #[test]
    fn classify_rejects_foreign_edge() {
        assert_eq!(
            classify(&p4(), &[(0, 1)]),
            Err(Error::EdgeNotInHost(0, 1))
        );
    }

    #[test]
    fn enumeration_examples() {
        let single = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(enumerate_matchings(&single, 1, SizeMode::Exact).unwrap().count(), 1);

        let all: Vec<_> = enumerate_matchings(&p4(), 2, SizeMode::Exact).unwrap().collect();
        assert_eq!(all, vec![Matching::new(&p4(), vec![(0, 0), (1, 1)]).unwrap()]);

        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(enumerate_matchings(&k22, 2, SizeMode::Exact).unwrap().count(), 2);
        assert!(enumerate_matchings(&k22, 0, SizeMode::Exact).is_err());
        assert_eq!(enumerate_matchings(&k22, 3, SizeMode::Exact).unwrap().count(), 0);
    }

    #[test]
    fn up_to_mode_is_preorder() {
        let k22 = BipartiteGraph::complete(2, 2);
        let all: Vec<Vec<Edge>> = enumerate_matchings(&k22, 2, SizeMode::UpTo)
            .unwrap()
            .map(Matching::into_edges)
            .collect();
        assert_eq!(
            all,
            vec![
                vec![(0, 0)],
                vec![(0, 0), (1, 1)],
                vec![(0, 1)],
                vec![(0, 1), (1, 0)],
                vec![(1, 0)],
                vec![(1, 1)],
            ]
        );
    }

    #[test]
    fn max_induced_examples() {
        let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let m = Matching::new(&two, vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(max_induced_submatching(&two, &m).unwrap(), m);

        let c6 = BipartiteGraph::cycle(3);
        let m = Matching::new(&c6, vec![(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(max_induced_submatching(&c6, &m).unwrap().edges(), &[(0, 0)]);

        let m = Matching::new(&p4(), vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(max_induced_submatching(&p4(), &m).unwrap().len(), 1);
    }

    #[test]
    fn nonrepetitive_examples() {
        let k = BipartiteGraph::complete(3, 3);
        let m = Matching::new(&k, vec![(0, 0)]).unwrap();
        assert_eq!(nonrepetitive_core(&k, &m).unwrap(), m);

        let m = Matching::new(&k, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(nonrepetitive_core(&k, &m).unwrap().edges(), &[(0, 1)]);

        let k4 = BipartiteGraph::complete(4, 4);
        let m = Matching::new(&k4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(nonrepetitive_core(&k4, &m).unwrap(), m);
        assert!(is_nonrepetitive(&m));
    }

    #[test]
    fn nonrepetitive_rejects_unbalanced() {
        let g = BipartiteGraph::complete(2, 3);
        let m = Matching::new(&g, vec![(0, 0)]).unwrap();
        assert!(matches!(
            nonrepetitive_core(&g, &m),
            Err(Error::Unbalanced { .. })
        ));
    }
}
