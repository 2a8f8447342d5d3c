//! Girth and bounded-length cycle enumeration.
//!
//! A cycle is identified by its canonical vertex sequence: it starts at its
//! minimum vertex and continues toward the smaller of that vertex's two cycle
//! neighbours. Enumeration visits cycles grouped by start vertex, each group in
//! lexicographic order of the canonical sequence.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{BipartiteGraph, GeneralGraph};
use crate::error::{Error, Result};
use crate::Edge;

/// Default number of DFS extensions allowed per cycle search.
pub const DEFAULT_CYCLE_BUDGET: u64 = 500_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cycle {
    /// Canonical vertex sequence (unified vertex space for bipartite hosts).
    pub vertices: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, closing back to the start.
    pub fn vertex_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Edges of a bipartite cycle as `(a, b)` pairs, in cycle order.
    pub fn bipartite_edges(&self, host: &BipartiteGraph) -> Vec<Edge> {
        self.vertex_pairs()
            .map(|(u, v)| host.unified_to_edge(u, v))
            .collect()
    }

    /// Canonical ordering used when cycles are processed one after another:
    /// shorter cycles first, then lexicographic on the vertex sequence.
    pub fn search_key(&self) -> (usize, &[usize]) {
        (self.vertices.len(), &self.vertices)
    }
}

/// Bounded cycle search configuration.
#[derive(Debug, Clone, Copy)]
pub struct CycleSearch {
    pub max_len: usize,
    pub budget: u64,
}

impl CycleSearch {
    pub fn new(max_len: usize) -> Self {
        CycleSearch {
            max_len,
            budget: DEFAULT_CYCLE_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Visits every simple cycle of length `3..=max_len` exactly once.
///
/// The callback receives the canonical vertex sequence and may stop the
/// search early. Returns the amount of work spent.
pub fn enumerate_cycles<F>(g: &GeneralGraph, search: CycleSearch, mut visit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut work = 0u64;
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(search.max_len);
    let radius = search.max_len / 2;

    for start in 0..n {
        // Distances to `start` through vertices above it, only as far as a
        // closing path could reach.
        for v in touched.drain(..) {
            dist[v] = usize::MAX;
        }
        dist[start] = 0;
        touched.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if dist[u] >= radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if w > start && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }

        path.clear();
        path.push(start);
        on_path[start] = true;
        let flow = extend(
            g,
            start,
            search,
            &dist,
            &mut path,
            &mut on_path,
            &mut work,
            &mut visit,
        );
        on_path[start] = false;
        match flow {
            Err(e) => return Err(e),
            Ok(ControlFlow::Break(())) => return Ok(work),
            Ok(ControlFlow::Continue(())) => {}
        }
    }
    Ok(work)
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    g: &GeneralGraph,
    start: usize,
    search: CycleSearch,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    work: &mut u64,
    visit: &mut F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let u = *path.last().expect("path starts non-empty");
    for &w in g.neighbors(u) {
        if w == start {
            if path.len() >= 3 && path[1] < u {
                if let ControlFlow::Break(()) = visit(path) {
                    return Ok(ControlFlow::Break(()));
                }
            }
            continue;
        }
        if w < start || on_path[w] || dist[w] == usize::MAX {
            continue;
        }
        if path.len() + dist[w] > search.max_len {
            continue;
        }
        *work += 1;
        if *work > search.budget {
            return Err(Error::BudgetExceeded {
                budget: search.budget,
            });
        }
        path.push(w);
        on_path[w] = true;
        let flow = extend(g, start, search, dist, path, on_path, work, visit);
        on_path[w] = false;
        path.pop();
        if let ControlFlow::Break(()) = flow? {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Length of the shortest cycle, `None` for forests.
pub fn girth(g: &GeneralGraph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for root in 0..n {
        for v in touched.drain(..) {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

impl BipartiteGraph {
    pub fn girth(&self) -> Option<usize> {
        girth(&self.to_general())
    }
}

fn check_even_len(g_max: usize) -> Result<()> {
    if g_max < 4 || !g_max.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "cycle length bound must be even and at least 4, got {g_max}"
        )));
    }
    Ok(())
}

/// Number of distinct cycles of length at most `g_max`.
pub fn count_short_cycles(g: &BipartiteGraph, g_max: usize, budget: u64) -> Result<u64> {
    check_even_len(g_max)?;
    let mut count = 0u64;
    enumerate_cycles(
        &g.to_general(),
        CycleSearch::new(g_max).with_budget(budget),
        |_| {
            count += 1;
            ControlFlow::Continue(())
        },
    )?;
    Ok(count)
}

/// Deletes edges until no cycle of length `≤ g_max` remains.
///
/// Short cycles are processed shortest first, then in lexicographic order of
/// their canonical sequence; each one still intact loses its lexicographically
/// smallest `(a, b)` edge. Returns the reduced graph and the removed edges in
/// removal order.
pub fn break_short_cycles(
    g: &BipartiteGraph,
    g_max: usize,
    budget: u64,
) -> Result<(BipartiteGraph, Vec<Edge>)> {
    check_even_len(g_max)?;
    let mut cycles = Vec::new();
    enumerate_cycles(
        &g.to_general(),
        CycleSearch::new(g_max).with_budget(budget),
        |seq| {
            cycles.push(Cycle {
                vertices: seq.to_vec(),
            });
            ControlFlow::Continue(())
        },
    )?;
    cycles.sort_by(|x, y| x.search_key().cmp(&y.search_key()));

    let mut removed: Vec<Edge> = Vec::new();
    let mut gone = std::collections::HashSet::new();
    for c in &cycles {
        let edges = c.bipartite_edges(g);
        if edges.iter().any(|e| gone.contains(e)) {
            continue;
        }
        let cut = *edges.iter().min().expect("cycle has edges");
        gone.insert(cut);
        removed.push(cut);
    }
    Ok((g.without_edges(&removed), removed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_cycles(g: &GeneralGraph, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        enumerate_cycles(g, CycleSearch::new(max_len), |c| {
            out.push(c.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    #[test]
    fn girth_examples() {
        assert_eq!(BipartiteGraph::cycle(3).girth(), Some(6));
        assert_eq!(GeneralGraph::path(6).girth_opt(), None);
        // K_{2,2} plus a pendant edge
        let g = BipartiteGraph::new(3, 2, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)]).unwrap();
        assert_eq!(g.girth(), Some(4));
        assert_eq!(girth(&GeneralGraph::complete(4)), Some(3));
        assert_eq!(girth(&GeneralGraph::cycle(5)), Some(5));
    }

    #[test]
    fn count_examples() {
        let b = DEFAULT_CYCLE_BUDGET;
        assert_eq!(count_short_cycles(&BipartiteGraph::cycle(3), 6, b).unwrap(), 1);
        assert_eq!(count_short_cycles(&BipartiteGraph::complete(2, 2), 4, b).unwrap(), 1);
        assert_eq!(count_short_cycles(&BipartiteGraph::complete(3, 3), 4, b).unwrap(), 9);
        // K_{3,3}: 9 four-cycles and 6 six-cycles
        assert_eq!(count_short_cycles(&BipartiteGraph::complete(3, 3), 6, b).unwrap(), 15);
    }

    #[test]
    fn count_rejects_odd_or_small_bound() {
        let g = BipartiteGraph::cycle(3);
        assert!(count_short_cycles(&g, 5, 100).is_err());
        assert!(count_short_cycles(&g, 2, 100).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let g = BipartiteGraph::complete(5, 5);
        assert_eq!(
            count_short_cycles(&g, 10, 10),
            Err(Error::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn canonical_sequences() {
        let cycles = all_cycles(&GeneralGraph::cycle(5), 5);
        assert_eq!(cycles, vec![vec![0, 1, 2, 3, 4]]);
        let k4 = all_cycles(&GeneralGraph::complete(4), 4);
        assert_eq!(
            k4,
            vec![
                vec![0, 1, 2],
                vec![0, 1, 2, 3],
                vec![0, 1, 3],
                vec![0, 1, 3, 2],
                vec![0, 2, 1, 3],
                vec![0, 2, 3],
                vec![1, 2, 3],
            ]
        );
    }

    #[test]
    fn break_examples() {
        let b = DEFAULT_CYCLE_BUDGET;
        let (p, removed) = break_short_cycles(&BipartiteGraph::cycle(3), 6, b).unwrap();
        assert_eq!(removed, vec![(0, 0)]);
        assert_eq!(p.num_edges(), 5);
        assert_eq!(p.girth(), None);

        let forest = BipartiteGraph::path(5);
        let (same, removed) = break_short_cycles(&forest, 8, b).unwrap();
        assert!(removed.is_empty());
        assert_eq!(same, forest);

        let (p3, removed) = break_short_cycles(&BipartiteGraph::complete(2, 2), 4, b).unwrap();
        assert_eq!(removed.len(), 1);
        assert_eq!(p3.num_edges(), 3);
        assert_eq!(p3.girth(), None);
    }

    #[test]
    fn break_leaves_girth_above_bound() {
        let g = BipartiteGraph::complete(4, 4);
        for g_max in [4, 6, 8] {
            let (h, removed) = break_short_cycles(&g, g_max, DEFAULT_CYCLE_BUDGET).unwrap();
            assert!(h.girth().is_none_or(|x| x > g_max));
            let count = count_short_cycles(&g, g_max, DEFAULT_CYCLE_BUDGET).unwrap();
            assert!(removed.len() as u64 <= count);
        }
    }

    impl GeneralGraph {
        fn girth_opt(&self) -> Option<usize> {
            girth(self)
        }
    }
}
