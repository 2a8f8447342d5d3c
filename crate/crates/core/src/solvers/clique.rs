//! Bitset branch-and-bound for maximum cliques.
//!
//! A colour-ordered search (greedy colouring bound with re-colouring, over
//! vertices relabelled by descending degree) finds the clique number. The
//! lexicographically smallest clique of a given size is then fixed one member
//! at a time, smallest index first, each choice confirmed by a decision run of
//! the same search on the remaining candidates.

use crate::error::{Error, Result};
use crate::graph::GeneralGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub(crate) fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    #[inline]
    pub(crate) fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub(crate) fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    #[cfg(test)]
    pub(crate) fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

/// Adjacency rows as bitsets.
pub(crate) fn adjacency_bits(n: usize, neighbors: impl Fn(usize) -> Vec<usize>) -> Vec<Bits> {
    (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for w in neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect()
}

struct Search<'a> {
    adj: &'a [Bits],
    cur: Vec<usize>,
    best: Vec<usize>,
    /// Sizes at or below this never count as an improvement.
    floor: usize,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
    nodes: u64,
    budget: Option<u64>,
    /// Known partitions of the vertices into independent sets; a clique
    /// meets each class at most once.
    partitions: &'a [Vec<Bits>],
}

enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    fn bar(&self) -> usize {
        self.best.len().max(self.floor)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(Error::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    fn record(&mut self) -> Flow {
        if self.cur.len() > self.bar() {
            self.best = self.cur.clone();
            if self.target.is_some_and(|t| self.best.len() >= t) {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    /// Colour-ordered expansion. Candidates are greedily coloured; only those
    /// whose colour could still beat the incumbent are branched on, highest
    /// colour first. A vertex that would land in such a colour is first
    /// re-inserted into a lower class when that costs at most one swap.
    fn expand_coloured(&mut self, mut cand: Bits) -> Result<Flow> {
        self.tick()?;
        for part in self.partitions {
            let hit = part.iter().filter(|c| c.intersects(&cand)).count();
            if self.cur.len() + hit <= self.bar() {
                return Ok(Flow::Continue);
            }
        }
        let kmin = (self.bar() + 1).saturating_sub(self.cur.len());
        let mut low: Vec<Bits> = Vec::new();
        let mut branch: Vec<(usize, usize)> = Vec::new();
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            let mut class = (colour < kmin).then(|| Bits::new(self.adj.len()));
            while let Some(v) = q.first() {
                q.remove(v);
                uncoloured.remove(v);
                if class.is_none() && renumber(self.adj, v, &mut low) {
                    continue;
                }
                q.and_not_assign(&self.adj[v]);
                match class.as_mut() {
                    Some(c) => c.insert(v),
                    None => branch.push((v, colour)),
                }
            }
            if let Some(c) = class {
                low.push(c);
            }
        }
        for &(v, c) in branch.iter().rev() {
            if self.cur.len() + c <= self.bar() {
                return Ok(Flow::Continue);
            }
            self.cur.push(v);
            let next = cand.and(&self.adj[v]);
            let flow = if next.is_empty() {
                self.record()
            } else {
                self.expand_coloured(next)?
            };
            self.cur.pop();
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
            cand.remove(v);
        }
        Ok(Flow::Continue)
    }
}

/// Tries to place `v` in one of the `low` colour classes, either directly or
/// by moving its single neighbour there into a later low class.
fn renumber(adj: &[Bits], v: usize, low: &mut [Bits]) -> bool {
    for i in 0..low.len() {
        match single_common(&low[i], &adj[v]) {
            Common::None => {
                low[i].insert(v);
                return true;
            }
            Common::One(w) => {
                if let Some(j) = (i + 1..low.len()).find(|&j| !low[j].intersects(&adj[w])) {
                    low[i].remove(w);
                    low[i].insert(v);
                    low[j].insert(w);
                    return true;
                }
            }
            Common::Many => {}
        }
    }
    false
}

enum Common {
    None,
    One(usize),
    Many,
}

fn single_common(a: &Bits, b: &Bits) -> Common {
    let mut found = Common::None;
    for (i, (x, y)) in a.words.iter().zip(&b.words).enumerate() {
        let m = x & y;
        if m == 0 {
            continue;
        }
        if m.count_ones() > 1 || matches!(found, Common::One(_)) {
            return Common::Many;
        }
        found = Common::One(i * 64 + m.trailing_zeros() as usize);
    }
    found
}

/// Clique number of `adj`, searching in degree-descending order.
fn clique_number(adj: &[Bits], partitions: &[Vec<Bits>], budget: Option<u64>) -> Result<(usize, u64)> {
    let n = adj.len();
    if n == 0 {
        return Ok((0, 0));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count()), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabelled: Vec<Bits> = order
        .iter()
        .map(|&v| {
            let mut b = Bits::new(n);
            for w in adj[v].iter() {
                b.insert(pos[w]);
            }
            b
        })
        .collect();
    let parts: Vec<Vec<Bits>> = partitions
        .iter()
        .map(|part| {
            part.iter()
                .map(|c| {
                    let mut b = Bits::new(n);
                    for w in c.iter() {
                        b.insert(pos[w]);
                    }
                    b
                })
                .collect()
        })
        .collect();
    let mut s = Search {
        adj: &relabelled,
        cur: Vec::new(),
        best: Vec::new(),
        floor: 0,
        target: None,
        nodes: 0,
        budget,
        partitions: &parts,
    };
    s.expand_coloured(Bits::full(n))?;
    Ok((s.best.len(), s.nodes))
}

/// Lexicographically smallest clique with exactly `size` vertices, or `None`.
///
/// Members are fixed in ascending order: `v` is taken next if the candidates
/// above `v` adjacent to it still hold a clique of the remaining size, which
/// a colour-bounded search decides.
fn lex_first_clique(
    adj: &[Bits],
    partitions: &[Vec<Bits>],
    size: usize,
    budget: Option<u64>,
) -> Result<(Option<Vec<usize>>, u64)> {
    let mut chosen = Vec::with_capacity(size);
    let mut cand = Bits::full(adj.len());
    let mut nodes = 0u64;
    while chosen.len() < size {
        let need = size - chosen.len() - 1;
        let mut picked = None;
        for v in cand.iter() {
            let mut sub = cand.and(&adj[v]);
            for w in 0..=v {
                sub.remove(w);
            }
            if need == 0 || sub.count() >= need && {
                let mut s = Search {
                    adj,
                    cur: Vec::new(),
                    best: Vec::new(),
                    floor: need - 1,
                    target: Some(need),
                    nodes,
                    budget,
                    partitions,
                };
                s.expand_coloured(sub.clone())?;
                nodes = s.nodes;
                s.best.len() >= need
            } {
                picked = Some((v, sub));
                break;
            }
        }
        match picked {
            Some((v, sub)) => {
                chosen.push(v);
                cand = sub;
            }
            None => return Ok((None, nodes)),
        }
    }
    Ok((Some(chosen), nodes))
}

/// Lexicographically smallest maximum clique over bitset adjacency rows.
pub(crate) fn max_clique_bits(
    adj: &[Bits],
    partitions: &[Vec<Bits>],
    budget: Option<u64>,
) -> Result<Vec<usize>> {
    let (omega, used) = clique_number(adj, partitions, budget)?;
    let rest = budget.map(|b| b.saturating_sub(used));
    let (found, _) = lex_first_clique(adj, partitions, omega, rest).map_err(|e| restate(e, budget))?;
    Ok(found.expect("a clique of the maximum size exists"))
}

fn restate(e: Error, budget: Option<u64>) -> Error {
    match (e, budget) {
        (Error::BudgetExceeded { .. }, Some(b)) => Error::BudgetExceeded { budget: b },
        (e, _) => e,
    }
}

/// Size of a maximum clique, without a witness.
pub(crate) fn clique_size_bits(
    adj: &[Bits],
    partitions: &[Vec<Bits>],
    budget: Option<u64>,
) -> Result<usize> {
    clique_number(adj, partitions, budget).map(|(omega, _)| omega)
}

/// Lexicographically smallest clique with exactly `size` vertices, if any.
pub(crate) fn clique_of_size_bits(
    adj: &[Bits],
    partitions: &[Vec<Bits>],
    size: usize,
    budget: Option<u64>,
) -> Result<Option<Vec<usize>>> {
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    lex_first_clique(adj, partitions, size, budget).map(|(found, _)| found)
}

pub(crate) fn graph_bits(h: &GeneralGraph) -> Vec<Bits> {
    adjacency_bits(h.n(), |v| h.neighbors(v).to_vec())
}

/// Size of a maximum independent set of a graph on at most 64 vertices given
/// as adjacency masks.
pub(crate) fn mis_size_small(adj: &[u64]) -> usize {
    debug_assert!(adj.len() <= 64);
    let all = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    mis_mask(adj, all)
}

fn mis_mask(adj: &[u64], mut rest: u64) -> usize {
    let mut taken = 0;
    // vertices of degree <= 1 can always be taken
    loop {
        let mut changed = false;
        let mut it = rest;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            if rest >> v & 1 == 0 {
                continue;
            }
            let nb = adj[v] & rest;
            if nb.count_ones() <= 1 {
                taken += 1;
                rest &= !(nb | 1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if rest == 0 {
        return taken;
    }
    let mut pick = 0;
    let mut best_deg = 0;
    let mut it = rest;
    while it != 0 {
        let v = it.trailing_zeros() as usize;
        it &= it - 1;
        let d = (adj[v] & rest).count_ones();
        if d > best_deg {
            best_deg = d;
            pick = v;
        }
    }
    let with = 1 + mis_mask(adj, rest & !(adj[pick] | 1 << pick));
    let without = mis_mask(adj, rest & !(1 << pick));
    taken + with.max(without)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_basics() {
        let mut b = Bits::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(b.count(), 3);
        b.remove(64);
        assert!(!b.contains(64));
        assert_eq!(b.first(), Some(0));
    }

    #[test]
    fn small_mis_masks() {
        // C5
        let adj: Vec<u64> = (0..5)
            .map(|i| (1 << ((i + 1) % 5)) | (1 << ((i + 4) % 5)))
            .collect();
        assert_eq!(mis_size_small(&adj), 2);
        assert_eq!(mis_size_small(&[0, 0, 0]), 3);
        assert_eq!(mis_size_small(&[]), 0);
    }

    #[test]
    fn lex_first_maximum() {
        // two triangles {0,1,2} and {3,4,5} plus edge 2-3: both maximum
        let h = GeneralGraph::new(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        assert_eq!(max_clique_bits(&graph_bits(&h), &[], None).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn budget_errors() {
        let h = GeneralGraph::cycle(12);
        let err = max_clique_bits(&graph_bits(&h), &[], Some(1)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1 });
    }
}
