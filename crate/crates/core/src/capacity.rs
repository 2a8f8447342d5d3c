//! Multitasking capacity: exact `α_k`, `α_{≤k}`, the threshold decision, and
//! the girth/density lower bound with its constructive peeling procedure.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, DensityReport, GeneralGraph};
use crate::matching::{enumerate_matchings, max_induced_submatching, Matching, SizeMode};
use crate::solvers::{self, mis_size_small, VertexSet};
use crate::Rational;

/// Matchings handed to the worker pool at a time.
const BATCH: usize = 2048;

#[derive(Debug, Clone, Copy, Default)]
pub struct CapacityConfig {
    /// Maximum number of matchings examined; `None` for no limit.
    pub budget: Option<u64>,
}

impl CapacityConfig {
    pub fn with_budget(budget: u64) -> Self {
        CapacityConfig {
            budget: Some(budget),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    pub k: usize,
    pub alpha: Rational,
    /// Size of the witness matching (differs from `k` for `α_{≤k}`).
    pub witness_size: usize,
    pub worst_matching: Matching,
    pub best_induced: Matching,
    /// False when the budget ran out; `alpha` is then only an upper bound.
    pub exhausted: bool,
    pub matchings_checked: u64,
    /// `α_ℓ` for `ℓ = 1..=k` (filled by [`alpha_upto`] only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_size: Vec<Rational>,
}

struct Scan {
    /// Smallest induced size seen and the first matching attaining it.
    best: Option<(usize, Vec<usize>)>,
    checked: u64,
    exhausted: bool,
}

fn conflict_masks(g: &BipartiteGraph, idx: &[usize]) -> Vec<u64> {
    let edges = g.edges();
    let mut masks = vec![0u64; idx.len()];
    for i in 0..idx.len() {
        let e = edges[idx[i]];
        for j in i + 1..idx.len() {
            if g.edges_joined(e, edges[idx[j]]) {
                masks[i] |= 1 << j;
                masks[j] |= 1 << i;
            }
        }
    }
    masks
}

fn induced_size(g: &BipartiteGraph, idx: &[usize]) -> usize {
    if idx.len() <= 64 {
        mis_size_small(&conflict_masks(g, idx))
    } else {
        let edges: Vec<_> = idx.iter().map(|&i| g.edges()[i]).collect();
        solvers::max_independent_set(&g.contract_unchecked(&edges)).len()
    }
}

/// Walks all size-`k` matchings, keeping the one with the smallest maximum
/// induced sub-matching. Stops early once a matching with induced size at most
/// `stop_at` appears, or when `budget` matchings have been examined.
fn scan(g: &BipartiteGraph, k: usize, budget: Option<u64>, stop_at: usize) -> Result<Scan> {
    let mut iter = enumerate_matchings(g, k, SizeMode::Exact)?;
    let mut out = Scan {
        best: None,
        checked: 0,
        exhausted: true,
    };
    let mut batch: Vec<Vec<usize>> = Vec::with_capacity(BATCH);
    loop {
        batch.clear();
        while batch.len() < BATCH {
            if budget.is_some_and(|b| out.checked + batch.len() as u64 >= b) {
                break;
            }
            match iter.advance() {
                Some(idx) => batch.push(idx.to_vec()),
                None => break,
            }
        }
        if batch.is_empty() {
            if budget.is_some_and(|b| out.checked >= b) && iter.advance().is_some() {
                out.exhausted = false;
            }
            return Ok(out);
        }
        let sizes: Vec<usize> = batch.par_iter().map(|idx| induced_size(g, idx)).collect();
        out.checked += batch.len() as u64;
        // First minimum in stream order, so the witness does not depend on threads.
        let (pos, &size) = sizes
            .iter()
            .enumerate()
            .min_by_key(|&(i, &s)| (s, i))
            .expect("batch is not empty");
        if out.best.as_ref().is_none_or(|(b, _)| size < *b) {
            out.best = Some((size, batch[pos].clone()));
        }
        if size <= stop_at {
            return Ok(out);
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn report_from(g: &BipartiteGraph, k: usize, s: Scan) -> Result<CapacityReport> {
    match s.best {
        None => Ok(CapacityReport {
            k,
            alpha: Rational::one(),
            witness_size: k,
            worst_matching: Matching::empty(),
            best_induced: Matching::empty(),
            exhausted: s.exhausted,
            matchings_checked: s.checked,
            per_size: Vec::new(),
        }),
        Some((size, idx)) => {
            let worst = Matching::new(g, idx.iter().map(|&i| g.edges()[i]).collect())?;
            let best = max_induced_submatching(g, &worst)?;
            debug_assert_eq!(best.len(), size);
            Ok(CapacityReport {
                k,
                alpha: Rational::new(size as i64, k as i64),
                witness_size: k,
                worst_matching: worst,
                best_induced: best,
                exhausted: s.exhausted,
                matchings_checked: s.checked,
                per_size: Vec::new(),
            })
        }
    }
}

/// `α_k(g)`: the minimum over size-`k` matchings `M` of `|M'| / k`, where `M'`
/// is a largest induced sub-matching of `M`; `1` when no such matching exists.
///
/// The witness is the lexicographically first matching attaining the minimum.
/// If the budget runs out, the report carries the smallest ratio seen so far
/// with `exhausted = false`.
pub fn alpha_k(g: &BipartiteGraph, k: usize, config: &CapacityConfig) -> Result<CapacityReport> {
    check_k(k)?;
    let s = scan(g, k, config.budget, 1)?;
    report_from(g, k, s)
}

/// `α_{≤k}(g) = min_{1≤ℓ≤k} α_ℓ(g)`; the witness comes from the smallest
/// minimizing `ℓ`. The budget is shared across all sizes.
pub fn alpha_upto(g: &BipartiteGraph, k: usize, config: &CapacityConfig) -> Result<CapacityReport> {
    check_k(k)?;
    let mut best: Option<CapacityReport> = None;
    let mut per_size = Vec::with_capacity(k);
    let mut checked = 0u64;
    let mut exhausted = true;
    for l in 1..=k {
        let remaining = config.budget.map(|b| b.saturating_sub(checked));
        let r = report_from(g, l, scan(g, l, remaining, 1)?)?;
        checked += r.matchings_checked;
        exhausted &= r.exhausted;
        per_size.push(r.alpha);
        if best.as_ref().is_none_or(|b| r.alpha < b.alpha) {
            best = Some(r);
        }
        if !exhausted {
            break;
        }
    }
    let mut out = best.expect("k >= 1");
    out.k = k;
    out.exhausted = exhausted;
    out.matchings_checked = checked;
    out.per_size = per_size;
    Ok(out)
}

/// Decides `α_k(g) ≥ eta` exactly. Stops at the first matching whose ratio
/// falls below `eta`; if the budget runs out before either outcome is
/// certain, returns [`Error::BudgetExceeded`].
pub fn mt_decide(
    g: &BipartiteGraph,
    k: usize,
    eta: Rational,
    config: &CapacityConfig,
) -> Result<bool> {
    check_k(k)?;
    if eta <= Rational::zero() || eta > Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "eta = {eta} is outside (0, 1]"
        )));
    }
    // Largest induced size m with m / k < eta.
    let below = (eta * Rational::from_int(k as i64)).ceil_int() - 1;
    let s = scan(g, k, config.budget, below.max(0) as usize)?;
    let alpha = match &s.best {
        None => Rational::one(),
        Some((size, _)) => Rational::new(*size as i64, k as i64),
    };
    if alpha < eta {
        Ok(false)
    } else if s.exhausted {
        Ok(true)
    } else {
        Err(Error::BudgetExceeded {
            budget: config.budget.unwrap_or(0),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieceKind {
    Path,
    Cycle,
}

/// A component left after the high-degree deletion, in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelTrace {
    /// Vertices taken while some vertex had degree at most one, each with the
    /// neighbour deleted alongside it.
    pub phase1_removed: Vec<(usize, Option<usize>)>,
    /// Vertices left once the minimum degree reached two.
    pub h: usize,
    /// Vertices of degree at least three in that residue, by descending
    /// degree then index.
    pub high_degree_removed: Vec<usize>,
    pub paths_cycles: Vec<Piece>,
    pub independent_set: VertexSet,
}

/// Independent set by the three-phase peeling procedure:
///
/// 1. while a vertex of degree `≤ 1` remains, take the smallest such vertex
///    and delete it together with its neighbour;
/// 2. delete every vertex of degree `≥ 3` in the residue at once;
/// 3. the rest is a disjoint union of paths and cycles; take every other
///    vertex of each.
///
/// On graphs with girth at least `g_param / 2` whose induced subgraphs on `s`
/// vertices span at most `(1 + beta / g_param)·s` edges, the result has at
/// least `(1/2 - (1 + beta)/g_param)·n` vertices. The parameters only matter
/// for that guarantee; the procedure itself ignores them.
pub fn peel_independent_set(f: &GeneralGraph, _g_param: usize, _beta: Rational) -> PeelTrace {
    let n = f.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
    let mut low: BTreeSet<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut taken = Vec::new();
    let mut phase1 = Vec::new();

    let kill = |v: usize, alive: &mut Vec<bool>, degree: &mut Vec<usize>, low: &mut BTreeSet<usize>| {
        alive[v] = false;
        low.remove(&v);
        for &w in f.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    low.insert(w);
                }
            }
        }
    };

    while let Some(&v) = low.iter().next() {
        let partner = f.neighbors(v).iter().copied().find(|&w| alive[w]);
        kill(v, &mut alive, &mut degree, &mut low);
        if let Some(w) = partner {
            kill(w, &mut alive, &mut degree, &mut low);
        }
        taken.push(v);
        phase1.push((v, partner));
    }

    let h = alive.iter().filter(|&&a| a).count();
    let mut high: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] >= 3).collect();
    high.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    for &v in &high {
        alive[v] = false;
    }
    let rest_degree = |v: usize, alive: &[bool]| f.neighbors(v).iter().filter(|&&w| alive[w]).count();

    let mut seen = vec![false; n];
    let mut pieces = Vec::new();
    for start in 0..n {
        if !alive[start] || seen[start] {
            continue;
        }
        // Collect the component, then walk it from a canonical start.
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in f.neighbors(comp[i]) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let is_cycle = comp.len() >= 3 && comp.iter().all(|&v| rest_degree(v, &alive) == 2);
        let first = if is_cycle {
            *comp.iter().min().expect("non-empty")
        } else {
            *comp
                .iter()
                .filter(|&&v| rest_degree(v, &alive) <= 1)
                .min()
                .expect("a path has an endpoint")
        };
        let mut order = vec![first];
        let mut prev = usize::MAX;
        let mut cur = first;
        loop {
            let next = f
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| alive[w] && w != prev && w != first)
                .min();
            match next {
                Some(w) if order.len() < comp.len() => {
                    order.push(w);
                    prev = cur;
                    cur = w;
                }
                _ => break,
            }
        }
        debug_assert_eq!(order.len(), comp.len());
        let m = order.len();
        let count = if is_cycle { m / 2 } else { m.div_ceil(2) };
        taken.extend((0..count).map(|j| order[2 * j]));
        pieces.push(Piece {
            kind: if is_cycle {
                PieceKind::Cycle
            } else {
                PieceKind::Path
            },
            vertices: order,
        });
    }

    PeelTrace {
        phase1_removed: phase1,
        h,
        high_degree_removed: high,
        paths_cycles: pieces,
        independent_set: VertexSet::new(taken),
    }
}

/// `(1/2 - (1 + beta)/g)·size`, rounded up.
pub fn peel_floor(size: usize, g: usize, beta: Rational) -> i64 {
    (peel_ratio(g, beta) * Rational::from_int(size as i64)).ceil_int()
}

fn peel_ratio(g: usize, beta: Rational) -> Rational {
    Rational::new(1, 2) - (Rational::one() + beta) / Rational::from_int(g as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Density was checked exhaustively for every size up to `t`.
    Full,
    /// Density was checked exhaustively only up to `verified_through`, and by
    /// sampling beyond.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedBound {
    /// Certified lower bound on `α_{≤t}`.
    pub value: Rational,
    /// `1/2 - (1 + beta)/g` before clamping.
    pub formula: Rational,
    pub g: usize,
    pub beta: Rational,
    pub t: usize,
    /// The formula was at most `1/t`, so `value` is the trivial floor `1/t`.
    pub vacuous: bool,
    pub certification: Certification,
    pub verified_through: usize,
}

/// Lower bound on `α_{≤t}(g)` from its girth and balanced-subgraph density,
/// using the measured girth.
pub fn certified_lower_bound(
    g: &BipartiteGraph,
    beta: Rational,
    t: usize,
    evidence: &DensityReport,
) -> Result<CertifiedBound> {
    let gv = g.girth().ok_or_else(|| {
        Error::InvalidParameter("graph is a forest; the girth bound does not apply".into())
    })?;
    certified_lower_bound_at(g, gv, beta, t, evidence)
}

/// As [`certified_lower_bound`], with girth parameter `g_param`, which may be
/// any value not exceeding the measured girth (forests qualify). The evidence
/// must show at most `(2 + beta/g_param)·s` edges on every balanced set with
/// `s` per side. Sampled violations above `t` do not affect the bound.
pub fn certified_lower_bound_at(
    g: &BipartiteGraph,
    g_param: usize,
    beta: Rational,
    t: usize,
    evidence: &DensityReport,
) -> Result<CertifiedBound> {
    check_k(t)?;
    if beta < Rational::zero() {
        return Err(Error::InvalidParameter(format!("beta = {beta} is negative")));
    }
    if g_param < 4 {
        return Err(Error::InvalidParameter(format!(
            "girth parameter {g_param} is below 4"
        )));
    }
    if let Some(gv) = g.girth() {
        if gv < g_param {
            return Err(Error::InvalidParameter(format!(
                "girth parameter {g_param} exceeds the measured girth {gv}"
            )));
        }
    }
    let sampled_matters = evidence.s_max_exhaustive < t && evidence.sampled_violations > 0;
    if evidence.exhaustive_violations() > 0 || sampled_matters {
        return Err(Error::InvalidParameter(format!(
            "density evidence records {} violating sets",
            evidence.violation_count
        )));
    }
    let slope = Rational::from_int(2) + beta / Rational::from_int(g_param as i64);
    for c in evidence.checks.iter().filter(|c| c.s <= t) {
        if c.allowed > slope * Rational::from_int(c.s as i64) {
            return Err(Error::InvalidParameter(format!(
                "density evidence allows {} edges at s = {}, above (2 + beta/g)·s",
                c.allowed, c.s
            )));
        }
    }
    let formula = peel_ratio(g_param, beta);
    let floor = Rational::new(1, t as i64);
    let vacuous = formula <= floor;
    let verified_through = evidence.s_max_exhaustive.min(t);
    Ok(CertifiedBound {
        value: if vacuous { floor } else { formula },
        formula,
        g: g_param,
        beta,
        t,
        vacuous,
        certification: if evidence.s_max_exhaustive >= t {
            Certification::Full
        } else {
            Certification::Sampled
        },
        verified_through,
    })
}
