//! Random sparse multitaskers with a checkable capacity certificate, and the
//! search for cycles that cap capacity below one half.
//!
//! The pipeline samples `G'(n, n, d/n)`, deletes an edge from every cycle of
//! length at most `g`, scans balanced subgraphs for excess density, and turns
//! the girth and density evidence into a lower bound on `α_{≤t}`.

use std::ops::ControlFlow;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{certified_lower_bound_at, CertifiedBound};
use crate::error::{Error, Result};
use crate::graph::{
    break_short_cycles, count_short_cycles, enumerate_cycles, BipartiteGraph, CycleSearch, DensityReport, DensityScan,
    DEFAULT_CYCLE_BUDGET,
};
use crate::matching::{max_induced_submatching, Matching};
use crate::{Edge, Rational};

/// Added (times the attempt number) to the seed on each retry.
pub const RETRY_SEED_STEP: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub d: usize,
    pub epsilon: Rational,
    pub seed: u64,
}

impl ConstructionParams {
    pub fn new(n: usize, d: usize, epsilon: Rational, seed: u64) -> Result<Self> {
        if n == 0 || d == 0 || d > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= d <= n, got d = {d}, n = {n}"
            )));
        }
        if epsilon <= Rational::zero() || epsilon >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {epsilon} is outside (0, 1)"
            )));
        }
        Ok(ConstructionParams {
            n,
            d,
            epsilon,
            seed,
        })
    }

    /// Smallest even integer `≥ 2/ε`.
    pub fn g_chosen(&self) -> usize {
        let g = (Rational::from_int(2) / self.epsilon).ceil_int() as usize;
        (g + g % 2).max(4)
    }

    /// `β = g·ε/4`.
    pub fn beta(&self) -> Rational {
        Rational::from_int(self.g_chosen() as i64) * self.epsilon / Rational::from_int(4)
    }

    /// `ε ≥ 20·log₂ d / log₂ n`, evaluated in floating point.
    pub fn theorem_regime(&self) -> bool {
        if self.n < 2 {
            return false;
        }
        self.epsilon.to_f64() * (self.n as f64).log2() >= 20.0 * (self.d as f64).log2()
    }

    /// `(1/(101·e⁵))^{4/ε} · n / d^{1+8/ε}`, the matching size the asymptotic
    /// argument covers. Far below 1 at any feasible size.
    pub fn k_theorem(&self) -> f64 {
        let e = self.epsilon.to_f64();
        let c = 1.0 / (101.0 * 5f64.exp());
        c.powf(4.0 / e) * self.n as f64 / (self.d as f64).powf(1.0 + 8.0 / e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionOptions {
    /// Largest matching size the certificate covers.
    pub t_cap: usize,
    pub density_samples: u64,
    pub retries: usize,
    pub cycle_budget: u64,
    pub enumeration_budget: u64,
    /// Whether more than `√n` short cycles fails an attempt. `None` enforces
    /// the cap only in the theorem regime.
    pub enforce_cycle_cap: Option<bool>,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions {
            t_cap: 5,
            density_samples: 2000,
            retries: 5,
            cycle_budget: DEFAULT_CYCLE_BUDGET,
            enumeration_budget: 20_000_000,
            enforce_cycle_cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionCertificate {
    pub g_chosen: usize,
    pub beta: Rational,
    pub t: usize,
    /// `None` when the final graph is a forest.
    pub girth_after: Option<usize>,
    pub short_cycles_found: u64,
    pub short_cycles_removed: usize,
    pub cycle_cap: u64,
    pub cycle_cap_enforced: bool,
    pub density_report: DensityReport,
    pub avg_degree_final: Rational,
    pub alpha_floor: Rational,
    pub vacuous: bool,
    pub fully_certified: bool,
    pub theorem_regime: bool,
    pub k_theorem: f64,
    pub attempts: usize,
    pub seed_used: u64,
    /// Why the attempt was rejected, if it was.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Seed of attempt `r` (0-based).
pub fn attempt_seed(seed: u64, r: usize) -> u64 {
    seed.wrapping_add((r as u64).wrapping_mul(RETRY_SEED_STEP))
}

/// `G'(n, n, d/n)`: one ChaCha8 draw `x` per potential edge `(a, b)` in
/// row-major order; the edge is kept iff `x·n < d·2⁶⁴`.
pub fn sample_bipartite(n: usize, d: usize, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = (d as u128) << 64;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if (rng.next_u64() as u128) * (n as u128) < threshold {
                edges.push((a, b));
            }
        }
    }
    BipartiteGraph::new(n, n, edges).expect("indices are in range")
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn attempt(
    params: &ConstructionParams,
    opts: &ConstructionOptions,
    r: usize,
) -> Result<(BipartiteGraph, ConstructionCertificate)> {
    let g_chosen = params.g_chosen();
    let beta = params.beta();
    let t = opts.t_cap;
    let seed_used = attempt_seed(params.seed, r);
    let theorem_regime = params.theorem_regime();
    let enforce = opts.enforce_cycle_cap.unwrap_or(theorem_regime);
    let cycle_cap = isqrt(params.n as u64);

    let sampled = sample_bipartite(params.n, params.d, seed_used);
    let (graph, removed) = break_short_cycles(&sampled, g_chosen, opts.cycle_budget)?;
    let found = count_short_cycles(&sampled, g_chosen, opts.cycle_budget)?;

    let slope = Rational::from_int(2) + beta / Rational::from_int(g_chosen as i64);
    let mut scan = DensityScan::new(t).samples(opts.density_samples, seed_used);
    scan.enumeration_budget = opts.enumeration_budget;
    let density_report = scan.run(&graph, |s| slope * Rational::from_int(s as i64));

    let mut failure = None;
    if enforce && found > cycle_cap {
        failure = Some(format!("{found} short cycles exceed the cap of {cycle_cap}"));
    } else if density_report.exhaustive_violations() > 0 {
        failure = Some(format!(
            "{} balanced sets exceed the density bound",
            density_report.exhaustive_violations()
        ));
    }
    let bound = if failure.is_none() {
        match certified_lower_bound_at(&graph, g_chosen, beta, t, &density_report) {
            Ok(b) => Some(b),
            Err(e) => {
                failure = Some(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let trivial = Rational::new(1, t as i64);
    let cert = ConstructionCertificate {
        g_chosen,
        beta,
        t,
        girth_after: graph.girth(),
        short_cycles_found: found,
        short_cycles_removed: removed.len(),
        cycle_cap,
        cycle_cap_enforced: enforce,
        avg_degree_final: Rational::new(graph.num_edges() as i64, params.n as i64),
        alpha_floor: bound.as_ref().map_or(trivial, |b: &CertifiedBound| b.value),
        vacuous: bound.as_ref().is_none_or(|b| b.vacuous),
        fully_certified: bound.as_ref().is_some_and(|b| {
            b.certification == crate::capacity::Certification::Full
        }),
        density_report,
        theorem_regime,
        k_theorem: params.k_theorem(),
        attempts: r + 1,
        seed_used,
        failure,
    };
    Ok((graph, cert))
}

/// Samples, breaks short cycles, scans density and certifies; retries with a
/// derived seed (see [`attempt_seed`]) when an attempt is rejected. Errors
/// with [`Error::ConstructionFailed`] carrying the last certificate once the
/// retries are spent.
pub fn build_multitasker(
    params: &ConstructionParams,
    opts: &ConstructionOptions,
) -> Result<(BipartiteGraph, ConstructionCertificate)> {
    if opts.t_cap == 0 {
        return Err(Error::InvalidParameter("t_cap must be at least 1".into()));
    }
    let tries = opts.retries.max(1);
    let mut last = None;
    for r in 0..tries {
        let (graph, cert) = attempt(params, opts, r)?;
        if cert.failure.is_none() {
            return Ok((graph, cert));
        }
        last = Some(cert);
    }
    Err(Error::ConstructionFailed(Box::new(
        last.expect("at least one attempt"),
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadCycle {
    /// Cycle in unified vertex ids (side B shifted by `n_a`).
    pub vertices: Vec<usize>,
    pub length: usize,
    /// Every other edge of the cycle, starting with its first edge.
    pub matching: Matching,
    pub induced: Matching,
}

impl BadCycle {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.induced.len() as i64, self.matching.len() as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum BadCycleSearch {
    Found(BadCycle),
    None,
    Inconclusive { budget: u64 },
}

/// Shortest cycle of length `≡ 2 (mod 4)` and at most `len_max`, with the
/// alternating matching of size `k = length/2` (odd) whose largest induced
/// sub-matching has at most `(k-1)/2` edges. Lengths are tried in increasing
/// order; within a length the first cycle in enumeration order is returned.
pub fn find_bad_cycle(g: &BipartiteGraph, len_max: usize, budget: u64) -> Result<BadCycleSearch> {
    if len_max < 6 {
        return Err(Error::InvalidParameter(format!(
            "len_max = {len_max} is below 6"
        )));
    }
    let general = g.to_general();
    let mut len = 6;
    while len <= len_max {
        let mut hit = None;
        let res = enumerate_cycles(&general, CycleSearch::new(len).with_budget(budget), |c| {
            if c.len() == len {
                hit = Some(c.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        match res {
            Err(Error::BudgetExceeded { budget }) => return Ok(BadCycleSearch::Inconclusive { budget }),
            Err(e) => return Err(e),
            Ok(_) => {}
        }
        if let Some(vertices) = hit {
            let edges: Vec<Edge> = (0..len / 2)
                .map(|i| g.unified_to_edge(vertices[2 * i], vertices[2 * i + 1]))
                .collect();
            let matching = Matching::new(g, edges)?;
            let induced = max_induced_submatching(g, &matching)?;
            return Ok(BadCycleSearch::Found(BadCycle {
                vertices,
                length: len,
                matching,
                induced,
            }));
        }
        len += 4;
    }
    Ok(BadCycleSearch::None)
}

/// Random matching of up to `size` edges grown around a random edge: each
/// further edge is disjoint from the matching and joined to some edge of it.
/// Stops early when no such edge is left.
pub fn sample_local_matching<R: Rng>(g: &BipartiteGraph, size: usize, rng: &mut R) -> Matching {
    if g.num_edges() == 0 || size == 0 {
        return Matching::empty();
    }
    let mut used_a = vec![false; g.n_a()];
    let mut used_b = vec![false; g.n_b()];
    let first = g.edges()[rng.gen_range(0..g.num_edges())];
    let mut chosen = vec![first];
    used_a[first.0] = true;
    used_b[first.1] = true;
    while chosen.len() < size {
        let mut options: Vec<Edge> = Vec::new();
        for &(a, b) in &chosen {
            // Edges (x, y) with x adjacent to b or y adjacent to a.
            for &x in g.neighbors_b(b) {
                if !used_a[x] {
                    options.extend(g.neighbors_a(x).iter().filter(|&&y| !used_b[y]).map(|&y| (x, y)));
                }
            }
            for &y in g.neighbors_a(a) {
                if !used_b[y] {
                    options.extend(g.neighbors_b(y).iter().filter(|&&x| !used_a[x]).map(|&x| (x, y)));
                }
            }
        }
        options.sort_unstable();
        options.dedup();
        if options.is_empty() {
            break;
        }
        let e = options[rng.gen_range(0..options.len())];
        used_a[e.0] = true;
        used_b[e.1] = true;
        chosen.push(e);
    }
    Matching::new(g, chosen).expect("grown edges are disjoint host edges")
}
