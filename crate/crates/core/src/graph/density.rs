//! Balanced-subgraph density checks.
//!
//! For every `s` up to a cap, the scan decides whether some vertex set with
//! exactly `s` vertices on each side spans more edges than `bound(s)`. Two exact
//! methods are used:
//!
//! * enumeration of all `s`-subsets of the smaller side; the other side then
//!   takes the `s` vertices with the most neighbours in the subset, which is
//!   the densest completion;
//! * a girth argument: a graph on `v` vertices with girth `γ` is a forest when
//!   `v < γ`, and has at most one independent cycle when
//!   `v < γ + ⌈γ/2⌉ - 1` (a theta subgraph needs that many vertices), so it
//!   spans at most `v - 1` resp. `v` edges.
//!
//! Beyond the exhaustive range, random balanced sets are grown around random
//! edges and checked individually.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::BipartiteGraph;
use crate::Rational;

/// Maximum number of violating sets kept in a report.
const MAX_LISTED: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMethod {
    /// All subsets of one side were enumerated.
    Enumeration,
    /// The girth of the host bounds the edge count of every set of this size.
    GirthCertificate,
    /// The graph has fewer than `s` vertices on some side.
    NoSuchSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeCheck {
    pub s: usize,
    pub allowed: Rational,
    pub method: DensityMethod,
    /// Exact maximum for enumeration, an upper bound for the girth certificate.
    pub max_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityViolation {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub edges: usize,
    pub allowed: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    /// Every balanced set with at most this many vertices per side was checked.
    pub s_max_exhaustive: usize,
    pub checks: Vec<SizeCheck>,
    /// Violating sets (at most one per enumerated subset; list truncated).
    pub violations: Vec<DensityViolation>,
    pub violation_count: u64,
    pub sampled_trials: u64,
    pub sampled_violations: u64,
}

impl DensityReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0 && self.sampled_violations == 0
    }

    pub fn exhaustive_violations(&self) -> u64 {
        self.violation_count - self.sampled_violations
    }

    /// Allowed edge count used at size `s`, if `s` was in the exhaustive range.
    pub fn allowed_at(&self, s: usize) -> Option<Rational> {
        self.checks.iter().find(|c| c.s == s).map(|c| c.allowed)
    }
}

/// Scan configuration.
#[derive(Debug, Clone, Copy)]
pub struct DensityScan {
    pub s_cap: usize,
    /// Largest `s` for random sampling; defaults to `min(2 * s_cap, side size)`.
    pub sample_s_max: Option<usize>,
    pub samples: u64,
    pub seed: u64,
    /// Largest number of subsets enumerated for one `s`.
    pub enumeration_budget: u64,
}

impl DensityScan {
    pub fn new(s_cap: usize) -> Self {
        DensityScan {
            s_cap,
            sample_s_max: None,
            samples: 0,
            seed: 0,
            enumeration_budget: 20_000_000,
        }
    }

    pub fn samples(mut self, samples: u64, seed: u64) -> Self {
        self.samples = samples;
        self.seed = seed;
        self
    }

    pub fn run<F>(&self, g: &BipartiteGraph, bound: F) -> DensityReport
    where
        F: Fn(usize) -> Rational,
    {
        assert!(self.s_cap >= 1, "s_cap must be at least 1");
        let mut report = DensityReport {
            s_max_exhaustive: 0,
            checks: Vec::new(),
            violations: Vec::new(),
            violation_count: 0,
            sampled_trials: 0,
            sampled_violations: 0,
        };
        let girth = g.girth();
        let min_side = g.n_a().min(g.n_b());
        for s in 1..=self.s_cap {
            let allowed = bound(s);
            let check = if s > min_side {
                SizeCheck {
                    s,
                    allowed,
                    method: DensityMethod::NoSuchSet,
                    max_edges: 0,
                }
            } else if let Some(max_edges) = enumerate_size(g, s, allowed, self.enumeration_budget, &mut report) {
                SizeCheck {
                    s,
                    allowed,
                    method: DensityMethod::Enumeration,
                    max_edges,
                }
            } else {
                match girth_edge_bound(girth, s) {
                    Some(ub) if Rational::from(ub as i64) <= allowed => SizeCheck {
                        s,
                        allowed,
                        method: DensityMethod::GirthCertificate,
                        max_edges: ub,
                    },
                    _ => break,
                }
            };
            report.checks.push(check);
            report.s_max_exhaustive = s;
        }

        let s_lo = report.s_max_exhaustive + 1;
        let s_hi = self
            .sample_s_max
            .unwrap_or(2 * self.s_cap)
            .min(min_side);
        if self.samples > 0 && s_lo <= s_hi && g.num_edges() > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for _ in 0..self.samples {
                let s = rng.gen_range(s_lo..=s_hi);
                let (sa, sb) = grow_balanced(g, s, &mut rng);
                let edges = g.edges_between(&sa, &sb);
                let allowed = bound(s);
                report.sampled_trials += 1;
                if Rational::from(edges as i64) > allowed {
                    report.sampled_violations += 1;
                    report.violation_count += 1;
                    push_violation(&mut report, sa, sb, edges, allowed);
                }
            }
        }
        report
    }
}

/// Exhaustive check up to `s_cap`, then `samples` random sets beyond it.
pub fn balanced_density_scan<F>(
    g: &BipartiteGraph,
    s_cap: usize,
    bound: F,
    samples: u64,
    seed: u64,
) -> DensityReport
where
    F: Fn(usize) -> Rational,
{
    DensityScan::new(s_cap).samples(samples, seed).run(g, bound)
}

fn push_violation(
    report: &mut DensityReport,
    mut side_a: Vec<usize>,
    mut side_b: Vec<usize>,
    edges: usize,
    allowed: Rational,
) {
    if report.violations.len() < MAX_LISTED {
        side_a.sort_unstable();
        side_b.sort_unstable();
        report.violations.push(DensityViolation {
            side_a,
            side_b,
            edges,
            allowed,
        });
    }
}

/// Upper bound on the edges spanned by `s + s` vertices given the host girth.
fn girth_edge_bound(girth: Option<usize>, s: usize) -> Option<usize> {
    let v = 2 * s;
    let ub = match girth {
        None => v - 1,
        Some(gamma) if v < gamma => v - 1,
        Some(gamma) if v < gamma + gamma.div_ceil(2) - 1 => v,
        _ => return None,
    };
    Some(ub.min(s * s))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return r;
        }
    }
    r
}

/// Enumerates `s`-subsets of the smaller side; returns the exact densest edge
/// count, or `None` when the subset count exceeds the budget.
fn enumerate_size(
    g: &BipartiteGraph,
    s: usize,
    allowed: Rational,
    budget: u64,
    report: &mut DensityReport,
) -> Option<usize> {
    let a_small = binomial(g.n_a(), s) <= binomial(g.n_b(), s);
    let (n_small, n_large) = if a_small {
        (g.n_a(), g.n_b())
    } else {
        (g.n_b(), g.n_a())
    };
    if binomial(n_small, s) > budget as u128 {
        return None;
    }
    let neighbors = |v: usize| {
        if a_small {
            g.neighbors_a(v)
        } else {
            g.neighbors_b(v)
        }
    };

    let mut best = 0;
    let mut counts = vec![0usize; n_large];
    let mut touched: Vec<usize> = Vec::new();
    let mut subset: Vec<usize> = (0..s).collect();
    loop {
        for &v in &subset {
            for &w in neighbors(v) {
                if counts[w] == 0 {
                    touched.push(w);
                }
                counts[w] += 1;
            }
        }
        touched.sort_unstable_by(|x, y| counts[*y].cmp(&counts[*x]).then(x.cmp(y)));
        let top: Vec<usize> = touched.iter().copied().take(s).collect();
        let edges: usize = top.iter().map(|&w| counts[w]).sum();
        best = best.max(edges);
        if Rational::from(edges as i64) > allowed {
            report.violation_count += 1;
            let mut other = top;
            // pad with untouched vertices so the set stays balanced
            let mut w = 0;
            while other.len() < s {
                if counts[w] == 0 && !other.contains(&w) {
                    other.push(w);
                }
                w += 1;
            }
            let (sa, sb) = if a_small {
                (subset.clone(), other)
            } else {
                (other, subset.clone())
            };
            push_violation(report, sa, sb, edges, allowed);
        }
        for w in touched.drain(..) {
            counts[w] = 0;
        }
        if !next_combination(&mut subset, n_small) {
            break;
        }
    }
    Some(best)
}

/// Advances `c` to the next `k`-combination of `[0, n)` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Random balanced set grown from a random edge through neighbourhoods.
fn grow_balanced(g: &BipartiteGraph, s: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let &(a0, b0) = g.edges().choose(rng).expect("graph has edges");
    let mut in_a = vec![false; g.n_a()];
    let mut in_b = vec![false; g.n_b()];
    let (mut sa, mut sb) = (vec![a0], vec![b0]);
    in_a[a0] = true;
    in_b[b0] = true;
    while sa.len() < s || sb.len() < s {
        let grow_a = sa.len() < s && (sa.len() <= sb.len() || sb.len() == s);
        if grow_a {
            let cand: Vec<usize> = sb
                .iter()
                .flat_map(|&b| g.neighbors_b(b).iter().copied())
                .filter(|&a| !in_a[a])
                .collect();
            let a = match cand.choose(rng) {
                Some(&a) => a,
                None => random_unused(&in_a, rng),
            };
            in_a[a] = true;
            sa.push(a);
        } else {
            let cand: Vec<usize> = sa
                .iter()
                .flat_map(|&a| g.neighbors_a(a).iter().copied())
                .filter(|&b| !in_b[b])
                .collect();
            let b = match cand.choose(rng) {
                Some(&b) => b,
                None => random_unused(&in_b, rng),
            };
            in_b[b] = true;
            sb.push(b);
        }
    }
    (sa, sb)
}

fn random_unused(used: &[bool], rng: &mut ChaCha8Rng) -> usize {
    let free: Vec<usize> = (0..used.len()).filter(|&i| !used[i]).collect();
    *free.choose(rng).expect("side has room")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(num: i64, den: i64) -> impl Fn(usize) -> Rational {
        move |s| Rational::new(num * s as i64, den)
    }

    #[test]
    fn k33_with_quarter_slack_is_clean_through_two() {
        let g = BipartiteGraph::complete(3, 3);
        let r = balanced_density_scan(&g, 2, linear(9, 4), 0, 0);
        assert!(r.is_clean());
        assert_eq!(r.s_max_exhaustive, 2);
        assert_eq!(r.checks[1].max_edges, 4);
        assert_eq!(r.checks[1].method, DensityMethod::Enumeration);
    }

    #[test]
    fn k33_violates_at_three() {
        let g = BipartiteGraph::complete(3, 3);
        let r = balanced_density_scan(&g, 3, linear(9, 4), 0, 0);
        assert_eq!(r.violation_count, 1);
        let v = &r.violations[0];
        assert_eq!(v.edges, 9);
        assert_eq!((v.side_a.len(), v.side_b.len()), (3, 3));
        assert!(Rational::from(v.edges as i64) > v.allowed);
    }

    #[test]
    fn edgeless_never_violates() {
        let g = BipartiteGraph::empty(4, 4);
        let r = balanced_density_scan(&g, 4, |_| Rational::zero(), 10, 1);
        assert!(r.is_clean());
    }

    #[test]
    fn four_cycle_at_two_s() {
        let g = BipartiteGraph::cycle(2);
        let r = balanced_density_scan(&g, 2, linear(2, 1), 0, 0);
        assert!(r.is_clean());
        assert_eq!(r.checks[1].max_edges, 4);
    }

    #[test]
    fn girth_certificate_used_when_enumeration_too_large() {
        let g = BipartiteGraph::cycle(40);
        let scan = DensityScan {
            enumeration_budget: 10,
            ..DensityScan::new(5)
        };
        let r = scan.run(&g, linear(25, 12));
        assert_eq!(r.s_max_exhaustive, 5);
        assert!(r
            .checks
            .iter()
            .skip(1)
            .all(|c| c.method == DensityMethod::GirthCertificate));
    }

    #[test]
    fn sampling_is_seeded() {
        let g = BipartiteGraph::cycle(30);
        let scan = DensityScan {
            enumeration_budget: 10,
            ..DensityScan::new(2).samples(50, 9)
        };
        let r1 = scan.run(&g, |_| Rational::zero());
        let r2 = scan.run(&g, |_| Rational::zero());
        assert_eq!(r1, r2);
        assert_eq!(r1.sampled_trials, 50);
        assert_eq!(r1.sampled_violations, 50);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
