//! Desk-scale checks behind `mtcap verify`.

use mtcap_core::capacity::peel_floor;
use mtcap_core::constructor::{build_multitasker, sample_local_matching, ConstructionOptions, ConstructionParams};
use mtcap_core::gadgets::{biclique_cm_gadget, boxminus, gen_half_cover, perfect_cm_gadget};
use mtcap_core::solvers::{
    clique_number, connected_matching_number, connected_matching_of_size, max_balanced_biclique,
};
use mtcap_core::{peel_independent_set, BipartiteGraph, GeneralGraph, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Outcome of one verification run. At most [`MAX_EXAMPLES`] counterexamples
/// are kept; `failures` counts all of them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub property: String,
    pub checked: u64,
    pub failures: u64,
    pub holds: bool,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

pub const MAX_EXAMPLES: usize = 5;

impl Verification {
    fn from_outcomes(property: &str, outcomes: Vec<Option<Value>>, details: Value) -> Self {
        let checked = outcomes.len() as u64;
        let bad: Vec<Value> = outcomes.into_iter().flatten().collect();
        Verification {
            property: property.to_string(),
            checked,
            failures: bad.len() as u64,
            holds: bad.is_empty(),
            counterexamples: bad.into_iter().take(MAX_EXAMPLES).collect(),
            details,
        }
    }
}

/// Every bipartite graph with `n` vertices per side, one per edge mask.
pub fn all_balanced(n: usize) -> impl Iterator<Item = BipartiteGraph> {
    let cells = n * n;
    (0u64..1 << cells).map(move |mask| {
        let edges = (0..cells).filter(|&c| mask >> c & 1 == 1).map(|c| (c / n, c % n));
        BipartiteGraph::new(n, n, edges).expect("cells are in range")
    })
}

fn edges_json(g: &BipartiteGraph) -> Value {
    json!(g.edges())
}

/// Random graph on `n` vertices, each pair present with probability 1/2.
pub fn random_general(n: usize, rng: &mut impl Rng) -> GeneralGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<bool>() {
                edges.push((u, v));
            }
        }
    }
    GeneralGraph::new(n, edges).expect("pairs are in range")
}

/// Peeling floor on matchings of size at most `t` in a constructed multitasker.
pub fn verify_lemma62(
    params: &ConstructionParams,
    opts: &ConstructionOptions,
    matchings: usize,
    seed: u64,
) -> Result<Verification> {
    let (g, cert) = build_multitasker(params, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<_> = (0..matchings)
        .map(|i| sample_local_matching(&g, 1 + i % cert.t, &mut rng))
        .collect();
    let (g_param, beta) = (cert.g_chosen, cert.beta);
    let outcomes: Vec<Option<Value>> = samples
        .par_iter()
        .map(|m| {
            let f = g.contract_matching(m).expect("sampled matchings are valid");
            let trace = peel_independent_set(&f, g_param, beta);
            let set = trace.independent_set.members();
            let floor = peel_floor(m.len(), g_param, beta);
            let ok = f.is_independent(set) && set.len() as i64 >= floor;
            (!ok).then(|| json!({ "matching": m, "independent": set.len(), "floor": floor }))
        })
        .collect();
    let details = json!({
        "g": g_param,
        "beta": beta,
        "t": cert.t,
        "attempts": cert.attempts,
        "seed_used": cert.seed_used,
        "ratio_floor": Rational::new(1, 2)
            - (Rational::one() + beta) / Rational::from_int(g_param as i64),
    });
    Ok(Verification::from_outcomes(
        "peeling finds an independent set of size at least ceil((1/2 - (1+beta)/g) s)",
        outcomes,
        details,
    ))
}

/// Sandwich `ω(G) ≤ ν_c(G ⊟ H) ≤ ω(G) + 3 ν_c(H)` on random `G` with
/// `2..=max_n` vertices and half-cover `H`.
pub fn verify_claim34(pairs: usize, max_n: usize, seed: u64, budget: Option<u64>) -> Result<Verification> {
    let max_n = max_n.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(GeneralGraph, BipartiteGraph)> = (0..pairs)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let g = random_general(n, &mut rng);
            let h = gen_half_cover(n, rng.gen()).map(|hc| hc.graph);
            (g, h)
        })
        .map(|(g, h)| h.map(|h| (g, h)))
        .collect::<Result<_>>()?;
    let outcomes = cases
        .par_iter()
        .map(|(g, h)| {
            let omega = clique_number(g);
            let nu = connected_matching_number(&boxminus(g, h)?, budget)?;
            let nu_h = connected_matching_number(h, budget)?;
            let ok = omega <= nu && nu <= omega + 3 * nu_h;
            Ok((!ok).then(|| {
                json!({ "g": g.edges(), "n": g.n(), "h": edges_json(h), "omega": omega, "nu_c": nu, "nu_c_h": nu_h })
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verification::from_outcomes(
        "omega(G) <= nu_c(G boxminus H) <= omega(G) + 3 nu_c(H)",
        outcomes,
        Value::Null,
    ))
}

/// `ν_c(G) ≥ k` iff the perfect-cover gadget has a connected matching
/// covering a full side, for every balanced `G` with `N ≤ max_n` and `1 ≤ k ≤ N`.
pub fn verify_thm35(max_n: usize, budget: Option<u64>) -> Result<Verification> {
    let mut outcomes = Vec::new();
    for n in 1..=max_n {
        let graphs: Vec<BipartiteGraph> = all_balanced(n).collect();
        let part = graphs
            .par_iter()
            .map(|g| {
                let nu = connected_matching_number(g, budget)?;
                (1..=n)
                    .map(|k| {
                        let gadget = perfect_cm_gadget(g, k)?;
                        let side = gadget.n_a();
                        let full = connected_matching_of_size(&gadget, side, budget)?.is_some();
                        Ok(((nu >= k) != full).then(|| {
                            json!({ "graph": edges_json(g), "n": n, "k": k, "nu_c": nu, "full_cover": full })
                        }))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        outcomes.extend(part.into_iter().flatten());
    }
    Ok(Verification::from_outcomes(
        "nu_c(G) >= k iff the gadget has a connected matching covering a side",
        outcomes,
        Value::Null,
    ))
}

/// `ν_c(gadget) = 2n + k`, `k` the largest balanced biclique, for every
/// balanced `G` with `n ≤ max_n`. The observed `ν_c` values are tallied in
/// `details`.
pub fn verify_appendix_a(max_n: usize, budget: Option<u64>) -> Result<Verification> {
    let mut outcomes = Vec::new();
    let mut tally = std::collections::BTreeMap::<String, u64>::new();
    for n in 1..=max_n {
        let graphs: Vec<BipartiteGraph> = all_balanced(n).collect();
        let part = graphs
            .par_iter()
            .map(|g| {
                let k = max_balanced_biclique(g);
                let nu = connected_matching_number(&biclique_cm_gadget(g)?, budget)?;
                Ok((n, k, nu, g))
            })
            .collect::<Result<Vec<_>>>()?;
        for (n, k, nu, g) in part {
            *tally.entry(format!("n={n} k={k} nu_c={nu}")).or_default() += 1;
            let ok = nu == 2 * n + k;
            outcomes.push((!ok).then(|| {
                json!({ "graph": edges_json(g), "n": n, "k": k, "nu_c": nu, "expected": 2 * n + k })
            }));
        }
    }
    Ok(Verification::from_outcomes(
        "nu_c(gadget) = 2n + k",
        outcomes,
        json!({ "observed": tally }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_graphs() {
        assert_eq!(all_balanced(2).count(), 16);
        assert_eq!(all_balanced(2).last().unwrap(), BipartiteGraph::complete(2, 2));
    }

    #[test]
    fn small_verifications() {
        assert!(verify_thm35(2, None).unwrap().holds);
        assert!(verify_claim34(10, 5, 3, None).unwrap().holds);
        let a = verify_appendix_a(1, None).unwrap();
        assert_eq!(a.checked, 2);
    }
}
