//! Seeded inputs shared by the benchmarks.

use mtcap_core::constructor::sample_bipartite;
use mtcap_core::gadgets::gen_half_cover;
use mtcap_core::{BipartiteGraph, GeneralGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn half_cover(n: usize, seed: u64) -> BipartiteGraph {
    gen_half_cover(n, seed).expect("n >= 1").graph
}

/// `G(n, p)` with a fixed seed.
pub fn random_general(n: usize, p: f64, seed: u64) -> GeneralGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    GeneralGraph::new(n, edges).expect("pairs are in range")
}

/// Sparse balanced bipartite graph with average degree about `d`.
pub fn sparse_bipartite(n: usize, d: usize, seed: u64) -> BipartiteGraph {
    sample_bipartite(n, d, seed)
}
