//! Exact multitasking-capacity analysis for bipartite graphs.
//!
//! The crate computes `α_k(G)`, `α_{≤k}(G)` and maximum connected matchings
//! exactly on small instances, builds the reduction gadgets relating these
//! quantities to cliques, independent sets and bicliques, and constructs
//! sparse random multitaskers together with a checkable certificate of their
//! capacity.
//!
//! Vertex indices are 0-based. Bipartite edges are `(a, b)` pairs with `a` on
//! side A and `b` on side B.

pub mod capacity;
pub mod constructor;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod rational;
pub mod solvers;

/// A bipartite edge `(a, b)`.
pub type Edge = (usize, usize);

pub use capacity::{
    alpha_k, alpha_upto, certified_lower_bound, certified_lower_bound_at, mt_decide,
    peel_independent_set, CapacityConfig, CapacityReport, CertifiedBound, Certification,
    PeelTrace,
};
pub use error::{Error, Result, Side};
pub use graph::{BipartiteGraph, DensityReport, GeneralGraph};
pub use matching::{classify, enumerate_matchings, Matching, MatchingClass, SizeMode};
pub use rational::Rational;
pub use solvers::VertexSet;
