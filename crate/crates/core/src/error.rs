use thiserror::Error;

use crate::Edge;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("endpoint {index} out of range for side {side} (size {bound})")]
    EndpointOutOfRange {
        side: Side,
        index: usize,
        bound: usize,
    },
    #[error("vertex {index} out of range (graph has {bound} vertices)")]
    VertexOutOfRange { index: usize, bound: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not in the host graph")]
    EdgeNotInHost(usize, usize),
    #[error("edges ({0:?}) and ({1:?}) share an endpoint")]
    NotAMatching(Edge, Edge),
    #[error("graph is not balanced ({n_a} vs {n_b} vertices per side)")]
    Unbalanced { n_a: usize, n_b: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("work budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("construction failed after {} attempts: {}", .0.attempts, .0.failure.as_deref().unwrap_or("unknown"))]
    ConstructionFailed(Box<crate::constructor::ConstructionCertificate>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
