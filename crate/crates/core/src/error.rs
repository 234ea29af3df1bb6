use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Vertex};

/// Errors shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} is out of range for a graph with {m} edges")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("source and target coincide at vertex {0}")]
    SameTerminals(Vertex),
    #[error("negative edge {0} where only non-negative weights are accepted")]
    NegativeWeight(EdgeId),
    #[error("weights are not conservative; negative cycle through {cycle:?}")]
    NotConservative { cycle: Vec<Vertex> },
    #[error("constraint sets overlap on edge {0}")]
    ConstraintsOverlap(EdgeId),
    #[error("negative edge {0} is not covered by the parity constraint")]
    UncoveredNegativeEdge(EdgeId),
    #[error("vertex {vertex} is not in negative tree {tree}")]
    NotInTree { vertex: Vertex, tree: usize },
    #[error(
        "wrong solver: the negative edges form {trees} trees, this solver handles at most one"
    )]
    WrongSolver { trees: usize },
    #[error("{parameter} = {value} exceeds the configured limit {limit}")]
    ParameterTooLarge {
        parameter: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
