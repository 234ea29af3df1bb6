//! Exact algorithms for shortest odd paths in undirected graphs whose edge
//! weights may be negative but contain no negative cycle.

#![no_std]
extern crate alloc;

pub mod conservative;
pub mod error;
pub mod forest;
pub mod fpt;
pub mod generate;
pub mod graph;
pub mod instances;
pub mod leaps;
pub mod matching;
pub mod oracle;
pub mod spcop;
pub mod tree_solver;
pub mod treewidth;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, OddPathSolution, PathSolution, Vertex, WeightedGraph, WeightedPath};
pub use weight::Weight;
