use alloc::vec::Vec;

use crate::graph::Vertex;

/// A DP key in vertex terms: bag degrees, pairs of bag vertices ending the
/// same path, and the parity of the edge count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialState {
    /// One entry per bag vertex, in bag order.
    pub degrees: Vec<(Vertex, u8)>,
    /// `(a, b)` with `a < b`, sorted.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub parity: u8,
}
