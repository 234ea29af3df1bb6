//! Reduction from two openly disjoint `(s, t)`-paths to a single odd path.
//!
//! Every edge `uv` is subdivided by a midpoint carrying half its weight on
//! each side. A new vertex `s'` is joined to the midpoints of the edges at
//! `s`, likewise `t'` for `t`, and `t t'` gets weight zero. Subdivided walks
//! between original vertices are even, so an odd `(s, s')`-path must use
//! `t t'` exactly once; splitting it there gives the two paths. Sharing the
//! midpoint between `s` and `s'` (and `t`, `t'`) keeps an edge at a terminal
//! from being used by both paths.
//!
//! The gadget need not be conservative, so the odd path solver must not rely
//! on that.

use alloc::vec::Vec;

use super::OpenlyDisjointPaths;
use crate::error::Result;
use crate::graph::{PathSolution, Vertex, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Clone)]
pub struct DisjointPathsGadget {
    pub graph: WeightedGraph,
    pub source: Vertex,
    /// The odd path runs from `source` to `source_copy`.
    pub source_copy: Vertex,
    pub target_copy: Vertex,
    original_n: usize,
    s: Vertex,
    t: Vertex,
}

pub fn disjoint_paths_gadget(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
) -> Result<DisjointPathsGadget> {
    g.check_terminals(s, t)?;
    let n = g.n();
    let m = g.m();
    let source_copy = n + m;
    let target_copy = n + m + 1;
    let mut graph = WeightedGraph::new(n + m + 2);
    let half = Weight::new(1, 2);
    for (e, edge) in g.edges().iter().enumerate() {
        let midpoint = n + e;
        let w = edge.weight * half;
        graph.add_edge(edge.u, midpoint, w)?;
        graph.add_edge(midpoint, edge.v, w)?;
        if edge.has(s) {
            graph.add_edge(source_copy, midpoint, w)?;
        }
        if edge.has(t) {
            graph.add_edge(target_copy, midpoint, w)?;
        }
    }
    graph.add_edge(t, target_copy, Weight::ZERO)?;
    Ok(DisjointPathsGadget {
        graph,
        source: s,
        source_copy,
        target_copy,
        original_n: n,
        s,
        t,
    })
}

impl DisjointPathsGadget {
    /// Maps an odd `(s, s')`-path of the gadget back to two openly disjoint paths.
    pub fn decode(&self, path: &[Vertex]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let split = path.windows(2).position(|w| {
            (w[0] == self.t && w[1] == self.target_copy)
                || (w[0] == self.target_copy && w[1] == self.t)
        })?;
        let map = |v: Vertex| {
            if v == self.source_copy {
                Some(self.s)
            } else if v == self.target_copy {
                Some(self.t)
            } else if v < self.original_n {
                Some(v)
            } else {
                None
            }
        };
        let first: Vec<Vertex> = path[..=split].iter().filter_map(|&v| map(v)).collect();
        let mut second: Vec<Vertex> = path[split + 1..].iter().filter_map(|&v| map(v)).collect();
        second.reverse();
        Some((first, second))
    }
}

/// Minimum-weight pair of openly disjoint `(s, t)`-paths obtained from any
/// shortest odd path solver applied to the gadget.
pub fn openly_disjoint_paths_via_odd_path(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    odd_path_solver: impl Fn(&WeightedGraph, Vertex, Vertex) -> Result<PathSolution>,
) -> Result<Option<OpenlyDisjointPaths>> {
    let gadget = disjoint_paths_gadget(g, s, t)?;
    let PathSolution::Found(path) =
        odd_path_solver(&gadget.graph, gadget.source, gadget.source_copy)?
    else {
        return Ok(None);
    };
    let (first, second) = gadget
        .decode(&path.vertices)
        .expect("odd path crosses t t'");
    let total_weight = g.path_weight(&first).expect("decoded path follows edges")
        + g.path_weight(&second).expect("decoded path follows edges");
    debug_assert_eq!(total_weight, path.weight);
    let (first, second) = if first <= second {
        (first, second)
    } else {
        (second, first)
    };
    Ok(Some(OpenlyDisjointPaths {
        first,
        second,
        total_weight,
    }))
}
