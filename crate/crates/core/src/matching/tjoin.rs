use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::min_weight_perfect_matching;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TJoin {
    /// Edge ids, ascending.
    pub edges: Vec<EdgeId>,
    pub weight: Weight,
}

/// Dijkstra from `source`; returns distances and the edge used to reach each vertex.
pub(crate) fn dijkstra(
    g: &WeightedGraph,
    source: Vertex,
) -> (Vec<Option<Weight>>, Vec<Option<EdgeId>>) {
    let mut dist: Vec<Option<Weight>> = vec![None; g.n()];
    let mut via = vec![None; g.n()];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Weight::ZERO);
    heap.push(Reverse((Weight::ZERO, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v] != Some(d) {
            continue;
        }
        for &(w, e) in g.neighbors(v) {
            let nd = d + g.weight(e);
            if dist[w].map_or(true, |old| nd < old) {
                dist[w] = Some(nd);
                via[w] = Some(e);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, via)
}

/// Minimum-weight T-join under non-negative weights.
///
/// Shortest-path metric closure on `t_set`, a minimum-weight perfect matching
/// on the closure, then the symmetric difference of the matched shortest
/// paths. Returns `Ok(None)` when some component holds an odd number of
/// `t_set` vertices.
pub fn min_weight_t_join(g: &WeightedGraph, t_set: &[Vertex]) -> Result<Option<TJoin>> {
    g.require_nonnegative()?;
    for &v in t_set {
        g.check_vertex(v)?;
    }
    let mut terminals = t_set.to_vec();
    terminals.sort_unstable();
    terminals.dedup();
    if terminals.len() != t_set.len() {
        return Err(Error::InvalidInput(
            "T-join terminal set has duplicates".into(),
        ));
    }
    if terminals.len() % 2 == 1 {
        return Err(Error::InvalidInput(
            "T-join terminal set has odd size".into(),
        ));
    }
    let trees: Vec<_> = terminals.iter().map(|&v| dijkstra(g, v)).collect();
    let mut closure = WeightedGraph::new(terminals.len());
    for i in 0..terminals.len() {
        for j in i + 1..terminals.len() {
            if let Some(d) = trees[i].0[terminals[j]] {
                closure.add_edge(i, j, d).expect("fresh closure edge");
            }
        }
    }
    let Some(matching) = min_weight_perfect_matching(&closure) else {
        return Ok(None);
    };
    let mut in_join = vec![false; g.m()];
    for &ce in &matching.edges {
        let pair = closure.edge(ce);
        let via = &trees[pair.u].1;
        let mut v = terminals[pair.v];
        while let Some(e) = via[v] {
            in_join[e] = !in_join[e];
            v = g.edge(e).other(v);
        }
    }
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&e| in_join[e]).collect();
    let weight = edges.iter().map(|&e| g.weight(e)).sum();
    Ok(Some(TJoin { edges, weight }))
}
