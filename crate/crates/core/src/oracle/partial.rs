//! Partial solutions at a decomposition node, by subset enumeration.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};
use crate::treewidth::{NiceDecomposition, NiceKind, PartialState};
use crate::weight::Weight;

/// Largest edge set below a node that is enumerated.
pub const PARTIAL_EDGE_LIMIT: usize = 20;

/// For node `x`, the minimum weight of every edge set `F` of the subgraph
/// below `x` that is acyclic, has degree 0 or 2 at forgotten vertices and
/// at most 2 at bag vertices, keyed by bag degrees, the pairs of bag
/// vertices joined by a path of `F`, and the parity of `|F|`.
pub fn brute_force_partial_solutions(
    g: &WeightedGraph,
    nice: &NiceDecomposition,
    x: usize,
) -> Result<BTreeMap<PartialState, Weight>> {
    let mut below = vec![false; nice.len()];
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        below[y] = true;
        stack.extend(&nice.nodes[y].children);
    }
    let mut in_subgraph = vec![false; g.n()];
    let mut edges: Vec<EdgeId> = Vec::new();
    for (_, node) in nice.nodes.iter().enumerate().filter(|(y, _)| below[*y]) {
        for &v in &node.bag {
            in_subgraph[v] = true;
        }
        if let NiceKind::IntroduceEdge(e) = node.kind {
            edges.push(e);
        }
    }
    if edges.len() > PARTIAL_EDGE_LIMIT {
        return Err(Error::ParameterTooLarge {
            parameter: "edges below node",
            value: edges.len(),
            limit: PARTIAL_EDGE_LIMIT,
        });
    }
    let bag = &nice.nodes[x].bag;
    let mut in_bag = vec![false; g.n()];
    for &v in bag {
        in_bag[v] = true;
    }
    let mut best: BTreeMap<PartialState, Weight> = BTreeMap::new();
    for mask in 0u32..1 << edges.len() {
        let chosen: Vec<EdgeId> = (0..edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut degree = vec![0u8; g.n()];
        let mut label: Vec<usize> = (0..g.n()).collect();
        let mut acyclic = true;
        for &e in &chosen {
            let edge = g.edge(e);
            degree[edge.u] += 1;
            degree[edge.v] += 1;
            let (a, b) = (find(&label, edge.u), find(&label, edge.v));
            if a == b {
                acyclic = false;
            }
            label[a] = b;
        }
        let degrees_ok = (0..g.n()).filter(|&v| in_subgraph[v]).all(|v| {
            if in_bag[v] {
                degree[v] <= 2
            } else {
                degree[v] == 0 || degree[v] == 2
            }
        });
        if !acyclic || !degrees_ok {
            continue;
        }
        let ends: Vec<usize> = bag.iter().copied().filter(|&v| degree[v] == 1).collect();
        let mut pairs = Vec::new();
        for (i, &a) in ends.iter().enumerate() {
            for &b in &ends[i + 1..] {
                if find(&label, a) == find(&label, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        let state = PartialState {
            degrees: bag.iter().map(|&v| (v, degree[v])).collect(),
            pairs,
            parity: (chosen.len() % 2) as u8,
        };
        let weight: Weight = chosen.iter().map(|&e| g.weight(e)).sum();
        best.entry(state)
            .and_modify(|w| *w = (*w).min(weight))
            .or_insert(weight);
    }
    Ok(best)
}

fn find(label: &[usize], mut v: usize) -> usize {
    while label[v] != v {
        v = label[v];
    }
    v
}
