//! Conservativeness test: no cycle of negative total weight.
//!
//! With `T` the odd-degree vertices of the negative edges `N`, the weights
//! are conservative exactly when a minimum `|w|`-weight `T`-join weighs
//! `|w|(N)`. Otherwise `J xor N` is an Eulerian edge set of negative weight
//! and one of its cycles is negative.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::matching::min_weight_t_join;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conservativeness {
    Conservative,
    /// A simple cycle of negative weight, listed without repeating the first vertex.
    NegativeCycle(Vec<Vertex>),
}

pub fn check_conservative(g: &WeightedGraph) -> Conservativeness {
    let negative = g.negative_edges();
    if negative.is_empty() {
        return Conservativeness::Conservative;
    }
    let mut odd = vec![false; g.n()];
    for &e in &negative {
        odd[g.edge(e).u] ^= true;
        odd[g.edge(e).v] ^= true;
    }
    let t_set: Vec<Vertex> = (0..g.n()).filter(|&v| odd[v]).collect();
    let absolute = g.map_weights(|_, e| e.weight.abs());
    let join = min_weight_t_join(&absolute, &t_set)
        .expect("absolute weights and even terminal set")
        .expect("the negative edges themselves form a T-join");
    let negative_mass: Weight = negative.iter().map(|&e| g.weight(e).abs()).sum();
    if join.weight == negative_mass {
        return Conservativeness::Conservative;
    }
    let mut in_c = vec![false; g.m()];
    for &e in &negative {
        in_c[e] = true;
    }
    for &e in &join.edges {
        in_c[e] = !in_c[e];
    }
    let cycles = eulerian_cycles(g, &in_c);
    let worst = cycles
        .into_iter()
        .map(|c| {
            let mut closed = c.clone();
            closed.push(c[0]);
            (g.path_weight(&closed).expect("cycle follows edges"), c)
        })
        .min()
        .expect("negative Eulerian set has a cycle");
    debug_assert!(worst.0.is_negative());
    Conservativeness::NegativeCycle(worst.1)
}

pub fn require_conservative(g: &WeightedGraph) -> Result<()> {
    match check_conservative(g) {
        Conservativeness::Conservative => Ok(()),
        Conservativeness::NegativeCycle(cycle) => Err(Error::NotConservative { cycle }),
    }
}

/// Splits an edge set with all degrees even into edge-disjoint simple cycles.
fn eulerian_cycles(g: &WeightedGraph, member: &[bool]) -> Vec<Vec<Vertex>> {
    let mut adjacency: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); g.n()];
    for (e, edge) in g.edges().iter().enumerate() {
        if member[e] {
            adjacency[edge.u].push((edge.v, e));
            adjacency[edge.v].push((edge.u, e));
        }
    }
    let mut used = vec![false; g.m()];
    let mut position = vec![usize::MAX; g.n()];
    let mut cycles = Vec::new();
    for start in 0..g.n() {
        let mut stack = vec![start];
        position[start] = 0;
        loop {
            let top = *stack.last().expect("walk is never empty");
            let next = loop {
                match adjacency[top].pop() {
                    Some((w, e)) if !used[e] => break Some((w, e)),
                    Some(_) => continue,
                    None => break None,
                }
            };
            let Some((w, e)) = next else {
                debug_assert_eq!(stack.len(), 1, "even degrees close every walk");
                break;
            };
            used[e] = true;
            if position[w] != usize::MAX {
                let cycle = stack.split_off(position[w] + 1);
                let mut full = vec![w];
                full.extend(cycle);
                for &v in &full[1..] {
                    position[v] = usize::MAX;
                }
                cycles.push(full);
            } else {
                position[w] = stack.len();
                stack.push(w);
            }
        }
        position[start] = usize::MAX;
    }
    cycles
}
