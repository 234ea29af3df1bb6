//! Brute-force reference solvers for small graphs.
//!
//! Everything here enumerates simple paths or cycles directly and shares no
//! code with the polynomial solvers, so agreement between the two is
//! meaningful.

mod partial;
mod sweep;

pub use partial::{brute_force_partial_solutions, PARTIAL_EDGE_LIMIT};
pub use sweep::{sweep, Disagreement, SweepFilter, SweepMode, SweepReport, SweepSolver, SweepSpec};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, PathSolution, Vertex, WeightedGraph, WeightedPath};
use crate::spcop::ParityConstraints;
use crate::tree_solver::{DisjointPaths, OpenlyDisjointPaths};
use crate::weight::{compare_candidates, Weight};

/// Default vertex limit for exhaustive enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 16;

fn guard(g: &WeightedGraph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::ParameterTooLarge {
            parameter: "oracle vertices",
            value: g.n(),
            limit,
        });
    }
    Ok(())
}

struct PathWalker<'g, F> {
    g: &'g WeightedGraph,
    target: Option<Vertex>,
    visited: Vec<bool>,
    stack: Vec<Vertex>,
    edges: Vec<EdgeId>,
    visit: F,
}

impl<'g, F: FnMut(&[Vertex], &[EdgeId])> PathWalker<'g, F> {
    fn extend(&mut self, v: Vertex) {
        if self.target.map_or(true, |t| t == v) {
            (self.visit)(&self.stack, &self.edges);
            if self.target.is_some() {
                return;
            }
        }
        for i in 0..self.g.neighbors(v).len() {
            let (w, e) = self.g.neighbors(v)[i];
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.stack.push(w);
            self.edges.push(e);
            self.extend(w);
            self.stack.pop();
            self.edges.pop();
            self.visited[w] = false;
        }
    }
}

/// Calls `visit` with every simple path starting at `s` (ending at `t` if
/// given), avoiding vertices flagged in `blocked`. Paths are passed as vertex
/// and edge sequences.
pub fn for_each_simple_path(
    g: &WeightedGraph,
    s: Vertex,
    t: Option<Vertex>,
    blocked: &[bool],
    visit: impl FnMut(&[Vertex], &[EdgeId]),
) {
    if blocked.get(s).copied().unwrap_or(false) {
        return;
    }
    let mut visited = blocked.to_vec();
    visited.resize(g.n(), false);
    visited[s] = true;
    let mut walker = PathWalker {
        g,
        target: t,
        visited,
        stack: vec![s],
        edges: Vec::new(),
        visit,
    };
    walker.extend(s);
}

fn sum(g: &WeightedGraph, edges: &[EdgeId]) -> Weight {
    edges.iter().map(|&e| g.weight(e)).sum()
}

fn keep_best(best: &mut Option<WeightedPath>, vertices: &[Vertex], weight: Weight) {
    let better = best.as_ref().map_or(true, |b| {
        compare_candidates((&weight, vertices), (&b.weight, &b.vertices)).is_lt()
    });
    if better {
        *best = Some(WeightedPath {
            vertices: vertices.to_vec(),
            weight,
        });
    }
}

/// Shortest odd `(s, t)`-path by enumeration. Needs no conservativeness.
pub fn oracle_odd_path(g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<PathSolution> {
    oracle_odd_path_limited(g, s, t, DEFAULT_ORACLE_LIMIT)
}

pub fn oracle_odd_path_limited(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    limit: usize,
) -> Result<PathSolution> {
    guard(g, limit)?;
    g.check_terminals(s, t)?;
    let mut best = None;
    for_each_simple_path(g, s, Some(t), &[], |vertices, edges| {
        if edges.len() % 2 == 1 {
            keep_best(&mut best, vertices, sum(g, edges));
        }
    });
    Ok(best.into())
}

/// Shortest `(s, t)`-path of any parity.
pub fn oracle_shortest_path(g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<PathSolution> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    g.check_terminals(s, t)?;
    let mut best = None;
    for_each_simple_path(g, s, Some(t), &[], |vertices, edges| {
        keep_best(&mut best, vertices, sum(g, edges));
    });
    Ok(best.into())
}

fn respects(constraints: &ParityConstraints, edges: &[EdgeId]) -> bool {
    edges.iter().enumerate().all(|(i, e)| {
        // Positions count from 1.
        let position = i + 1;
        if position % 2 == 0 {
            !constraints.odd.contains(e)
        } else {
            !constraints.even.contains(e)
        }
    })
}

/// Every odd `(s, t)`-path respecting the parity constraints.
pub fn oracle_constrained_paths(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    constraints: &ParityConstraints,
) -> Result<Vec<Vec<Vertex>>> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    g.check_terminals(s, t)?;
    let mut paths = Vec::new();
    for_each_simple_path(g, s, Some(t), &[], |vertices, edges| {
        if edges.len() % 2 == 1 && respects(constraints, edges) {
            paths.push(vertices.to_vec());
        }
    });
    paths.sort();
    Ok(paths)
}

/// Shortest odd `(s, t)`-path respecting the parity constraints.
pub fn oracle_spcop(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    constraints: &ParityConstraints,
) -> Result<PathSolution> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    g.check_terminals(s, t)?;
    let mut best = None;
    for_each_simple_path(g, s, Some(t), &[], |vertices, edges| {
        if edges.len() % 2 == 1 && respects(constraints, edges) {
            keep_best(&mut best, vertices, sum(g, edges));
        }
    });
    Ok(best.into())
}

/// Minimum-weight vertex-disjoint paths from `{s, t}` to `{a, b}` by enumerating pairs.
pub fn oracle_two_disjoint(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    a: Vertex,
    b: Vertex,
) -> Result<Option<DisjointPaths>> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    g.check_terminals(s, t)?;
    g.check_terminals(a, b)?;
    let mut best: Option<DisjointPaths> = None;
    let mut blocked = vec![false; g.n()];
    blocked[t] = true;
    for_each_simple_path(g, s, None, &blocked, |path_s, edges_s| {
        let end = *path_s.last().expect("non-empty");
        let other = if end == a {
            b
        } else if end == b {
            a
        } else {
            return;
        };
        let mut used = vec![false; g.n()];
        for &v in path_s {
            used[v] = true;
        }
        let weight_s = sum(g, edges_s);
        for_each_simple_path(g, t, Some(other), &used, |path_t, edges_t| {
            let total = weight_s + sum(g, edges_t);
            if best.as_ref().map_or(true, |b| total < b.total_weight) {
                best = Some(DisjointPaths {
                    path_s: path_s.to_vec(),
                    path_t: path_t.to_vec(),
                    total_weight: total,
                });
            }
        });
    });
    Ok(best)
}

/// Minimum-weight pair of openly disjoint `(s, t)`-paths by enumeration.
pub fn oracle_openly_disjoint(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
) -> Result<Option<OpenlyDisjointPaths>> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    g.check_terminals(s, t)?;
    let mut paths: Vec<(Vec<Vertex>, Weight)> = Vec::new();
    for_each_simple_path(g, s, Some(t), &[], |vertices, edges| {
        paths.push((vertices.to_vec(), sum(g, edges)));
    });
    let mut best: Option<OpenlyDisjointPaths> = None;
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let (p, wp) = &paths[i];
            let (q, wq) = &paths[j];
            let interior_disjoint = p[1..p.len() - 1]
                .iter()
                .all(|v| !q[1..q.len() - 1].contains(v));
            let same_direct_edge = p.len() == 2 && q.len() == 2;
            if !interior_disjoint || same_direct_edge {
                continue;
            }
            let total = *wp + *wq;
            if best.as_ref().map_or(true, |b| total < b.total_weight) {
                best = Some(OpenlyDisjointPaths {
                    first: p.clone(),
                    second: q.clone(),
                    total_weight: total,
                });
            }
        }
    }
    Ok(best)
}

/// Calls `visit` with every simple cycle (length at least 3) once per
/// direction, as a vertex sequence starting at its smallest vertex.
pub fn for_each_simple_cycle(g: &WeightedGraph, mut visit: impl FnMut(&[Vertex], &[EdgeId])) {
    for root in 0..g.n() {
        let blocked: Vec<bool> = (0..g.n()).map(|v| v < root).collect();
        for_each_simple_path(g, root, None, &blocked, |vertices, edges| {
            if vertices.len() < 3 {
                return;
            }
            let last = *vertices.last().expect("non-empty");
            if let Some(closing) = g.edge_between(last, root) {
                let mut cycle_edges = edges.to_vec();
                cycle_edges.push(closing);
                visit(vertices, &cycle_edges);
            }
        });
    }
}

/// True when no simple cycle has negative weight.
pub fn oracle_is_conservative(g: &WeightedGraph) -> Result<bool> {
    guard(g, DEFAULT_ORACLE_LIMIT)?;
    let mut conservative = true;
    for_each_simple_cycle(g, |_, edges| {
        if sum(g, edges).is_negative() {
            conservative = false;
        }
    });
    Ok(conservative)
}
