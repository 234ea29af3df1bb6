//! Simple undirected graphs with exact weights, and weighted paths.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::weight::{compare_candidates, Weight};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: Weight,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn has(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

/// A simple undirected graph on vertices `0..n` with stable edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Vertex, EdgeId)>>,
    index: BTreeMap<(Vertex, Vertex), EdgeId>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: BTreeMap::new(),
        }
    }

    pub fn from_edges<W: Into<Weight>>(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, W)>,
    ) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w.into())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adjacency.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, weight: Weight) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.index.contains_key(&key(u, v)) {
            return Err(Error::ParallelEdge(u, v));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        self.index.insert(key(u, v), id);
        Ok(id)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                edge: e,
                m: self.edges.len(),
            })
        }
    }

    pub fn check_terminals(&self, s: Vertex, t: Vertex) -> Result<()> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if s == t {
            return Err(Error::SameTerminals(s));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, e: EdgeId) -> Weight {
        self.edges[e].weight
    }

    /// Neighbours of `v` with the connecting edge, in insertion order.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&key(u, v)).copied()
    }

    pub fn negative_edges(&self) -> Vec<EdgeId> {
        (0..self.m())
            .filter(|&e| self.edges[e].weight.is_negative())
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.edges.iter().all(|e| !e.weight.is_negative())
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.weight.is_negative()) {
            Some(e) => Err(Error::NegativeWeight(e)),
            None => Ok(()),
        }
    }

    /// Same vertex set, keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, &Edge) -> bool) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n);
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id, e) {
                g.add_edge(e.u, e.v, e.weight)
                    .expect("subgraph of a simple graph");
            }
        }
        g
    }

    /// Same edges with weights replaced by `f`.
    pub fn map_weights(&self, mut f: impl FnMut(EdgeId, &Edge) -> Weight) -> WeightedGraph {
        let mut g = self.clone();
        for (id, e) in g.edges.iter_mut().enumerate() {
            e.weight = f(id, &self.edges[id]);
        }
        g
    }

    /// Edge ids along a vertex sequence, or `None` if some step is not an edge.
    pub fn path_edges(&self, vertices: &[Vertex]) -> Option<Vec<EdgeId>> {
        vertices
            .windows(2)
            .map(|w| self.edge_between(w[0], w[1]))
            .collect()
    }

    pub fn path_weight(&self, vertices: &[Vertex]) -> Option<Weight> {
        self.path_edges(vertices)
            .map(|edges| edges.iter().map(|&e| self.weight(e)).sum())
    }

    /// True if `vertices` is a simple path (no repeated vertex) along edges of the graph.
    pub fn is_simple_path(&self, vertices: &[Vertex]) -> bool {
        if vertices.is_empty() || vertices.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.path_edges(vertices).is_some()
    }

    /// Checks that `vertices` is a simple `(s, t)`-path with an odd edge count.
    pub fn is_odd_path(&self, vertices: &[Vertex], s: Vertex, t: Vertex) -> bool {
        self.is_simple_path(vertices)
            && vertices.first() == Some(&s)
            && vertices.last() == Some(&t)
            && vertices.len() % 2 == 0
    }

    /// Connected components as a label per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> WeightedGraph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let mut g = WeightedGraph::new(vertices.len());
        for e in &self.edges {
            if position[e.u] != usize::MAX && position[e.v] != usize::MAX {
                g.add_edge(position[e.u], position[e.v], e.weight)
                    .expect("induced subgraph of a simple graph");
            }
        }
        g
    }
}

/// A simple path given by its vertex sequence together with its exact weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPath {
    pub vertices: Vec<Vertex>,
    pub weight: Weight,
}

impl WeightedPath {
    pub fn from_vertices(g: &WeightedGraph, vertices: Vec<Vertex>) -> Option<Self> {
        let weight = g.path_weight(&vertices)?;
        Some(WeightedPath { vertices, weight })
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Ordering used to pick among equal-weight optima.
    pub fn better_than(&self, other: &WeightedPath) -> bool {
        compare_candidates(
            (&self.weight, &self.vertices),
            (&other.weight, &other.vertices),
        )
        .is_lt()
    }
}

/// Outcome of a path query: an optimal path, or proof-by-exhaustion that none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathSolution {
    Found(WeightedPath),
    Infeasible,
}

pub type OddPathSolution = PathSolution;

impl PathSolution {
    pub fn path(&self) -> Option<&WeightedPath> {
        match self {
            PathSolution::Found(p) => Some(p),
            PathSolution::Infeasible => None,
        }
    }

    pub fn weight(&self) -> Option<Weight> {
        self.path().map(|p| p.weight)
    }

    pub fn is_found(&self) -> bool {
        matches!(self, PathSolution::Found(_))
    }

    /// Keeps the better of two solutions under the canonical tie-break.
    pub fn keep_better(&mut self, candidate: PathSolution) {
        if let PathSolution::Found(c) = candidate {
            let replace = match self {
                PathSolution::Found(current) => c.better_than(current),
                PathSolution::Infeasible => true,
            };
            if replace {
                *self = PathSolution::Found(c);
            }
        }
    }

    pub fn best_of(solutions: impl IntoIterator<Item = PathSolution>) -> PathSolution {
        let mut best = PathSolution::Infeasible;
        for s in solutions {
            best.keep_better(s);
        }
        best
    }
}

impl From<Option<WeightedPath>> for PathSolution {
    fn from(p: Option<WeightedPath>) -> Self {
        match p {
            Some(p) => PathSolution::Found(p),
            None => PathSolution::Infeasible,
        }
    }
}
