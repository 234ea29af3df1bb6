//! Leaps of a path over a negative tree, and the weight redistribution that
//! moves the weight of the tree edges a path skips onto its leaps.
//!
//! A leap over tree `T` is a path that meets `T` only in its two endpoints
//! and uses no edge of `T`. Together with the tree path between its endpoints
//! it closes a cycle; the leap is parity-changing when that cycle is odd.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::forest::NegativeForest;
use crate::graph::{EdgeId, PathSolution, Vertex, WeightedGraph};
use crate::spcop::{shortest_even_path_nonneg, shortest_odd_path_nonneg};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leap {
    pub tree: usize,
    /// Index of the first leap vertex within the enclosing path.
    pub start: usize,
    /// Vertices of the leap, endpoints included.
    pub vertices: Vec<Vertex>,
    /// Edges of the enclosing path that lie on the tree path between the
    /// leap's endpoints, ascending.
    pub shadow: Vec<EdgeId>,
    pub parity_changing: bool,
}

impl Leap {
    pub fn a(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn b(&self) -> Vertex {
        *self.vertices.last().expect("leap has two endpoints")
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }
}

fn require_simple_path(g: &WeightedGraph, q: &[Vertex]) -> Result<()> {
    if g.is_simple_path(q) {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "expected a simple path of the graph".into(),
        ))
    }
}

/// Leaps over `tree` lying on path `q`, with shadows taken against `context`
/// (an edge membership mask), in order along `q`.
fn leaps_on_tree(
    g: &WeightedGraph,
    forest: &NegativeForest,
    tree: usize,
    q: &[Vertex],
    context: &[bool],
) -> Vec<Leap> {
    let positions: Vec<usize> = (0..q.len())
        .filter(|&i| forest.in_tree(tree, q[i]))
        .collect();
    let mut leaps = Vec::new();
    for pair in positions.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let vertices = q[i..=j].to_vec();
        if j == i + 1 {
            let e = g.edge_between(q[i], q[j]).expect("path edge");
            if forest.has_edge(g, tree, e) {
                continue;
            }
        }
        let tree_path = forest
            .tree_path(g, tree, q[i], q[j])
            .expect("both endpoints lie on the tree");
        let mut shadow: Vec<EdgeId> = tree_path.iter().copied().filter(|&e| context[e]).collect();
        shadow.sort_unstable();
        let parity_changing = (vertices.len() - 1 + tree_path.len()) % 2 == 1;
        leaps.push(Leap {
            tree,
            start: i,
            vertices,
            shadow,
            parity_changing,
        });
    }
    leaps
}

/// Every maximal leap on the simple path `q`, over every negative tree,
/// in order of their first vertex along `q`.
pub fn enumerate_leaps(
    g: &WeightedGraph,
    forest: &NegativeForest,
    q: &[Vertex],
) -> Result<Vec<Leap>> {
    require_simple_path(g, q)?;
    let mut context = vec![false; g.m()];
    for e in g.path_edges(q).expect("checked path") {
        context[e] = true;
    }
    let mut leaps: Vec<Leap> = (0..forest.len())
        .flat_map(|tree| leaps_on_tree(g, forest, tree, q, &context))
        .collect();
    leaps.sort_by_key(|l| (l.start, l.tree));
    Ok(leaps)
}

/// Moves the weight of shadow edges onto the leaps that cast them.
///
/// `paths` must be pairwise vertex-disjoint simple paths with both endpoints
/// on `tree`. Leaps are processed path by path, in order along each path;
/// every shadow edge still carrying its original weight is zeroed and its
/// weight spread evenly over the edges of the current leap. The total weight
/// of the paths is preserved, shadow edges end at zero and every leap ends
/// with non-negative weight.
pub fn redistribute_weights(
    g: &WeightedGraph,
    forest: &NegativeForest,
    tree: usize,
    paths: &[Vec<Vertex>],
) -> Result<Vec<Weight>> {
    if tree >= forest.len() {
        return Err(Error::InvalidInput("no such negative tree".into()));
    }
    let mut seen = vec![false; g.n()];
    let mut context = vec![false; g.m()];
    for q in paths {
        require_simple_path(g, q)?;
        for &endpoint in [q[0], q[q.len() - 1]].iter() {
            if !forest.in_tree(tree, endpoint) {
                return Err(Error::NotInTree {
                    vertex: endpoint,
                    tree,
                });
            }
        }
        for &v in q {
            if seen[v] {
                return Err(Error::InvalidInput("paths are not vertex-disjoint".into()));
            }
            seen[v] = true;
        }
        for e in g.path_edges(q).expect("checked path") {
            context[e] = true;
        }
    }
    let original: Vec<Weight> = g.edges().iter().map(|e| e.weight).collect();
    let mut redistributed = original.clone();
    for q in paths {
        for leap in leaps_on_tree(g, forest, tree, q, &context) {
            let leap_edges = g.path_edges(&leap.vertices).expect("leap follows edges");
            for &f in &leap.shadow {
                if redistributed[f] != original[f] {
                    continue;
                }
                redistributed[f] = Weight::ZERO;
                let share = original[f].div_count(leap_edges.len());
                for &e in &leap_edges {
                    redistributed[e] += share;
                }
            }
        }
    }
    Ok(redistributed)
}

/// Minimum-weight parity-changing leap between tree vertices `a` and `b`:
/// a shortest path from `a` to `b` avoiding every other tree vertex and every
/// tree edge, whose length parity differs from that of the tree path.
///
/// All remaining edges are non-negative, so this is a non-negative odd or
/// even path query.
pub fn min_parity_changing_leap(
    g: &WeightedGraph,
    forest: &NegativeForest,
    tree: usize,
    a: Vertex,
    b: Vertex,
) -> Result<Option<Leap>> {
    if a == b {
        return Err(Error::SameTerminals(a));
    }
    let tree_path = forest.tree_path(g, tree, a, b)?;
    let outside = g.filter_edges(|_, e| {
        let blocked = |v: Vertex| forest.in_tree(tree, v) && v != a && v != b;
        !e.weight.is_negative() && !blocked(e.u) && !blocked(e.v)
    });
    let solution = if tree_path.len() % 2 == 1 {
        shortest_even_path_nonneg(&outside, a, b)?
    } else {
        shortest_odd_path_nonneg(&outside, a, b)?
    };
    Ok(match solution {
        PathSolution::Found(p) => Some(Leap {
            tree,
            start: 0,
            vertices: p.vertices,
            shadow: Vec::new(),
            parity_changing: true,
        }),
        PathSolution::Infeasible => None,
    })
}
