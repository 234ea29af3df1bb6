//! Shortest odd paths under parity constraints on individual edges.
//!
//! An edge constrained `Even` may only appear at an even position of the path
//! (counting the first edge as position 1), an `Odd` edge only at an odd
//! position. The problem reduces to a minimum-weight perfect matching on
//! `H = (G - even edges) + (copy of G - odd edges - s' - t')` plus a zero-weight
//! edge between every vertex and its copy.

use alloc::vec;
use alloc::vec::Vec;

use crate::conservative::require_conservative;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PathSolution, Vertex, WeightedGraph, WeightedPath};
use crate::matching::min_weight_perfect_matching;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeParity {
    #[default]
    Free,
    Even,
    Odd,
}

/// Disjoint sets of edges restricted to even and to odd positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParityConstraints {
    pub even: Vec<EdgeId>,
    pub odd: Vec<EdgeId>,
}

impl ParityConstraints {
    pub fn new(even: Vec<EdgeId>, odd: Vec<EdgeId>) -> Self {
        ParityConstraints { even, odd }
    }

    /// Per-edge view, rejecting out-of-range ids and overlapping sets.
    pub fn per_edge(&self, g: &WeightedGraph) -> Result<Vec<EdgeParity>> {
        let mut parity = vec![EdgeParity::Free; g.m()];
        for &e in &self.even {
            g.check_edge(e)?;
            parity[e] = EdgeParity::Even;
        }
        for &e in &self.odd {
            g.check_edge(e)?;
            if parity[e] == EdgeParity::Even {
                return Err(Error::ConstraintsOverlap(e));
            }
            parity[e] = EdgeParity::Odd;
        }
        Ok(parity)
    }

    /// True if `vertices` places every constrained edge at an allowed position.
    pub fn admits(&self, g: &WeightedGraph, vertices: &[Vertex]) -> bool {
        let Some(edges) = g.path_edges(vertices) else {
            return false;
        };
        edges.iter().enumerate().all(|(i, e)| {
            let position_is_odd = i % 2 == 0;
            !(self.even.contains(e) && position_is_odd || self.odd.contains(e) && !position_is_odd)
        })
    }
}

/// Solution with the auxiliary matching weight, which equals the path weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpcopReport {
    pub solution: PathSolution,
    pub matching_weight: Option<Weight>,
    pub auxiliary_vertices: usize,
    pub auxiliary_edges: usize,
}

/// Shortest odd `(s, t)`-path respecting `constraints`.
///
/// Requires conservative weights with every negative edge constrained.
pub fn solve_spcop(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    constraints: &ParityConstraints,
) -> Result<PathSolution> {
    solve_spcop_report(g, s, t, constraints).map(|r| r.solution)
}

pub fn solve_spcop_report(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    constraints: &ParityConstraints,
) -> Result<SpcopReport> {
    g.check_terminals(s, t)?;
    let parity = constraints.per_edge(g)?;
    if let Some(e) =
        (0..g.m()).find(|&e| g.weight(e).is_negative() && parity[e] == EdgeParity::Free)
    {
        return Err(Error::UncoveredNegativeEdge(e));
    }
    require_conservative(g)?;
    Ok(spcop_unchecked(g, None, s, t, &parity))
}

/// Shortest odd path when all weights are non-negative.
pub fn shortest_odd_path_nonneg(g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<PathSolution> {
    g.check_terminals(s, t)?;
    g.require_nonnegative()?;
    Ok(spcop_unchecked(g, None, s, t, &vec![EdgeParity::Free; g.m()]).solution)
}

/// Shortest even path when all weights are non-negative: an odd path to a
/// pendant copy of `t`, with the pendant edge removed.
pub fn shortest_even_path_nonneg(g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<PathSolution> {
    g.check_terminals(s, t)?;
    g.require_nonnegative()?;
    let mut extended = g.clone();
    let pendant = extended.add_vertex();
    extended
        .add_edge(t, pendant, Weight::ZERO)
        .expect("fresh pendant edge");
    let parity = vec![EdgeParity::Free; extended.m()];
    let solution = spcop_unchecked(&extended, None, s, pendant, &parity).solution;
    Ok(match solution {
        PathSolution::Found(mut p) => {
            let last = p.vertices.pop();
            debug_assert_eq!(last, Some(pendant));
            debug_assert_eq!(p.vertices.last(), Some(&t));
            PathSolution::Found(p)
        }
        PathSolution::Infeasible => PathSolution::Infeasible,
    })
}

enum Origin {
    Original(EdgeId),
    Copy(EdgeId),
    Link,
}

/// Core reduction without input validation.
///
/// `active` restricts the usable edges of `g`. Copies of the vertices other
/// than `s` and `t` are numbered `n, n + 1, ...` in increasing vertex order.
pub(crate) fn spcop_unchecked(
    g: &WeightedGraph,
    active: Option<&[bool]>,
    s: Vertex,
    t: Vertex,
    parity: &[EdgeParity],
) -> SpcopReport {
    let n = g.n();
    let is_active = |e: EdgeId| active.map_or(true, |a| a[e]);
    let mut copy = vec![usize::MAX; n];
    let mut next = n;
    for (v, slot) in copy.iter_mut().enumerate() {
        if v != s && v != t {
            *slot = next;
            next += 1;
        }
    }
    let mut h = WeightedGraph::new(next);
    let mut origin = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if is_active(e) && parity[e] != EdgeParity::Even {
            h.add_edge(edge.u, edge.v, edge.weight)
                .expect("original edge");
            origin.push(Origin::Original(e));
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let touches_terminal = edge.has(s) || edge.has(t);
        if is_active(e) && parity[e] != EdgeParity::Odd && !touches_terminal {
            h.add_edge(copy[edge.u], copy[edge.v], edge.weight)
                .expect("copied edge");
            origin.push(Origin::Copy(e));
        }
    }
    for v in 0..n {
        if v != s && v != t {
            h.add_edge(v, copy[v], Weight::ZERO).expect("link edge");
            origin.push(Origin::Link);
        }
    }
    let auxiliary_vertices = h.n();
    let auxiliary_edges = h.m();
    let Some(matching) = min_weight_perfect_matching(&h) else {
        return SpcopReport {
            solution: PathSolution::Infeasible,
            matching_weight: None,
            auxiliary_vertices,
            auxiliary_edges,
        };
    };
    let mut in_first = vec![false; g.m()];
    let mut in_second = vec![false; g.m()];
    for &he in &matching.edges {
        match origin[he] {
            Origin::Original(e) => in_first[e] = true,
            Origin::Copy(e) => in_second[e] = true,
            Origin::Link => {}
        }
    }
    // Per vertex: partner along a first-side edge and along a second-side edge.
    let mut first: Vec<Option<Vertex>> = vec![None; n];
    let mut second: Vec<Option<Vertex>> = vec![None; n];
    for (e, edge) in g.edges().iter().enumerate() {
        if in_first[e] && in_second[e] {
            continue;
        }
        let side = if in_first[e] {
            &mut first
        } else if in_second[e] {
            &mut second
        } else {
            continue;
        };
        side[edge.u] = Some(edge.v);
        side[edge.v] = Some(edge.u);
    }
    let mut vertices = vec![s];
    let mut current = s;
    let mut use_first = true;
    while current != t {
        let next = if use_first {
            first[current]
        } else {
            second[current]
        };
        current = next.expect("alternating walk continues until t");
        vertices.push(current);
        use_first = !use_first;
        assert!(vertices.len() <= n, "alternating walk revisited a vertex");
    }
    let path = WeightedPath::from_vertices(g, vertices).expect("walk follows edges");
    debug_assert_eq!(
        path.weight, matching.weight,
        "path weight must equal matching weight"
    );
    SpcopReport {
        solution: PathSolution::Found(path),
        matching_weight: Some(matching.weight),
        auxiliary_vertices,
        auxiliary_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_and_even_paths_on_a_cycle() {
        // On a 6-cycle both arcs between 0 and 2 are even.
        let g = WeightedGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6, 1))).unwrap();
        assert_eq!(
            shortest_odd_path_nonneg(&g, 0, 2).unwrap(),
            PathSolution::Infeasible
        );
        let even = shortest_even_path_nonneg(&g, 0, 2).unwrap();
        assert_eq!(even.path().unwrap().vertices, [0, 1, 2]);
        let odd = shortest_odd_path_nonneg(&g, 0, 3).unwrap();
        assert_eq!(odd.weight(), Some(Weight::from_integer(3)));
    }

    #[test]
    fn constraints_steer_the_path() {
        // Square 0-1-2-3-0 plus chord 0-2; odd paths 0..3: [0,3] and [0,1,2,3].
        let g =
            WeightedGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 5), (0, 2, 1)])
                .unwrap();
        let free = solve_spcop(&g, 0, 3, &ParityConstraints::default()).unwrap();
        assert_eq!(free.path().unwrap().vertices, [0, 1, 2, 3]);
        let forced = solve_spcop(&g, 0, 3, &ParityConstraints::new(vec![], vec![1])).unwrap();
        assert_eq!(forced.path().unwrap().vertices, [0, 3]);
    }

    #[test]
    fn rejects_uncovered_negative_edge_and_overlap() {
        let g = WeightedGraph::from_edges(3, [(0, 1, -1), (1, 2, 2)]).unwrap();
        assert_eq!(
            solve_spcop(&g, 0, 2, &ParityConstraints::default()),
            Err(Error::UncoveredNegativeEdge(0))
        );
        assert_eq!(
            solve_spcop(&g, 0, 2, &ParityConstraints::new(vec![0], vec![0])),
            Err(Error::ConstraintsOverlap(0))
        );
        assert_eq!(
            solve_spcop(&g, 0, 0, &ParityConstraints::new(vec![0], vec![])),
            Err(Error::SameTerminals(0))
        );
    }

    #[test]
    fn negative_edge_at_odd_position() {
        let g =
            WeightedGraph::from_edges(4, [(0, 1, -1), (1, 2, 2), (2, 3, -1), (0, 3, 1)]).unwrap();
        let c = ParityConstraints::new(vec![], vec![0, 2]);
        let r = solve_spcop_report(&g, 0, 3, &c).unwrap();
        assert_eq!(r.solution.path().unwrap().vertices, [0, 1, 2, 3]);
        assert_eq!(r.matching_weight, Some(Weight::ZERO));
        let c = ParityConstraints::new(vec![0], vec![2]);
        let r = solve_spcop(&g, 0, 3, &c).unwrap();
        assert_eq!(r.path().unwrap().vertices, [0, 3]);
    }
}
