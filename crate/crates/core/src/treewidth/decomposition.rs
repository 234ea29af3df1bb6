//! Tree decompositions from elimination orderings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

/// Exact width search is offered up to this many vertices.
pub const EXACT_WIDTH_LIMIT: usize = 20;

/// Bags indexed by node, with undirected tree edges between nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted vertex lists.
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; `-1` (as 0 here) for an empty graph is not distinguished.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Checks that the tree is a tree, every vertex and edge is covered, and
    /// every vertex's nodes are connected.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let nodes = self.bags.len();
        let invalid = |msg: alloc::string::String| Err(Error::InvalidDecomposition(msg));
        if nodes == 0 {
            return if g.n() == 0 {
                Ok(())
            } else {
                invalid("no bags".into())
            };
        }
        if self.tree_edges.len() + 1 != nodes {
            return invalid(format!(
                "{} tree edges for {} nodes",
                self.tree_edges.len(),
                nodes
            ));
        }
        let mut adjacency = vec![Vec::new(); nodes];
        for &(a, b) in &self.tree_edges {
            if a >= nodes || b >= nodes {
                return invalid(format!("tree edge ({a}, {b}) out of range"));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        if reachable(&adjacency, 0, |_| true)
            .iter()
            .filter(|&&r| r)
            .count()
            != nodes
        {
            return invalid("tree is disconnected".into());
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return invalid(format!("bag {x} holds unknown vertex {v}"));
                }
                holders[v].push(x);
            }
        }
        for (v, nodes_of_v) in holders.iter().enumerate() {
            let Some(&first) = nodes_of_v.first() else {
                return invalid(format!("vertex {v} is in no bag"));
            };
            let mut inside = vec![false; nodes];
            for &x in nodes_of_v {
                inside[x] = true;
            }
            let seen = reachable(&adjacency, first, |x| inside[x]);
            if nodes_of_v.iter().any(|&x| !seen[x]) {
                return invalid(format!("bags holding vertex {v} are not connected"));
            }
        }
        for (e, edge) in g.edges().iter().enumerate() {
            let covered = holders[edge.u]
                .iter()
                .any(|x| self.bags[*x].binary_search(&edge.v).is_ok());
            if !covered {
                return invalid(format!("edge {e} is in no bag"));
            }
        }
        Ok(())
    }
}

fn reachable(adjacency: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adjacency.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adjacency[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn neighbor_sets(g: &WeightedGraph) -> Vec<BTreeSet<Vertex>> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect()
}

/// Elimination ordering chosen greedily by fewest fill edges, ties by
/// degree then vertex id.
pub fn min_fill_ordering(g: &WeightedGraph) -> Vec<Vertex> {
    let mut adjacency = neighbor_sets(g);
    let mut alive = vec![true; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let fill = |v: Vertex| {
            let neighbors: Vec<Vertex> = adjacency[v].iter().copied().collect();
            let mut missing = 0usize;
            for (i, &a) in neighbors.iter().enumerate() {
                for &b in &neighbors[i + 1..] {
                    missing += usize::from(!adjacency[a].contains(&b));
                }
            }
            missing
        };
        let v = (0..g.n())
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(v), adjacency[v].len(), v))
            .expect("a vertex remains");
        eliminate(&mut adjacency, v);
        alive[v] = false;
        order.push(v);
    }
    order
}

fn eliminate(adjacency: &mut [BTreeSet<Vertex>], v: Vertex) {
    let neighbors: Vec<Vertex> = adjacency[v].iter().copied().collect();
    for &a in &neighbors {
        adjacency[a].remove(&v);
        for &b in &neighbors {
            if a != b {
                adjacency[a].insert(b);
            }
        }
    }
    adjacency[v].clear();
}

/// Decomposition whose bags are the eliminated vertices with their
/// neighbourhoods at elimination time. Components end up as subtrees that
/// are chained together.
pub fn decomposition_from_ordering(g: &WeightedGraph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adjacency = neighbor_sets(g);
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = vec![None; n];
    for &v in order {
        let mut bag: Vec<Vertex> = adjacency[v].iter().copied().collect();
        parent_vertex[v] = bag.iter().copied().min_by_key(|&w| position[w]);
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        eliminate(&mut adjacency, v);
    }
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut previous_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        match parent_vertex[v] {
            Some(w) => tree_edges.push((i, position[w])),
            None => {
                if let Some(r) = previous_root {
                    tree_edges.push((r, i));
                }
                previous_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, tree_edges }
}

/// Largest neighbourhood met when eliminating `order`.
pub fn ordering_width(g: &WeightedGraph, order: &[Vertex]) -> usize {
    let mut adjacency = neighbor_sets(g);
    let mut width = 0;
    for &v in order {
        width = width.max(adjacency[v].len());
        eliminate(&mut adjacency, v);
    }
    width
}

/// Minimum-width elimination ordering by depth-first branch and bound over
/// eliminated sets, seeded with the min-fill ordering.
pub fn exact_ordering(g: &WeightedGraph) -> Result<Vec<Vertex>> {
    let n = g.n();
    if n > EXACT_WIDTH_LIMIT {
        return Err(Error::ParameterTooLarge {
            parameter: "vertices for exact width",
            value: n,
            limit: EXACT_WIDTH_LIMIT,
        });
    }
    let heuristic = min_fill_ordering(g);
    let mut search = ExactSearch {
        n,
        best_width: ordering_width(g, &heuristic),
        best_order: heuristic,
        seen: HashMap::new(),
        order: Vec::with_capacity(n),
    };
    let adjacency: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
        .collect();
    search.descend(&adjacency, 0, 0);
    Ok(search.best_order)
}

struct ExactSearch {
    n: usize,
    best_width: usize,
    best_order: Vec<Vertex>,
    /// Smallest width with which each eliminated set has been reached.
    seen: HashMap<u32, usize>,
    order: Vec<Vertex>,
}

impl ExactSearch {
    fn descend(&mut self, adjacency: &[u32], eliminated: u32, width: usize) {
        let remaining = self.n - eliminated.count_ones() as usize;
        // Any completion costs at most `remaining - 1` more, and exactly
        // `width` when that is no larger.
        let completion = width.max(remaining.saturating_sub(1));
        if completion < self.best_width {
            self.best_width = completion;
            self.best_order = self.order.clone();
            self.best_order
                .extend((0..self.n).filter(|&v| eliminated >> v & 1 == 0));
        }
        if completion == width {
            return;
        }
        match self.seen.get(&eliminated) {
            Some(&w) if w <= width => return,
            _ => {
                self.seen.insert(eliminated, width);
            }
        }
        let alive = !eliminated & ((1u64 << self.n) - 1) as u32;
        // Degeneracy-style bound: the minimum degree among live vertices.
        let min_degree = (0..self.n)
            .filter(|&v| alive >> v & 1 == 1)
            .map(|v| (adjacency[v] & alive).count_ones() as usize)
            .min()
            .unwrap_or(0);
        if width.max(min_degree) >= self.best_width {
            return;
        }
        for v in 0..self.n {
            if alive >> v & 1 == 0 {
                continue;
            }
            let neighbors = adjacency[v] & alive;
            let degree = neighbors.count_ones() as usize;
            if width.max(degree) >= self.best_width {
                continue;
            }
            let mut next = adjacency.to_vec();
            for a in 0..self.n {
                if neighbors >> a & 1 == 1 {
                    next[a] |= neighbors & !(1 << a);
                }
            }
            self.order.push(v);
            self.descend(&next, eliminated | 1 << v, width.max(degree));
            self.order.pop();
        }
    }
}

/// Min-fill decomposition, or an exact-width one when `exact` is set.
pub fn build_decomposition(g: &WeightedGraph, exact: bool) -> Result<TreeDecomposition> {
    let order = if exact {
        exact_ordering(g)?
    } else {
        min_fill_ordering(g)
    };
    let td = decomposition_from_ordering(g, &order);
    debug_assert!(td.validate(g).is_ok());
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1))).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((r * cols + c, r * cols + c + 1, 1));
                }
                if r + 1 < rows {
                    edges.push((r * cols + c, (r + 1) * cols + c, 1));
                }
            }
        }
        WeightedGraph::from_edges(rows * cols, edges).unwrap()
    }

    #[test]
    fn paths_cycles_and_grids() {
        let path = WeightedGraph::from_edges(5, (0..4).map(|i| (i, i + 1, 1))).unwrap();
        let td = build_decomposition(&path, false).unwrap();
        td.validate(&path).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(build_decomposition(&cycle(5), true).unwrap().width(), 2);
        let g = grid(3, 3);
        let exact = build_decomposition(&g, true).unwrap();
        exact.validate(&g).unwrap();
        assert_eq!(exact.width(), 3);
    }

    #[test]
    fn disconnected_graphs_give_one_tree() {
        let g = WeightedGraph::from_edges(6, [(0, 1, 1), (2, 3, 1), (4, 5, 1)]).unwrap();
        let td = build_decomposition(&g, false).unwrap();
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn validation_catches_broken_traces() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2], vec![1, 2]],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert!(matches!(
            td.validate(&g),
            Err(Error::InvalidDecomposition(_))
        ));
    }
}
