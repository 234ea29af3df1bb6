//! Seeded random instance generators.
//!
//! Conservative instances are built by sampling non-negative weights, then
//! turning a random subset of a random spanning forest negative and checking
//! conservativeness; failed draws are retried with fresh negative weights.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::conservative::{check_conservative, Conservativeness};
use crate::graph::{Vertex, WeightedGraph};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphShape {
    pub n: usize,
    pub edge_probability: f64,
    /// Non-negative weights are drawn from `0..=max_weight`.
    pub max_weight: i64,
    /// Negative weights are drawn from `-max_negative..=-1`.
    pub max_negative: i64,
}

impl GraphShape {
    pub fn new(n: usize, edge_probability: f64) -> Self {
        GraphShape {
            n,
            edge_probability,
            max_weight: 4,
            max_negative: 3,
        }
    }
}

/// `G(n, p)` with non-negative integer weights.
pub fn random_nonnegative<R: Rng + ?Sized>(rng: &mut R, shape: &GraphShape) -> WeightedGraph {
    let mut g = WeightedGraph::new(shape.n);
    for u in 0..shape.n {
        for v in u + 1..shape.n {
            if rng.gen_bool(shape.edge_probability) {
                let w = rng.gen_range(0..=shape.max_weight);
                g.add_edge(u, v, Weight::from_integer(w))
                    .expect("fresh pair");
            }
        }
    }
    g
}

fn spanning_forest<R: Rng + ?Sized>(rng: &mut R, g: &WeightedGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut forest = Vec::new();
    for e in order {
        let (a, b) = (
            find(&mut parent, g.edge(e).u),
            find(&mut parent, g.edge(e).v),
        );
        if a != b {
            parent[a] = b;
            forest.push(e);
        }
    }
    forest
}

fn negate_and_check<R: Rng + ?Sized>(
    rng: &mut R,
    g: &WeightedGraph,
    chosen: &[usize],
    shape: &GraphShape,
    attempts: usize,
) -> Option<WeightedGraph> {
    let mut is_chosen = vec![false; g.m()];
    for &e in chosen {
        is_chosen[e] = true;
    }
    for _ in 0..attempts {
        let candidate = g.map_weights(|e, edge| {
            if is_chosen[e] {
                Weight::from_integer(-rng.gen_range(1..=shape.max_negative.max(1)))
            } else {
                edge.weight
            }
        });
        if check_conservative(&candidate) == Conservativeness::Conservative {
            return Some(candidate);
        }
    }
    None
}

/// Conservative instance whose negative edges are a random subset of a
/// random spanning forest. Returns `None` if no conservative reweighting
/// was found within `attempts` tries.
pub fn random_conservative<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &GraphShape,
    negative_probability: f64,
    attempts: usize,
) -> Option<WeightedGraph> {
    let g = random_nonnegative(rng, shape);
    let forest = spanning_forest(rng, &g);
    let chosen: Vec<usize> = forest
        .into_iter()
        .filter(|_| rng.gen_bool(negative_probability))
        .collect();
    negate_and_check(rng, &g, &chosen, shape, attempts)
}

/// Conservative instance whose negative edges form one tree with at most
/// `tree_edges` edges, grown from a random vertex inside a random spanning
/// forest.
pub fn random_single_tree<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &GraphShape,
    tree_edges: usize,
    attempts: usize,
) -> Option<WeightedGraph> {
    let g = random_nonnegative(rng, shape);
    if g.n() == 0 {
        return Some(g);
    }
    let forest = spanning_forest(rng, &g);
    let mut in_forest = vec![false; g.m()];
    for &e in &forest {
        in_forest[e] = true;
    }
    let mut reached = vec![false; g.n()];
    let start: Vertex = rng.gen_range(0..g.n());
    reached[start] = true;
    let mut chosen = Vec::new();
    while chosen.len() < tree_edges {
        let frontier: Vec<usize> = (0..g.m())
            .filter(|&e| in_forest[e] && reached[g.edge(e).u] != reached[g.edge(e).v])
            .collect();
        let Some(&e) = frontier.choose(rng) else {
            break;
        };
        reached[g.edge(e).u] = true;
        reached[g.edge(e).v] = true;
        chosen.push(e);
    }
    negate_and_check(rng, &g, &chosen, shape, attempts)
}

/// A single-tree instance with `n` vertices, kept sparse so that its
/// treewidth stays small: a random tree plus `extra_edges` chords.
pub fn random_sparse_single_tree<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    extra_edges: usize,
    tree_edges: usize,
    max_weight: i64,
) -> WeightedGraph {
    loop {
        let mut g = WeightedGraph::new(n);
        for v in 1..n {
            let u = rng.gen_range(0..v);
            g.add_edge(u, v, Weight::from_integer(rng.gen_range(0..=max_weight)))
                .expect("tree edge");
        }
        let mut added = 0;
        while added < extra_edges && n > 2 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.edge_between(u, v).is_none() {
                g.add_edge(u, v, Weight::from_integer(rng.gen_range(0..=max_weight)))
                    .expect("chord");
                added += 1;
            }
        }
        let shape = GraphShape {
            n,
            edge_probability: 0.0,
            max_weight,
            max_negative: 1,
        };
        let mut reached = vec![false; n];
        let start = rng.gen_range(0..n.max(1));
        if n == 0 {
            return g;
        }
        reached[start] = true;
        let mut chosen = Vec::new();
        // Tree edges are 0..n-1; grow a connected subset of them.
        while chosen.len() < tree_edges {
            let frontier: Vec<usize> = (0..n - 1)
                .filter(|&e| reached[g.edge(e).u] != reached[g.edge(e).v])
                .collect();
            let Some(&e) = frontier.choose(rng) else {
                break;
            };
            reached[g.edge(e).u] = true;
            reached[g.edge(e).v] = true;
            chosen.push(e);
        }
        if let Some(h) = negate_and_check(rng, &g, &chosen, &shape, 4) {
            return h;
        }
    }
}

/// A `rows x cols` grid (treewidth `min(rows, cols)`) with random
/// non-negative weights and a conservative random negative forest.
pub fn random_grid<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    max_weight: i64,
    negative_probability: f64,
) -> WeightedGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut g = WeightedGraph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                let w = Weight::from_integer(rng.gen_range(0..=max_weight));
                g.add_edge(id(r, c), id(r, c + 1), w).expect("grid edge");
            }
            if r + 1 < rows {
                let w = Weight::from_integer(rng.gen_range(0..=max_weight));
                g.add_edge(id(r, c), id(r + 1, c), w).expect("grid edge");
            }
        }
    }
    let shape = GraphShape {
        n: g.n(),
        edge_probability: 0.0,
        max_weight,
        max_negative: 1,
    };
    loop {
        let forest = spanning_forest(rng, &g);
        let chosen: Vec<usize> = forest
            .into_iter()
            .filter(|_| rng.gen_bool(negative_probability))
            .collect();
        if let Some(h) = negate_and_check(rng, &g, &chosen, &shape, 4) {
            return h;
        }
    }
}

/// Largest order for which [`nonisomorphic_graphs`] is offered.
pub const NONISOMORPHIC_LIMIT: usize = 6;

/// One representative edge list per isomorphism class of simple graphs on
/// `n` vertices: the labelling whose edge bitmask is smallest.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    assert!(
        n <= NONISOMORPHIC_LIMIT,
        "isomorphism classes are enumerated only up to {NONISOMORPHIC_LIMIT} vertices"
    );
    let slots: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut slot_of = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in slots.iter().enumerate() {
        slot_of[u][v] = i;
        slot_of[v][u] = i;
    }
    let mut permutations: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut permutations);
    let mut classes = Vec::new();
    for mask in 0u32..1 << slots.len() {
        let canonical = permutations.iter().all(|p| {
            let mut image = 0u32;
            for (i, &(u, v)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << slot_of[p[u]][p[v]];
                }
            }
            image >= mask
        });
        if canonical {
            classes.push(
                (0..slots.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| slots[i])
                    .collect(),
            );
        }
    }
    classes
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}
