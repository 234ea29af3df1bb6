//! Hand-built instances used as regression fixtures.

use alloc::vec::Vec;

use crate::graph::{Vertex, WeightedGraph};
use crate::spcop::ParityConstraints;

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub s: Vertex,
    pub t: Vertex,
}

fn build(n: usize, edges: &[(usize, usize, i64)], s: Vertex, t: Vertex) -> Instance {
    let graph =
        WeightedGraph::from_edges(n, edges.iter().copied()).expect("fixture is a simple graph");
    Instance { graph, s, t }
}

/// Negative tree `v1-v2-v3-v4`, `v3-v5-v6` (vertices 1..=6) with `s = 0`,
/// `v7 = 7`, `t = 8`. The optimum is `s, v7, v2, v3, v4, t` of weight 0.
pub fn zigzag_tree() -> Instance {
    build(
        9,
        &[
            (1, 2, -1),
            (2, 3, -1),
            (3, 4, -1),
            (3, 5, -1),
            (5, 6, -1),
            (1, 7, 2),
            (0, 7, 1),
            (7, 6, 2),
            (6, 8, 3),
            (4, 5, 3),
            (4, 8, 0),
            (2, 7, 1),
        ],
        0,
        8,
    )
}

/// Seven vertices `s = 0, v1..v5 = 1..=5, t = 6` with unit weights, plus
/// constraints under which exactly three odd paths are feasible:
/// `s,v1,v2,v3,v4,t`, `s,v3,v4,t` and `s,v1,v4,t`.
pub fn constrained_example() -> (Instance, ParityConstraints) {
    let inst = build(
        7,
        &[
            (0, 1, 1), // s v1, odd
            (2, 3, 1), // v2 v3, odd
            (4, 6, 1), // v4 t, odd
            (0, 2, 1),
            (0, 3, 1),
            (1, 4, 1),
            (4, 5, 1),
            (1, 2, 1), // v1 v2, even
            (3, 4, 1), // v3 v4, even
        ],
        0,
        6,
    );
    (
        inst,
        ParityConstraints::new(Vec::from([7, 8]), Vec::from([0, 1, 2])),
    )
}

/// Interlaced leaps over a negative path `x, a1 ...`: the sixteen-vertex
/// example whose only odd path must use every leap. Tree edges weigh -1,
/// every other edge weighs the tree distance between its endpoints (or 1),
/// which keeps the weights conservative.
pub fn interlaced_leaps() -> Instance {
    // s v1 x y t a1 v2 a4 b1 a2 b4 v3 a3 a b3 b
    const S: usize = 0;
    const V1: usize = 1;
    const X: usize = 2;
    const Y: usize = 3;
    const T: usize = 4;
    const A1: usize = 5;
    const V2: usize = 6;
    const A4: usize = 7;
    const B1: usize = 8;
    const A2: usize = 9;
    const B4: usize = 10;
    const V3: usize = 11;
    const A3: usize = 12;
    const A: usize = 13;
    const B3: usize = 14;
    const B: usize = 15;
    let mut edges: Vec<(usize, usize, i64)> = Vec::from([(S, V1, 1), (V1, X, 1), (T, Y, 1)]);
    for (u, v) in [
        (A1, X),
        (X, Y),
        (Y, V2),
        (A4, V2),
        (A4, B1),
        (B1, A2),
        (A2, B4),
        (B4, V3),
        (V3, A),
        (A, B3),
        (B3, B),
        (A3, V3),
    ] {
        edges.push((u, v, -1));
    }
    edges.extend([(A, B, 2), (A1, B1, 5), (A2, A, 3), (B3, A3, 3), (B4, A4, 3)]);
    build(16, &edges, S, T)
}

/// Interlaced family with `rungs` forward and `rungs` backward leaps on a
/// negative spine `0 ..= 4r+3`: the path enters at spine vertex 0,
/// alternates tree edges and forward leaps `4i+1 -> 4i+4`, turns around with
/// the parity-changing leap `4r+1 -> 4r+3`, then returns through backward
/// leaps `4i+2 -> 4i-1` and leaves from spine vertex 2. Leaps weigh their tree
/// distance, so the weights stay conservative.
pub fn interlaced_rungs(rungs: usize) -> Instance {
    let spine = 4 * rungs + 4;
    let s = spine;
    let t = spine + 1;
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..spine - 1 {
        edges.push((i, i + 1, -1));
    }
    for i in 0..rungs {
        edges.push((4 * i + 1, 4 * i + 4, 3));
        edges.push((4 * i + 6, 4 * i + 3, 3));
    }
    edges.push((4 * rungs + 1, 4 * rungs + 3, 2));
    edges.push((s, 0, 1));
    edges.push((2, t, 1));
    build(spine + 2, &edges, s, t)
}
