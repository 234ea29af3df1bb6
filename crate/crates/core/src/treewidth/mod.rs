//! Shortest odd path by dynamic programming over a tree decomposition.
//!
//! The program computes, for every node and state, the minimum weight of an
//! edge set `F` of the subgraph below the node such that `F` is acyclic,
//! forgotten vertices have degree 0 or 2 in `F`, bag vertices have the
//! degrees the state prescribes, paired bag vertices are the two ends of one
//! path of `F`, and `|F|` has the prescribed parity. At the root bag
//! `{s, t}` the state with `s` and `t` paired, both of degree one and odd
//! parity describes exactly the odd `(s, t)`-paths. In logical terms, the
//! program evaluates the property "`P` is an edge set forming a path with
//! ends `s` and `t` and an odd number of edges".
//!
//! Weights may have any sign; conservativeness is not needed.

mod decomposition;
mod dp;
mod nice;
mod rank;
mod state;

pub use decomposition::{
    build_decomposition, decomposition_from_ordering, exact_ordering, min_fill_ordering,
    ordering_width, TreeDecomposition, EXACT_WIDTH_LIMIT,
};
pub use dp::{run_dp, DpTables, MAX_BAG};
pub use nice::{make_nice, NiceDecomposition, NiceKind, NiceNode};
pub use rank::{independent_pairings, MAX_REDUCED_UNIVERSE};
pub use state::PartialState;

use crate::error::{Error, Result};
use crate::graph::{PathSolution, Vertex, WeightedGraph, WeightedPath};

pub const DEFAULT_WIDTH_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreewidthOptions {
    pub width_guard: usize,
    /// Use the exact-width search instead of min-fill.
    pub exact_width: bool,
    pub rank_reduce: bool,
}

impl Default for TreewidthOptions {
    fn default() -> Self {
        TreewidthOptions {
            width_guard: DEFAULT_WIDTH_GUARD,
            exact_width: false,
            rank_reduce: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreewidthOutcome {
    pub solution: PathSolution,
    pub width: usize,
    pub nice_nodes: usize,
    pub table_entries: usize,
}

pub fn solve_treewidth(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    options: &TreewidthOptions,
) -> Result<TreewidthOutcome> {
    g.check_terminals(s, t)?;
    let td = build_decomposition(g, options.exact_width)?;
    let width = td.width();
    if width > options.width_guard {
        return Err(Error::ParameterTooLarge {
            parameter: "decomposition width",
            value: width,
            limit: options.width_guard,
        });
    }
    let nice = make_nice(&td, g, s, t)?;
    let tables = run_dp(g, &nice, options.rank_reduce)?;
    let solution = match tables.optimum(s) {
        Some((vertices, weight)) => {
            let path =
                WeightedPath::from_vertices(g, vertices).expect("witness is a path of the graph");
            debug_assert_eq!(path.weight, weight);
            debug_assert!(g.is_odd_path(&path.vertices, s, t));
            PathSolution::Found(path)
        }
        None => PathSolution::Infeasible,
    };
    Ok(TreewidthOutcome {
        solution,
        width,
        nice_nodes: nice.len(),
        table_entries: tables.total_entries(),
    })
}
