//! Algorithm selection and dispatch.

use std::fmt;
use std::time::Instant;

use oddpath_core::conservative::require_conservative;
use oddpath_core::forest::NegativeForest;
use oddpath_core::fpt::{
    negative_matching_size, solve_fpt_derandomized, solve_fpt_negedges, solve_fpt_randomized,
};
use oddpath_core::oracle::oracle_odd_path_limited;
use oddpath_core::tree_solver::solve_negative_tree_with;
use oddpath_core::treewidth::{build_decomposition, solve_treewidth};
use oddpath_core::{Error, PathSolution, Vertex, WeightedGraph};
use serde::Serialize;

use crate::config::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Auto,
    Tree,
    FptNeg,
    FptRand,
    FptDerand,
    Treewidth,
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Auto => "auto",
            Algorithm::Tree => "tree",
            Algorithm::FptNeg => "fpt-neg",
            Algorithm::FptRand => "fpt-rand",
            Algorithm::FptDerand => "fpt-derand",
            Algorithm::Treewidth => "treewidth",
            Algorithm::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

/// Parameters that drive algorithm selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub trees: usize,
    pub negative_edges: usize,
    pub matching_size: usize,
    /// Width of the min-fill decomposition.
    pub width_estimate: usize,
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "negative trees = {}, negative edges = {}, negative matching size = {}, width estimate = {}",
            self.trees, self.negative_edges, self.matching_size, self.width_estimate
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("{0}")]
    Input(Error),
    #[error("weights are not conservative; negative cycle {cycle:?}")]
    NotConservative { cycle: Vec<Vertex> },
    #[error("{0}")]
    Guard(Error),
    #[error("no tractable algorithm within the configured budgets ({0})")]
    NoTractableAlgorithm(Diagnostics),
}

impl From<Error> for SolveError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConservative { cycle } => SolveError::NotConservative { cycle },
            Error::ParameterTooLarge { .. } => SolveError::Guard(e),
            other => SolveError::Input(other),
        }
    }
}

impl SolveError {
    pub fn exit_code(&self) -> u8 {
        match self {
            SolveError::NotConservative { .. } => 1,
            SolveError::Input(_) => 2,
            SolveError::Guard(_) | SolveError::NoTractableAlgorithm(_) => 3,
        }
    }
}

pub fn diagnostics(g: &WeightedGraph) -> Result<Diagnostics, SolveError> {
    let forest = NegativeForest::new(g)?;
    Ok(Diagnostics {
        trees: forest.len(),
        negative_edges: g.negative_edges().len(),
        matching_size: negative_matching_size(g),
        width_estimate: build_decomposition(g, false)?.width(),
    })
}

/// Picks the first applicable solver: the tree solver for at most one
/// negative tree, then the universal-set solver, then the decomposition
/// dynamic program. Expects conservative weights.
pub fn auto_select(
    g: &WeightedGraph,
    config: &Config,
) -> Result<(Algorithm, Diagnostics), SolveError> {
    let d = diagnostics(g)?;
    let algorithm = if d.trees == 0
        || (d.trees == 1 && d.negative_edges <= config.disjoint_negative_edge_limit)
    {
        Algorithm::Tree
    } else if 2 * d.matching_size <= config.matching_budget {
        Algorithm::FptDerand
    } else if d.width_estimate <= config.width_guard {
        Algorithm::Treewidth
    } else {
        return Err(SolveError::NoTractableAlgorithm(d));
    };
    Ok((algorithm, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveRequest {
    pub s: Vertex,
    pub t: Vertex,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub trials: Option<usize>,
    pub exact_width: bool,
    pub rank_reduce: bool,
}

impl SolveRequest {
    pub fn new(s: Vertex, t: Vertex, algorithm: Algorithm) -> Self {
        SolveRequest {
            s,
            t,
            algorithm,
            seed: 0,
            trials: None,
            exact_width: false,
            rank_reduce: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Found,
    Infeasible,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Stats {
    pub time_ms: f64,
    /// Constrained subproblems solved by the guessing solvers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guesses: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nice_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_entries: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: Status,
    /// Exact rational, e.g. `"-3/2"`.
    pub weight: Option<String>,
    pub path: Option<Vec<Vertex>>,
    pub algorithm: Algorithm,
    pub stats: Stats,
}

impl SolveReport {
    pub fn new(solution: &PathSolution, algorithm: Algorithm, stats: Stats) -> Self {
        match solution {
            PathSolution::Found(p) => SolveReport {
                status: Status::Found,
                weight: Some(p.weight.to_string()),
                path: Some(p.vertices.clone()),
                algorithm,
                stats,
            },
            PathSolution::Infeasible => SolveReport {
                status: Status::Infeasible,
                weight: None,
                path: None,
                algorithm,
                stats,
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Found => 0,
            Status::Infeasible => 1,
        }
    }
}

pub fn solve(
    g: &WeightedGraph,
    request: &SolveRequest,
    config: &Config,
) -> Result<SolveReport, SolveError> {
    let (s, t) = (request.s, request.t);
    g.check_terminals(s, t)?;
    require_conservative(g)?;
    let algorithm = match request.algorithm {
        Algorithm::Auto => auto_select(g, config)?.0,
        chosen => chosen,
    };
    let start = Instant::now();
    let mut stats = Stats::default();
    let solution = match algorithm {
        Algorithm::Auto => unreachable!("resolved above"),
        Algorithm::Tree => solve_negative_tree_with(g, s, t, config.tree())?,
        Algorithm::FptNeg | Algorithm::FptRand | Algorithm::FptDerand => {
            let options = config.fpt();
            let outcome = match algorithm {
                Algorithm::FptNeg => solve_fpt_negedges(g, s, t, &options)?,
                Algorithm::FptRand => {
                    solve_fpt_randomized(g, s, t, request.seed, request.trials, &options)?
                }
                _ => solve_fpt_derandomized(g, s, t, &options)?,
            };
            stats.guesses = Some(outcome.calls);
            stats.matching_size = Some(outcome.matching_size);
            outcome.solution
        }
        Algorithm::Treewidth => {
            let options = config.treewidth(request.exact_width, request.rank_reduce);
            let outcome = solve_treewidth(g, s, t, &options)?;
            stats.width = Some(outcome.width);
            stats.nice_nodes = Some(outcome.nice_nodes);
            stats.table_entries = Some(outcome.table_entries);
            outcome.solution
        }
        Algorithm::Oracle => oracle_odd_path_limited(g, s, t, config.oracle_vertex_limit)?,
    };
    stats.time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport::new(&solution, algorithm, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use oddpath_core::instances::zigzag_tree;

    /// Two negative stars joined by non-negative edges.
    fn two_trees(arms: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..arms {
            edges.push((0, 2 + i, -1));
            edges.push((1, 2 + arms + i, -1));
        }
        edges.push((0, 1, 5));
        WeightedGraph::from_edges(2 + 2 * arms, edges).unwrap()
    }

    #[test]
    fn nonnegative_routes_to_tree() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(
            auto_select(&g, &Config::default()).unwrap().0,
            Algorithm::Tree
        );
    }

    #[test]
    fn small_forest_routes_to_universal_sets() {
        let g = two_trees(2);
        let (algorithm, d) = auto_select(&g, &Config::default()).unwrap();
        assert_eq!(d.trees, 2);
        assert_eq!(d.negative_edges, 4);
        assert_eq!(algorithm, Algorithm::FptDerand);
    }

    #[test]
    fn large_matching_routes_to_treewidth() {
        // Every other edge of a 40-edge path is negative: twenty one-edge
        // trees forming a matching of size 20.
        let mut edges = Vec::new();
        for i in 0..40 {
            let w = if i % 2 == 0 { -1 } else { 3 };
            edges.push((i, i + 1, w));
        }
        let g = WeightedGraph::from_edges(41, edges).unwrap();
        let (algorithm, d) = auto_select(&g, &Config::default()).unwrap();
        assert_eq!(
            (d.trees, d.negative_edges, d.matching_size, d.width_estimate),
            (20, 20, 20, 1)
        );
        assert_eq!(algorithm, Algorithm::Treewidth);
    }

    #[test]
    fn over_budget_reports_diagnostics() {
        let mut edges = Vec::new();
        for i in 0..40 {
            edges.push((i, i + 1, if i % 2 == 0 { -1 } else { 3 }));
        }
        let g = WeightedGraph::from_edges(41, edges).unwrap();
        let config = Config {
            width_guard: 0,
            ..Config::default()
        };
        let err = auto_select(&g, &config).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(
            err.to_string().contains("negative matching size = 20"),
            "{err}"
        );
    }

    #[test]
    fn zigzag_solves_to_zero_with_every_algorithm() {
        let inst = zigzag_tree();
        for algorithm in [
            Algorithm::Auto,
            Algorithm::Tree,
            Algorithm::FptNeg,
            Algorithm::FptDerand,
            Algorithm::Treewidth,
            Algorithm::Oracle,
        ] {
            let report = solve(
                &inst.graph,
                &SolveRequest::new(inst.s, inst.t, algorithm),
                &Config::default(),
            )
            .unwrap();
            assert_eq!(report.status, Status::Found);
            assert_eq!(report.weight.as_deref(), Some("0"), "{algorithm}");
            assert_eq!(report.path.unwrap().len(), 6, "{algorithm}");
        }
    }

    #[test]
    fn negative_triangle_is_rejected() {
        let g = WeightedGraph::from_edges(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)]).unwrap();
        let err = solve(
            &g,
            &SolveRequest::new(0, 2, Algorithm::Auto),
            &Config::default(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
