//! Solver guards and budgets.
//!
//! Precedence, highest first: command-line flag, `ODDPATH_*` environment
//! variable, TOML config file, built-in default.

use std::path::Path;

use oddpath_core::fpt::{FptOptions, DEFAULT_MATCHING_BUDGET, DEFAULT_NEGATIVE_EDGE_GUARD};
use oddpath_core::oracle::DEFAULT_ORACLE_LIMIT;
use oddpath_core::tree_solver::{
    DisjointPathsOptions, TreeSolverOptions, DEFAULT_NEGATIVE_EDGE_LIMIT,
};
use oddpath_core::treewidth::{TreewidthOptions, DEFAULT_WIDTH_GUARD};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest |E⁻| for the exhaustive guessing solver.
    pub negative_edge_guard: usize,
    /// Largest twice-maximum-matching of the negative edges for the
    /// universal-set solver.
    pub matching_budget: usize,
    /// Largest decomposition width for the dynamic program.
    pub width_guard: usize,
    /// Largest |E⁻| for the disjoint-paths search inside the tree solver.
    pub disjoint_negative_edge_limit: usize,
    /// Largest vertex count for the enumeration oracle.
    pub oracle_vertex_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            negative_edge_guard: DEFAULT_NEGATIVE_EDGE_GUARD,
            matching_budget: DEFAULT_MATCHING_BUDGET,
            width_guard: DEFAULT_WIDTH_GUARD,
            disjoint_negative_edge_limit: DEFAULT_NEGATIVE_EDGE_LIMIT,
            oracle_vertex_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: Option<&Path>) -> Result<Config, ConfigError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Config::from_toml(&text).map_err(|source| ConfigError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn fpt(&self) -> FptOptions {
        FptOptions {
            negative_edge_guard: self.negative_edge_guard,
            matching_budget: self.matching_budget,
        }
    }

    pub fn tree(&self) -> TreeSolverOptions {
        TreeSolverOptions {
            disjoint: DisjointPathsOptions {
                negative_edge_limit: self.disjoint_negative_edge_limit,
            },
        }
    }

    pub fn treewidth(&self, exact_width: bool, rank_reduce: bool) -> TreewidthOptions {
        TreewidthOptions {
            width_guard: self.width_guard,
            exact_width,
            rank_reduce,
        }
    }
}
