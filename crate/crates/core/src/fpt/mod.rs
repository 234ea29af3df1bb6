//! Solvers whose running time is exponential only in a parameter of the
//! negative edges.
//!
//! Each one guesses which negative edges sit at even positions of an optimal
//! path and solves the resulting constrained problem. Enumerating every guess
//! is exponential in the number of negative edges. Along any path the edges
//! at even positions form a matching, and so do those at odd positions, so an
//! optimum uses at most `2 mu` negative edges, where `mu` is the maximum
//! matching size among negative edges. A random guess is right on those edges
//! with probability `2^(-2 mu)`, and a universal family over the negative
//! edges contains a right guess for sure.

mod universal;

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use universal::{
    build_universal_set, verify_universal, UniversalSetFamily, UniversalityCheck, MAX_GROUND_SET,
};

use crate::conservative::require_conservative;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PathSolution, Vertex, WeightedGraph};
use crate::matching::maximum_matching_size;
use crate::spcop::{spcop_unchecked, EdgeParity};

pub const DEFAULT_NEGATIVE_EDGE_GUARD: usize = 24;
/// Default cap on `2 mu`.
pub const DEFAULT_MATCHING_BUDGET: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptOptions {
    pub negative_edge_guard: usize,
    pub matching_budget: usize,
}

impl Default for FptOptions {
    fn default() -> Self {
        FptOptions {
            negative_edge_guard: DEFAULT_NEGATIVE_EDGE_GUARD,
            matching_budget: DEFAULT_MATCHING_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptOutcome {
    pub solution: PathSolution,
    /// Constrained queries issued.
    pub calls: usize,
    pub negative_edges: usize,
    pub matching_size: usize,
}

/// Maximum matching size of the subgraph spanned by negative edges.
pub fn negative_matching_size(g: &WeightedGraph) -> usize {
    let edges: Vec<(Vertex, Vertex)> = g
        .negative_edges()
        .into_iter()
        .map(|e| (g.edge(e).u, g.edge(e).v))
        .collect();
    maximum_matching_size(g.n(), &edges)
}

/// True if the edges at even positions of `vertices` form a matching, and
/// likewise those at odd positions.
pub fn alternate_edges_form_matchings(g: &WeightedGraph, vertices: &[Vertex]) -> bool {
    let Some(edges) = g.path_edges(vertices) else {
        return false;
    };
    (0..2).all(|offset| {
        let mut touched = vec![false; g.n()];
        edges.iter().skip(offset).step_by(2).all(|&e| {
            let edge = g.edge(e);
            let fresh = !touched[edge.u] && !touched[edge.v];
            touched[edge.u] = true;
            touched[edge.v] = true;
            fresh
        })
    })
}

struct Guesser<'a> {
    g: &'a WeightedGraph,
    s: Vertex,
    t: Vertex,
    negative: Vec<EdgeId>,
    parity: Vec<EdgeParity>,
    best: PathSolution,
    calls: usize,
}

impl<'a> Guesser<'a> {
    fn new(g: &'a WeightedGraph, s: Vertex, t: Vertex) -> Result<Self> {
        g.check_terminals(s, t)?;
        require_conservative(g)?;
        Ok(Guesser {
            g,
            s,
            t,
            negative: g.negative_edges(),
            parity: vec![EdgeParity::Free; g.m()],
            best: PathSolution::Infeasible,
            calls: 0,
        })
    }

    /// Solves with the negative edges selected by `is_even` at even positions
    /// and the rest at odd positions.
    fn try_guess(&mut self, mut is_even: impl FnMut(usize) -> bool) {
        for (i, &e) in self.negative.iter().enumerate() {
            self.parity[e] = if is_even(i) {
                EdgeParity::Even
            } else {
                EdgeParity::Odd
            };
        }
        let solution = spcop_unchecked(self.g, None, self.s, self.t, &self.parity).solution;
        debug_assert!(solution
            .path()
            .map_or(true, |p| alternate_edges_form_matchings(
                self.g,
                &p.vertices
            )));
        self.best.keep_better(solution);
        self.calls += 1;
    }

    fn finish(self, matching_size: usize) -> FptOutcome {
        FptOutcome {
            solution: self.best,
            calls: self.calls,
            negative_edges: self.negative.len(),
            matching_size,
        }
    }
}

fn guard(parameter: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::ParameterTooLarge {
            parameter,
            value,
            limit,
        });
    }
    Ok(())
}

/// Tries all `2^|E-|` parity guesses.
pub fn solve_fpt_negedges(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    options: &FptOptions,
) -> Result<FptOutcome> {
    let mut guesser = Guesser::new(g, s, t)?;
    let k = guesser.negative.len();
    guard("negative edges", k, options.negative_edge_guard)?;
    for mask in 0u64..1 << k {
        guesser.try_guess(|i| mask >> i & 1 == 1);
    }
    Ok(guesser.finish(negative_matching_size(g)))
}

/// Trial count used when none is given: `2^(2 mu)`.
pub fn default_trials(matching_size: usize) -> usize {
    1usize << (2 * matching_size)
}

/// Monte Carlo solver: each trial draws every negative edge even with
/// probability one half. Trial `i` uses stream `i` of a ChaCha generator
/// seeded with `seed`, so results do not depend on evaluation order. Every
/// returned path is a genuine odd path; it is optimal with probability at
/// least `1 - 1/e` at the default trial count.
pub fn solve_fpt_randomized(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    seed: u64,
    trials: Option<usize>,
    options: &FptOptions,
) -> Result<FptOutcome> {
    let mut guesser = Guesser::new(g, s, t)?;
    let mu = negative_matching_size(g);
    guard(
        "twice the negative matching size",
        2 * mu,
        options.matching_budget,
    )?;
    let trials = trials.unwrap_or_else(|| default_trials(mu));
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        guesser.try_guess(|_| rng.gen_bool(0.5));
    }
    Ok(guesser.finish(mu))
}

/// Deterministic solver over an `(|E-|, 2 mu)`-universal family.
pub fn solve_fpt_derandomized(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    options: &FptOptions,
) -> Result<FptOutcome> {
    let mut guesser = Guesser::new(g, s, t)?;
    let mu = negative_matching_size(g);
    guard(
        "twice the negative matching size",
        2 * mu,
        options.matching_budget,
    )?;
    let k = guesser.negative.len();
    let family = build_universal_set(k, (2 * mu).min(k))?;
    for member in 0..family.len() {
        guesser.try_guess(|i| family.contains(member, i));
    }
    Ok(guesser.finish(mu))
}
