//! Cross-checks solvers against the enumeration oracle over generated
//! instances.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forest::NegativeForest;
use crate::graph::{PathSolution, Vertex, WeightedGraph};
use crate::oracle::{oracle_is_conservative, oracle_odd_path};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFilter {
    Conservative,
    SingleNegativeTree,
    NonNegative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepMode {
    /// Every labelled graph on `min_n..=max_n` vertices with weights from the
    /// palette, with `s = 0` and `t = n - 1`.
    Exhaustive,
    /// `count` accepted instances, edges present with `edge_probability`.
    Seeded {
        seed: u64,
        count: usize,
        edge_probability: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub min_n: usize,
    pub max_n: usize,
    pub weight_palette: Vec<Weight>,
    pub filter: SweepFilter,
    pub mode: SweepMode,
}

pub struct SweepSolver<'a> {
    pub name: &'a str,
    pub solve: &'a dyn Fn(&WeightedGraph, Vertex, Vertex) -> Result<PathSolution>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disagreement {
    pub solver: String,
    /// Greedily minimised instance on which the disagreement persists.
    pub graph: WeightedGraph,
    pub s: Vertex,
    pub t: Vertex,
    pub expected: Option<Weight>,
    /// The solver's weight, or its error message.
    pub got: core::result::Result<Option<Weight>, String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepReport {
    pub instances: usize,
    /// Solver runs that declined the instance (wrong shape or a guard).
    pub declined: usize,
    pub disagreements: Vec<Disagreement>,
}

impl SweepSpec {
    pub fn accepts(&self, g: &WeightedGraph) -> bool {
        match self.filter {
            SweepFilter::NonNegative => g.is_nonnegative(),
            SweepFilter::Conservative => oracle_is_conservative(g).unwrap_or(false),
            SweepFilter::SingleNegativeTree => {
                oracle_is_conservative(g).unwrap_or(false)
                    && NegativeForest::new(g).map_or(false, |f| f.len() <= 1)
            }
        }
    }
}

fn declines(error: &Error) -> bool {
    matches!(
        error,
        Error::WrongSolver { .. } | Error::ParameterTooLarge { .. }
    )
}

/// Outcome of one solver on one instance, compared with the oracle weight.
fn verdict(
    solver: &SweepSolver<'_>,
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    expected: Option<Weight>,
) -> Option<core::result::Result<Option<Weight>, String>> {
    match (solver.solve)(g, s, t) {
        Ok(solution) => {
            let valid = solution.path().map_or(true, |p| {
                g.is_odd_path(&p.vertices, s, t) && g.path_weight(&p.vertices) == Some(p.weight)
            });
            let got = solution.weight();
            if valid && got == expected {
                None
            } else {
                Some(Ok(got))
            }
        }
        Err(e) if declines(&e) => None,
        Err(e) => Some(Err(e.to_string())),
    }
}

/// Runs every solver on every instance of `spec`. `on_instance` sees each
/// accepted instance before it is checked.
pub fn sweep(
    spec: &SweepSpec,
    solvers: &[SweepSolver<'_>],
    mut on_instance: impl FnMut(&WeightedGraph, Vertex, Vertex),
) -> SweepReport {
    let mut report = SweepReport::default();
    if spec.weight_palette.is_empty() {
        return report;
    }
    let mut check = |g: WeightedGraph, s: Vertex, t: Vertex, report: &mut SweepReport| {
        on_instance(&g, s, t);
        report.instances += 1;
        let Ok(expected) = oracle_odd_path(&g, s, t).map(|o| o.weight()) else {
            return;
        };
        for solver in solvers {
            match (solver.solve)(&g, s, t) {
                Err(e) if declines(&e) => report.declined += 1,
                _ => {}
            }
            if let Some(got) = verdict(solver, &g, s, t, expected) {
                let (graph, s, t) = minimize(spec, solver, g.clone(), s, t);
                let expected = oracle_odd_path(&graph, s, t).ok().and_then(|o| o.weight());
                let got = verdict(solver, &graph, s, t, expected).unwrap_or(got);
                report.disagreements.push(Disagreement {
                    solver: solver.name.to_string(),
                    graph,
                    s,
                    t,
                    expected,
                    got,
                });
            }
        }
    };
    match spec.mode {
        SweepMode::Exhaustive => {
            for n in spec.min_n.max(2)..=spec.max_n {
                let slots: Vec<(Vertex, Vertex)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                let base = spec.weight_palette.len() + 1;
                let mut choice = vec![0usize; slots.len()];
                loop {
                    let mut g = WeightedGraph::new(n);
                    for (i, &(u, v)) in slots.iter().enumerate() {
                        if choice[i] > 0 {
                            g.add_edge(u, v, spec.weight_palette[choice[i] - 1])
                                .expect("fresh slot");
                        }
                    }
                    if spec.accepts(&g) {
                        check(g, 0, n - 1, &mut report);
                    }
                    // Next assignment in mixed radix.
                    let Some(i) = choice.iter().position(|&c| c + 1 < base) else {
                        break;
                    };
                    choice[i] += 1;
                    choice[..i].iter_mut().for_each(|c| *c = 0);
                }
            }
        }
        SweepMode::Seeded {
            seed,
            count,
            edge_probability,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut attempts = 0usize;
            while report.instances < count && attempts < count.saturating_mul(200) {
                attempts += 1;
                let n = rng.gen_range(spec.min_n.max(2)..=spec.max_n.max(2));
                let mut g = WeightedGraph::new(n);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(edge_probability) {
                            let w = *spec
                                .weight_palette
                                .choose(&mut rng)
                                .expect("non-empty palette");
                            g.add_edge(u, v, w).expect("fresh pair");
                        }
                    }
                }
                let s = rng.gen_range(0..n);
                let t = (s + rng.gen_range(1..n)) % n;
                if spec.accepts(&g) {
                    check(g, s, t, &mut report);
                }
            }
        }
    }
    report
}

/// Deletes edges, then isolated non-terminal vertices, while the instance
/// stays accepted and the solver still disagrees with the oracle.
fn minimize(
    spec: &SweepSpec,
    solver: &SweepSolver<'_>,
    mut g: WeightedGraph,
    mut s: Vertex,
    mut t: Vertex,
) -> (WeightedGraph, Vertex, Vertex) {
    let fails = |g: &WeightedGraph, s: Vertex, t: Vertex| {
        spec.accepts(g)
            && oracle_odd_path(g, s, t)
                .map_or(false, |o| verdict(solver, g, s, t, o.weight()).is_some())
    };
    let mut e = 0;
    while e < g.m() {
        let smaller = g.filter_edges(|f, _| f != e);
        if fails(&smaller, s, t) {
            g = smaller;
        } else {
            e += 1;
        }
    }
    let keep: Vec<Vertex> = (0..g.n())
        .filter(|&v| v == s || v == t || g.degree(v) > 0)
        .collect();
    let smaller = g.induced(&keep);
    let position = |x: Vertex| keep.iter().position(|&v| v == x).expect("terminal kept");
    let (s2, t2) = (position(s), position(t));
    if fails(&smaller, s2, t2) {
        g = smaller;
        s = s2;
        t = t2;
    }
    (g, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spcop::shortest_odd_path_nonneg;

    fn palette(values: &[i64]) -> Vec<Weight> {
        values.iter().map(|&v| Weight::from_integer(v)).collect()
    }

    #[test]
    fn empty_palette_gives_empty_report() {
        let spec = SweepSpec {
            min_n: 2,
            max_n: 4,
            weight_palette: Vec::new(),
            filter: SweepFilter::NonNegative,
            mode: SweepMode::Exhaustive,
        };
        assert_eq!(sweep(&spec, &[], |_, _, _| {}), SweepReport::default());
    }

    #[test]
    fn exhaustive_count_and_agreement() {
        let spec = SweepSpec {
            min_n: 3,
            max_n: 3,
            weight_palette: palette(&[0, 1]),
            filter: SweepFilter::NonNegative,
            mode: SweepMode::Exhaustive,
        };
        let solve = |g: &WeightedGraph, s, t| shortest_odd_path_nonneg(g, s, t);
        let report = sweep(
            &spec,
            &[SweepSolver {
                name: "nonneg",
                solve: &solve,
            }],
            |_, _, _| {},
        );
        assert_eq!(report.instances, 27);
        assert!(report.disagreements.is_empty());
    }

    #[test]
    fn disagreement_is_minimized() {
        let spec = SweepSpec {
            min_n: 4,
            max_n: 5,
            weight_palette: palette(&[1, 2]),
            filter: SweepFilter::NonNegative,
            mode: SweepMode::Seeded {
                seed: 3,
                count: 50,
                edge_probability: 0.7,
            },
        };
        // Claims every instance is infeasible.
        let wrong = |_: &WeightedGraph, _, _| Ok(PathSolution::Infeasible);
        let report = sweep(
            &spec,
            &[SweepSolver {
                name: "wrong",
                solve: &wrong,
            }],
            |_, _, _| {},
        );
        let first = report
            .disagreements
            .first()
            .expect("some instance has an odd path");
        assert_eq!(first.graph.m(), 1, "{:?}", first.graph);
        assert_eq!(first.graph.n(), 2);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let spec = SweepSpec {
            min_n: 3,
            max_n: 6,
            weight_palette: palette(&[-1, 0, 1]),
            filter: SweepFilter::Conservative,
            mode: SweepMode::Seeded {
                seed: 11,
                count: 30,
                edge_probability: 0.5,
            },
        };
        let mut first = Vec::new();
        sweep(&spec, &[], |g, s, t| first.push((g.clone(), s, t)));
        let mut second = Vec::new();
        sweep(&spec, &[], |g, s, t| second.push((g.clone(), s, t)));
        assert_eq!(first.len(), 30);
        assert_eq!(first, second);
    }
}
