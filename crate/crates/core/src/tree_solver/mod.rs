//! Shortest odd path when the negative edges form a single tree.
//!
//! For every pair `(a, b)` of tree vertices two kinds of candidates are
//! produced. First-type candidates keep only the tree path between `a` and
//! `b` and force its edges to alternate parity, via two constrained queries.
//! A second-type candidate exists when a parity-changing leap joins `a` and
//! `b`: the minimum leap closes an odd cycle with the tree path, two disjoint
//! paths bring `s` and `t` onto that cycle, and one of the two ways around
//! the cycle yields an odd path. The best candidate over all pairs is optimal.

mod disjoint;
mod gadget;

use alloc::vec;
use alloc::vec::Vec;

pub use disjoint::{
    two_disjoint_paths, two_disjoint_paths_below, two_openly_disjoint_paths, DisjointPaths,
    DisjointPathsOptions, OpenlyDisjointPaths, DEFAULT_NEGATIVE_EDGE_LIMIT,
};
pub use gadget::{disjoint_paths_gadget, openly_disjoint_paths_via_odd_path, DisjointPathsGadget};

use crate::conservative::require_conservative;
use crate::error::{Error, Result};
use crate::forest::NegativeForest;
use crate::graph::{PathSolution, Vertex, WeightedGraph, WeightedPath};
use crate::leaps::{min_parity_changing_leap, Leap};
use crate::spcop::{shortest_odd_path_nonneg, spcop_unchecked, EdgeParity};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeSolverOptions {
    pub disjoint: DisjointPathsOptions,
}

/// The odd cycle formed by a leap and the tree path it spans, cut at the
/// points where the disjoint paths first reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCut {
    /// Leap vertices from `a` to `b`, then the tree path back towards `a`.
    pub cycle: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
    /// `x` to `y` following the cycle order.
    pub arc_one: Vec<Vertex>,
    /// `x` to `y` against the cycle order.
    pub arc_two: Vec<Vertex>,
    pub through_arc_one: WeightedPath,
    pub through_arc_two: WeightedPath,
}

impl CycleCut {
    /// The odd one of the two assembled paths.
    pub fn odd_path(&self) -> &WeightedPath {
        if self.through_arc_one.edge_count() % 2 == 1 {
            &self.through_arc_one
        } else {
            &self.through_arc_two
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondTypeCandidate {
    pub leap: Leap,
    pub disjoint: DisjointPaths,
    pub cut: CycleCut,
}

/// Candidates produced for one unordered pair of tree vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub a: Vertex,
    pub b: Vertex,
    /// Constrained queries with the alternation starting even, then odd, at `a`.
    pub first_type: [PathSolution; 2],
    pub second_type: Option<SecondTypeCandidate>,
}

impl PairOutcome {
    pub fn best(&self) -> PathSolution {
        let mut best = PathSolution::best_of(self.first_type.iter().cloned());
        if let Some(second) = &self.second_type {
            best.keep_better(PathSolution::Found(second.cut.odd_path().clone()));
        }
        best
    }
}

/// A validated instance with exactly one negative tree.
///
/// The pair loop is exposed as independent units of work so callers can run
/// pairs concurrently and reduce with [`PathSolution::best_of`].
pub struct TreeInstance<'a> {
    g: &'a WeightedGraph,
    s: Vertex,
    t: Vertex,
    forest: NegativeForest,
    options: TreeSolverOptions,
}

/// What validation concluded about an instance.
pub enum TreeProblem<'a> {
    /// No negative edges: a plain non-negative odd path query answers it.
    NonNegative,
    SingleTree(TreeInstance<'a>),
}

impl<'a> TreeInstance<'a> {
    pub fn prepare(
        g: &'a WeightedGraph,
        s: Vertex,
        t: Vertex,
        options: TreeSolverOptions,
    ) -> Result<TreeProblem<'a>> {
        g.check_terminals(s, t)?;
        let forest = NegativeForest::new(g)?;
        match forest.len() {
            0 => Ok(TreeProblem::NonNegative),
            1 => {
                require_conservative(g)?;
                Ok(TreeProblem::SingleTree(TreeInstance {
                    g,
                    s,
                    t,
                    forest,
                    options,
                }))
            }
            trees => Err(Error::WrongSolver { trees }),
        }
    }

    pub fn forest(&self) -> &NegativeForest {
        &self.forest
    }

    /// Unordered pairs `a < b` of tree vertices.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let vertices = &self.forest.tree(0).vertices;
        let mut pairs = Vec::with_capacity(vertices.len() * vertices.len() / 2);
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                pairs.push((a, b));
            }
        }
        pairs
    }

    pub fn solve_pair(&self, a: Vertex, b: Vertex) -> Result<PairOutcome> {
        let first_type = self.first_type(a, b)?;
        let second_type = match min_parity_changing_leap(self.g, &self.forest, 0, a, b)? {
            Some(leap) => self.second_type(leap, None)?,
            None => None,
        };
        Ok(PairOutcome {
            a,
            b,
            first_type,
            second_type,
        })
    }

    fn first_type(&self, a: Vertex, b: Vertex) -> Result<[PathSolution; 2]> {
        let g = self.g;
        let tree_path = self.forest.tree_path(g, 0, a, b)?;
        let mut active = vec![true; g.m()];
        for &e in &self.forest.tree(0).edges {
            active[e] = false;
        }
        let mut even_first = vec![EdgeParity::Free; g.m()];
        let mut odd_first = vec![EdgeParity::Free; g.m()];
        for (position, &e) in tree_path.iter().enumerate() {
            active[e] = true;
            // Sequence numbers along the tree path start at 1 from `a`.
            let sequence_is_even = position % 2 == 1;
            even_first[e] = if sequence_is_even {
                EdgeParity::Even
            } else {
                EdgeParity::Odd
            };
            odd_first[e] = if sequence_is_even {
                EdgeParity::Odd
            } else {
                EdgeParity::Even
            };
        }
        Ok([
            spcop_unchecked(g, Some(&active), self.s, self.t, &even_first).solution,
            spcop_unchecked(g, Some(&active), self.s, self.t, &odd_first).solution,
        ])
    }

    /// With a cutoff, only disjoint pairs lighter than `cutoff` are searched.
    fn second_type(
        &self,
        leap: Leap,
        cutoff: Option<Weight>,
    ) -> Result<Option<SecondTypeCandidate>> {
        let (a, b) = (leap.a(), leap.b());
        let disjoint = match cutoff {
            None => two_disjoint_paths(self.g, self.s, self.t, a, b, &self.options.disjoint)?,
            Some(c) => {
                two_disjoint_paths_below(self.g, self.s, self.t, a, b, &self.options.disjoint, c)?
            }
        };
        let Some(disjoint) = disjoint else {
            return Ok(None);
        };
        let cut = cut_cycle(self.g, &self.forest, 0, &leap, &disjoint)?;
        Ok(Some(SecondTypeCandidate {
            leap,
            disjoint,
            cut,
        }))
    }

    /// Same optimum as reducing [`Self::solve_pair`] over all pairs, but
    /// runs the disjoint path searches last, cheapest leap first, and only
    /// looks for disjoint pairs that could beat the best path so far. A
    /// second-type candidate weighs at most the disjoint pair plus the leap,
    /// and for the pair that certifies optimality that sum is at most the
    /// optimum, so skipped searches never hide a strictly better path.
    pub fn solve(&self) -> Result<PathSolution> {
        let mut best = PathSolution::Infeasible;
        let mut leaps = Vec::new();
        for (a, b) in self.pairs() {
            for candidate in self.first_type(a, b)? {
                best.keep_better(candidate);
            }
            if let Some(leap) = min_parity_changing_leap(self.g, &self.forest, 0, a, b)? {
                let weight = self.g.path_weight(&leap.vertices).expect("leap is a path");
                leaps.push((weight, a, b, leap));
            }
        }
        leaps.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        for (weight, _, _, leap) in leaps {
            let cutoff = best.weight().map(|w| w - weight);
            if let Some(second) = self.second_type(leap, cutoff)? {
                best.keep_better(PathSolution::Found(second.cut.odd_path().clone()));
            }
        }
        Ok(best)
    }
}

/// Shortest odd `(s, t)`-path for conservative weights whose negative edges
/// form at most one tree.
pub fn solve_negative_tree(g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<PathSolution> {
    solve_negative_tree_with(g, s, t, TreeSolverOptions::default())
}

pub fn solve_negative_tree_with(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    options: TreeSolverOptions,
) -> Result<PathSolution> {
    match TreeInstance::prepare(g, s, t, options)? {
        TreeProblem::NonNegative => shortest_odd_path_nonneg(g, s, t),
        TreeProblem::SingleTree(instance) => instance.solve(),
    }
}

/// Cuts the cycle of `leap` at the first cycle vertex of each disjoint path
/// and assembles both candidate paths.
pub fn cut_cycle(
    g: &WeightedGraph,
    forest: &NegativeForest,
    tree: usize,
    leap: &Leap,
    disjoint: &DisjointPaths,
) -> Result<CycleCut> {
    if !leap.parity_changing {
        return Err(Error::InvalidInput(
            "cycle cut needs a parity-changing leap".into(),
        ));
    }
    let back = forest.tree_path_vertices(tree, leap.b(), leap.a())?;
    let mut cycle = leap.vertices.clone();
    cycle.extend_from_slice(&back[1..back.len() - 1]);
    let len = cycle.len();
    let mut position = vec![usize::MAX; g.n()];
    for (i, &v) in cycle.iter().enumerate() {
        position[v] = i;
    }
    let first_hit = |path: &[Vertex]| {
        path.iter()
            .position(|&v| position[v] != usize::MAX)
            .ok_or_else(|| Error::InvalidInput("disjoint path never reaches the cycle".into()))
    };
    let ix = first_hit(&disjoint.path_s)?;
    let iy = first_hit(&disjoint.path_t)?;
    let x = disjoint.path_s[ix];
    let y = disjoint.path_t[iy];
    assert_ne!(x, y, "disjoint paths meet the cycle at distinct vertices");
    let (px, py) = (position[x], position[y]);
    let arc_one: Vec<Vertex> = (0..=(py + len - px) % len)
        .map(|k| cycle[(px + k) % len])
        .collect();
    let arc_two: Vec<Vertex> = (0..=(px + len - py) % len)
        .map(|k| cycle[(px + len - k) % len])
        .collect();
    let assemble = |arc: &[Vertex]| {
        let mut vertices = disjoint.path_s[..ix].to_vec();
        vertices.extend_from_slice(arc);
        vertices.extend(disjoint.path_t[..iy].iter().rev());
        WeightedPath::from_vertices(g, vertices).expect("assembled path follows edges")
    };
    let through_arc_one = assemble(&arc_one);
    let through_arc_two = assemble(&arc_two);
    assert!(
        (through_arc_one.edge_count() + through_arc_two.edge_count()) % 2 == 1,
        "exactly one assembled path is odd"
    );
    Ok(CycleCut {
        cycle,
        x,
        y,
        arc_one,
        arc_two,
        through_arc_one,
        through_arc_two,
    })
}
