//! Minimum-weight perfect matching, T-joins and maximum matching size.

mod blossom;
mod tjoin;

use alloc::vec::Vec;

pub use blossom::{max_weight_matching, BlossomDuals, MaxWeightMatching};
pub use tjoin::{min_weight_t_join, TJoin};

use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::weight::{ScaledWeights, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    /// Matched edge ids, ascending.
    pub edges: Vec<EdgeId>,
    pub weight: Weight,
}

impl PerfectMatching {
    pub fn mate(&self, g: &WeightedGraph) -> Vec<Option<Vertex>> {
        let mut mate = alloc::vec![None; g.n()];
        for &e in &self.edges {
            let edge = g.edge(e);
            mate[edge.u] = Some(edge.v);
            mate[edge.v] = Some(edge.u);
        }
        mate
    }
}

/// Dual solution proving optimality of a perfect matching.
///
/// The primal problem is maximum-weight perfect matching under the
/// transformed integer weights `offset - scaled(w)`, which is equivalent to
/// minimising `w`.
#[derive(Debug, Clone)]
pub struct MatchingCertificate {
    pub transformed: Vec<i64>,
    pub duals: BlossomDuals,
}

impl MatchingCertificate {
    /// Checks dual feasibility, complementary slackness on matched edges and
    /// fullness of every blossom with positive dual.
    pub fn verify(&self, g: &WeightedGraph, matching: &PerfectMatching) -> bool {
        let n = g.n();
        if self.duals.vertex.len() != n || self.transformed.len() != g.m() {
            return false;
        }
        let mate = matching.mate(g);
        if mate.iter().any(Option::is_none) {
            return false;
        }
        let mut member: Vec<Vec<bool>> = Vec::with_capacity(self.duals.blossoms.len());
        for (leaves, z) in &self.duals.blossoms {
            if *z < 0 || leaves.len() % 2 == 0 {
                return false;
            }
            let mut inside = alloc::vec![false; n];
            for &v in leaves {
                inside[v] = true;
            }
            if *z > 0 {
                let matched_inside = leaves
                    .iter()
                    .filter(|&&v| mate[v].map(|m| inside[m]).unwrap_or(false))
                    .count();
                if matched_inside != leaves.len() - 1 {
                    return false;
                }
            }
            member.push(inside);
        }
        let matched: Vec<bool> = {
            let mut flags = alloc::vec![false; g.m()];
            for &e in &matching.edges {
                flags[e] = true;
            }
            flags
        };
        for (e, edge) in g.edges().iter().enumerate() {
            let mut slack = self.duals.vertex[edge.u] + self.duals.vertex[edge.v]
                - 2 * i128::from(self.transformed[e]);
            for (inside, (_, z)) in member.iter().zip(&self.duals.blossoms) {
                if inside[edge.u] && inside[edge.v] {
                    slack += 2 * z;
                }
            }
            if slack < 0 || (matched[e] && slack != 0) {
                return false;
            }
        }
        true
    }
}

/// Minimum-weight perfect matching, or `None` if the graph has no perfect matching.
pub fn min_weight_perfect_matching(g: &WeightedGraph) -> Option<PerfectMatching> {
    let (matching, certificate) = min_weight_perfect_matching_certified(g)?;
    debug_assert!(
        certificate.verify(g, &matching),
        "matching certificate rejected"
    );
    Some(matching)
}

/// Like [`min_weight_perfect_matching`], also returning the dual certificate.
pub fn min_weight_perfect_matching_certified(
    g: &WeightedGraph,
) -> Option<(PerfectMatching, MatchingCertificate)> {
    if g.n() % 2 == 1 {
        return None;
    }
    if g.n() == 0 {
        let empty = PerfectMatching {
            edges: Vec::new(),
            weight: Weight::ZERO,
        };
        let duals = BlossomDuals {
            vertex: Vec::new(),
            blossoms: Vec::new(),
        };
        return Some((
            empty,
            MatchingCertificate {
                transformed: Vec::new(),
                duals,
            },
        ));
    }
    let scaled = ScaledWeights::new(g.edges().iter().map(|e| &e.weight));
    let offset = scaled
        .values
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .checked_add(1)?;
    let transformed: Vec<i64> = scaled
        .values
        .iter()
        .map(|&c| {
            offset
                .checked_sub(c)
                .expect("transformed matching weight fits in i64")
        })
        .collect();
    let edges: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .zip(&transformed)
        .map(|(e, &w)| (e.u, e.v, w))
        .collect();
    let result = max_weight_matching(g.n(), &edges, true);
    if result.mate.iter().any(Option::is_none) {
        return None;
    }
    let mut matched: Vec<EdgeId> = (0..g.m())
        .filter(|&e| result.mate[g.edge(e).u] == Some(g.edge(e).v))
        .collect();
    matched.sort_unstable();
    let weight = matched.iter().map(|&e| g.weight(e)).sum();
    Some((
        PerfectMatching {
            edges: matched,
            weight,
        },
        MatchingCertificate {
            transformed,
            duals: result.duals,
        },
    ))
}

/// Size of a maximum matching among the given edges, computed through a
/// minimum-weight perfect matching on a padded graph: each endpoint gets a
/// private dummy at cost 1 and the dummies form a free clique.
pub fn maximum_matching_size(n: usize, edges: &[(Vertex, Vertex)]) -> usize {
    let mut touched: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    touched.sort_unstable();
    touched.dedup();
    let k = touched.len();
    if k == 0 {
        return 0;
    }
    let mut position = alloc::vec![usize::MAX; n];
    for (i, &v) in touched.iter().enumerate() {
        position[v] = i;
    }
    let mut padded = WeightedGraph::new(2 * k);
    for &(u, v) in edges {
        // Duplicate pairs are harmless; only the first is kept.
        let _ = padded.add_edge(position[u], position[v], Weight::ZERO);
    }
    for i in 0..k {
        padded
            .add_edge(i, k + i, Weight::ONE)
            .expect("fresh dummy edge");
        for j in i + 1..k {
            padded
                .add_edge(k + i, k + j, Weight::ZERO)
                .expect("fresh clique edge");
        }
    }
    let matching =
        min_weight_perfect_matching(&padded).expect("padded graph has a perfect matching");
    let unmatched = usize::try_from(matching.weight.numer()).expect("non-negative count");
    (k - unmatched) / 2
}
