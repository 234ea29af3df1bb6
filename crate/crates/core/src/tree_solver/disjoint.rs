//! Minimum-weight vertex-disjoint path pairs under conservative weights.
//!
//! A branch and bound over the negative edges, each fixed as unused, used
//! forward or used backward. The bound is a min-cost flow on the
//! vertex-split digraph in which undecided negative edges are free and their
//! weight is added as a constant; fixed edges become supply and demand.
//! Cycles in the flow weigh at least zero, so the bound is valid, and every
//! flow is turned into a pair of walks whose real weight updates the
//! incumbent.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::weight::{ScaledWeights, Weight};

/// Default cap on the number of negative edges the exact search accepts.
pub const DEFAULT_NEGATIVE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisjointPathsOptions {
    pub negative_edge_limit: usize,
}

impl Default for DisjointPathsOptions {
    fn default() -> Self {
        DisjointPathsOptions {
            negative_edge_limit: DEFAULT_NEGATIVE_EDGE_LIMIT,
        }
    }
}

/// Two vertex-disjoint paths, one starting at `s` and one at `t`, ending on
/// the two requested endpoints in some assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPaths {
    pub path_s: Vec<Vertex>,
    pub path_t: Vec<Vertex>,
    pub total_weight: Weight,
}

/// Two `(s, t)`-paths sharing only their endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenlyDisjointPaths {
    pub first: Vec<Vertex>,
    pub second: Vec<Vertex>,
    pub total_weight: Weight,
}

/// Minimum total weight pair of vertex-disjoint paths from `{s, t}` to `{a, b}`.
///
/// A terminal may coincide with an endpoint, in which case its path is that
/// single vertex. Weights must be conservative.
pub fn two_disjoint_paths(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    a: Vertex,
    b: Vertex,
    options: &DisjointPathsOptions,
) -> Result<Option<DisjointPaths>> {
    g.check_terminals(s, t)?;
    g.check_terminals(a, b)?;
    disjoint_below(g, s, t, a, b, options, None)
}

/// Like [`two_disjoint_paths`], but only reports pairs weighing strictly
/// less than `cutoff`. Much cheaper when the cutoff is tight.
pub fn two_disjoint_paths_below(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    a: Vertex,
    b: Vertex,
    options: &DisjointPathsOptions,
    cutoff: Weight,
) -> Result<Option<DisjointPaths>> {
    g.check_terminals(s, t)?;
    g.check_terminals(a, b)?;
    disjoint_below(g, s, t, a, b, options, Some(cutoff))
}

fn disjoint_below(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    a: Vertex,
    b: Vertex,
    options: &DisjointPathsOptions,
    cutoff: Option<Weight>,
) -> Result<Option<DisjointPaths>> {
    let search = Search::new(g, &[s, t], &[a, b], options)?;
    let cutoff = cutoff.map(|c| search.scale(c));
    Ok(search.run(cutoff).map(|(mut walks, total)| {
        let path_t = walks.pop().expect("two walks");
        let path_s = walks.pop().expect("two walks");
        DisjointPaths {
            path_s,
            path_t,
            total_weight: search.scaled.unscale(total),
        }
    }))
}

/// Minimum total weight pair of openly disjoint `(s, t)`-paths.
pub fn two_openly_disjoint_paths(
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
    options: &DisjointPathsOptions,
) -> Result<Option<OpenlyDisjointPaths>> {
    g.check_terminals(s, t)?;
    let search = Search::new(g, &[s, s], &[t, t], options)?;
    Ok(search.run(None).map(|(mut walks, total)| {
        let second = walks.pop().expect("two walks");
        let first = walks.pop().expect("two walks");
        let (first, second) = if first <= second {
            (first, second)
        } else {
            (second, first)
        };
        OpenlyDisjointPaths {
            first,
            second,
            total_weight: search.scaled.unscale(total),
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Use {
    Undecided,
    Unused,
    /// Traversed from `edge.u` to `edge.v`.
    Forward,
    Backward,
}

struct Search<'a> {
    g: &'a WeightedGraph,
    scaled: ScaledWeights,
    negative: Vec<EdgeId>,
    starts: Vec<Vertex>,
    ends: Vec<Vertex>,
    capacity: Vec<i32>,
    /// Fixed edges that may still enter or leave each vertex.
    in_limit: Vec<u8>,
    out_limit: Vec<u8>,
}

struct Best {
    total: i64,
    walks: Option<Vec<Vec<Vertex>>>,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a WeightedGraph,
        starts: &[Vertex],
        ends: &[Vertex],
        options: &DisjointPathsOptions,
    ) -> Result<Self> {
        let negative = g.negative_edges();
        if negative.len() > options.negative_edge_limit {
            return Err(Error::ParameterTooLarge {
                parameter: "negative edges for disjoint paths",
                value: negative.len(),
                limit: options.negative_edge_limit,
            });
        }
        let n = g.n();
        let mut start_count = vec![0u8; n];
        let mut end_count = vec![0u8; n];
        for &v in starts {
            start_count[v] += 1;
        }
        for &v in ends {
            end_count[v] += 1;
        }
        let mut capacity = vec![1i32; n];
        let mut in_limit = vec![0u8; n];
        let mut out_limit = vec![0u8; n];
        for v in 0..n {
            let cap = start_count[v].max(end_count[v]).max(1);
            capacity[v] = i32::from(cap);
            in_limit[v] = cap - start_count[v];
            out_limit[v] = cap - end_count[v];
        }
        Ok(Search {
            g,
            scaled: ScaledWeights::new(g.edges().iter().map(|e| &e.weight)),
            negative,
            starts: starts.to_vec(),
            ends: ends.to_vec(),
            capacity,
            in_limit,
            out_limit,
        })
    }

    /// Integer image of a weight that is a sum of graph weights; rounded up
    /// otherwise, which keeps a strict cutoff strict.
    fn scale(&self, w: Weight) -> i64 {
        let numer = i128::from(w.numer()) * i128::from(self.scaled.scale);
        let denom = i128::from(w.denom());
        let value = numer.div_euclid(denom) + i128::from(numer.rem_euclid(denom) != 0);
        i64::try_from(value).unwrap_or(if value > 0 { i64::MAX } else { i64::MIN })
    }

    fn run(&self, cutoff: Option<i64>) -> Option<(Vec<Vec<Vertex>>, i64)> {
        let mut uses = vec![Use::Undecided; self.negative.len()];
        let mut in_forced = vec![0u8; self.g.n()];
        let mut out_forced = vec![0u8; self.g.n()];
        let mut best = Best {
            total: cutoff.unwrap_or(i64::MAX),
            walks: None,
        };
        self.branch(0, &mut uses, &mut in_forced, &mut out_forced, &mut best);
        let total = best.total;
        best.walks.map(|walks| (walks, total))
    }

    fn branch(
        &self,
        depth: usize,
        uses: &mut [Use],
        in_forced: &mut [u8],
        out_forced: &mut [u8],
        best: &mut Best,
    ) {
        let Some(relaxed) = self.relax(uses) else {
            return;
        };
        if relaxed.bound >= best.total {
            return;
        }
        let total = self.walk_weight(&relaxed.walks);
        if total < best.total {
            *best = Best {
                total,
                walks: Some(relaxed.walks),
            };
        }
        if relaxed.bound >= best.total || depth == self.negative.len() {
            return;
        }
        let edge = self.g.edge(self.negative[depth]);
        let mut order = [Use::Unused, Use::Forward, Use::Backward];
        // Explore first the orientation the relaxation already uses.
        if let Some(forward) = relaxed.direction[depth] {
            order.swap(0, if forward { 1 } else { 2 });
        }
        for choice in order {
            let (tail, head) = match choice {
                Use::Forward => (edge.u, edge.v),
                Use::Backward => (edge.v, edge.u),
                _ => {
                    uses[depth] = Use::Unused;
                    self.branch(depth + 1, uses, in_forced, out_forced, best);
                    uses[depth] = Use::Undecided;
                    continue;
                }
            };
            if out_forced[tail] >= self.out_limit[tail] || in_forced[head] >= self.in_limit[head] {
                continue;
            }
            out_forced[tail] += 1;
            in_forced[head] += 1;
            uses[depth] = choice;
            self.branch(depth + 1, uses, in_forced, out_forced, best);
            uses[depth] = Use::Undecided;
            out_forced[tail] -= 1;
            in_forced[head] -= 1;
        }
    }

    fn walk_weight(&self, walks: &[Vec<Vertex>]) -> i64 {
        walks
            .iter()
            .flat_map(|w| w.windows(2))
            .map(|p| self.scaled.values[self.g.edge_between(p[0], p[1]).expect("walk edge")])
            .sum()
    }

    /// Solves the relaxation for a partial assignment: undecided negative
    /// edges cost nothing in either direction and their weight is counted as
    /// a constant. Decided edges become a unit of supply at the head and of
    /// demand at the tail.
    fn relax(&self, uses: &[Use]) -> Option<Relaxation> {
        let g = self.g;
        let n = g.n();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut net = FlowNetwork::new(2 * n + 2);
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, self.capacity[v], 0);
        }
        let mut status = vec![Use::Undecided; g.m()];
        let mut negative_index = vec![usize::MAX; g.m()];
        for (i, &e) in self.negative.iter().enumerate() {
            status[e] = uses[i];
            negative_index[e] = i;
        }
        let mut constant = 0i64;
        let mut arc_of_edge = vec![(usize::MAX, usize::MAX); g.m()];
        let mut required = self.starts.len() as i32;
        for (e, edge) in g.edges().iter().enumerate() {
            let w = self.scaled.values[e];
            let (tail, head) = match status[e] {
                Use::Unused => continue,
                Use::Undecided => {
                    let cost = if w < 0 {
                        constant += w;
                        0
                    } else {
                        w
                    };
                    let forward = net.add_arc(2 * edge.u + 1, 2 * edge.v, 1, cost);
                    let backward = net.add_arc(2 * edge.v + 1, 2 * edge.u, 1, cost);
                    arc_of_edge[e] = (forward, backward);
                    continue;
                }
                Use::Forward => (edge.u, edge.v),
                Use::Backward => (edge.v, edge.u),
            };
            constant += w;
            net.add_arc(source, 2 * head, 1, 0);
            net.add_arc(2 * tail + 1, sink, 1, 0);
            required += 1;
        }
        for &v in &self.starts {
            net.add_arc(source, 2 * v, 1, 0);
        }
        for &v in &self.ends {
            net.add_arc(2 * v + 1, sink, 1, 0);
        }
        let cost = net.min_cost_flow(source, sink, required)?;
        let mut successors: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut direction = vec![None; self.negative.len()];
        for (e, edge) in g.edges().iter().enumerate() {
            let (forward_used, backward_used) = match status[e] {
                Use::Unused => continue,
                Use::Forward => (true, false),
                Use::Backward => (false, true),
                Use::Undecided => {
                    let (forward, backward) = arc_of_edge[e];
                    (
                        net.flow_on(2 * edge.u + 1, forward) > 0,
                        net.flow_on(2 * edge.v + 1, backward) > 0,
                    )
                }
            };
            // An edge used both ways is a two-cycle off the walks.
            if forward_used && backward_used {
                continue;
            }
            if forward_used {
                successors[edge.u].push(edge.v);
            }
            if backward_used {
                successors[edge.v].push(edge.u);
            }
            if status[e] == Use::Undecided
                && negative_index[e] != usize::MAX
                && (forward_used || backward_used)
            {
                direction[negative_index[e]] = Some(forward_used);
            }
        }
        let mut walks = Vec::with_capacity(self.starts.len());
        let mut remaining_end: Vec<u8> = vec![0; n];
        for &v in &self.ends {
            remaining_end[v] += 1;
        }
        for &start in &self.starts {
            let mut walk = vec![start];
            let mut current = start;
            while remaining_end[current] == 0 {
                current = successors[current]
                    .pop()
                    .expect("flow leaves every non-end vertex");
                walk.push(current);
                assert!(walk.len() <= n + 1, "flow walk revisited a vertex");
            }
            remaining_end[current] -= 1;
            walks.push(walk);
        }
        Some(Relaxation {
            bound: cost + constant,
            walks,
            direction,
        })
    }
}

struct Relaxation {
    bound: i64,
    walks: Vec<Vec<Vertex>>,
    /// Per negative edge, the direction the relaxed flow used it in (true for forward).
    direction: Vec<Option<bool>>,
}

struct Arc {
    to: usize,
    rev: usize,
    cap: i32,
    cost: i64,
}

struct FlowNetwork {
    adjacency: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adjacency: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    /// Adds an arc and returns its index in `from`'s list.
    fn add_arc(&mut self, from: usize, to: usize, cap: i32, cost: i64) -> usize {
        let forward_index = self.adjacency[from].len();
        let backward_index = self.adjacency[to].len() + usize::from(from == to);
        self.adjacency[from].push(Arc {
            to,
            rev: backward_index,
            cap,
            cost,
        });
        self.adjacency[to].push(Arc {
            to: from,
            rev: forward_index,
            cap: 0,
            cost: -cost,
        });
        forward_index
    }

    /// Flow on a unit-capacity arc.
    fn flow_on(&self, from: usize, index: usize) -> i32 {
        let arc = &self.adjacency[from][index];
        self.adjacency[arc.to][arc.rev].cap
    }

    /// Successive shortest paths with potentials; all initial costs are non-negative.
    fn min_cost_flow(&mut self, source: usize, sink: usize, required: i32) -> Option<i64> {
        let nodes = self.adjacency.len();
        let mut potential = vec![0i64; nodes];
        let mut total = 0i64;
        let mut sent = 0;
        while sent < required {
            let mut dist = vec![i64::MAX; nodes];
            let mut previous = vec![(usize::MAX, usize::MAX); nodes];
            let mut heap = BinaryHeap::new();
            dist[source] = 0;
            heap.push(Reverse((0i64, source)));
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > dist[v] {
                    continue;
                }
                for (i, arc) in self.adjacency[v].iter().enumerate() {
                    if arc.cap <= 0 {
                        continue;
                    }
                    let nd = d + arc.cost + potential[v] - potential[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        previous[arc.to] = (v, i);
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[sink] == i64::MAX {
                return None;
            }
            for v in 0..nodes {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut v = sink;
            while v != source {
                let (u, i) = previous[v];
                self.adjacency[u][i].cap -= 1;
                let rev = self.adjacency[u][i].rev;
                self.adjacency[v][rev].cap += 1;
                total += self.adjacency[u][i].cost;
                v = u;
            }
            sent += 1;
        }
        Some(total)
    }
}
