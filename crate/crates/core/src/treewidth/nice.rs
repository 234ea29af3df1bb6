//! Nice tree decompositions rooted at the bag `{s, t}`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::treewidth::decomposition::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    IntroduceVertex(Vertex),
    ForgetVertex(Vertex),
    IntroduceEdge(EdgeId),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Nodes are stored children first; the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The plain decomposition with the same bags and tree.
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let mut tree_edges = Vec::new();
        for (x, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                tree_edges.push((c, x));
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|x| x.bag.clone()).collect(),
            tree_edges,
        }
    }

    /// Checks node shapes, the root bag, that every edge is introduced once
    /// while both endpoints are present, and the decomposition axioms.
    pub fn validate(&self, g: &WeightedGraph, s: Vertex, t: Vertex) -> Result<()> {
        let invalid = |msg: alloc::string::String| Err(Error::InvalidDecomposition(msg));
        let mut root_bag = vec![s, t];
        root_bag.sort_unstable();
        if self.nodes.last().map(|x| &x.bag) != Some(&root_bag) {
            return invalid("root bag is not {s, t}".into());
        }
        let mut introduced = vec![0usize; g.m()];
        for (x, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= x) {
                return invalid(format!("node {x} precedes a child"));
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let with = |bag: &Vec<Vertex>, v: Vertex| {
                let mut b = bag.clone();
                b.push(v);
                b.sort_unstable();
                b
            };
            let shape_ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::IntroduceVertex(v) => {
                    node.children.len() == 1
                        && !child_bag(0).contains(&v)
                        && with(child_bag(0), v) == node.bag
                }
                NiceKind::ForgetVertex(v) => {
                    node.children.len() == 1
                        && !node.bag.contains(&v)
                        && with(&node.bag, v) == *child_bag(0)
                }
                NiceKind::IntroduceEdge(e) => {
                    let edge = g.edge(e);
                    introduced[e] += 1;
                    node.children.len() == 1
                        && *child_bag(0) == node.bag
                        && node.bag.contains(&edge.u)
                        && node.bag.contains(&edge.v)
                }
                NiceKind::Join => {
                    node.children.len() == 2
                        && *child_bag(0) == node.bag
                        && *child_bag(1) == node.bag
                }
            };
            if !shape_ok {
                return invalid(format!("node {x} has the wrong shape for {:?}", node.kind));
            }
        }
        if let Some(e) = introduced.iter().position(|&c| c != 1) {
            return invalid(format!("edge {e} introduced {} times", introduced[e]));
        }
        self.as_tree_decomposition().validate(g)
    }
}

struct Builder<'a> {
    g: &'a WeightedGraph,
    nodes: Vec<NiceNode>,
    introduced: Vec<bool>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, top: usize, v: Vertex) -> usize {
        let mut bag = self.nodes[top].bag.clone();
        let at = bag.binary_search(&v).expect_err("vertex is new");
        bag.insert(at, v);
        self.push(NiceKind::IntroduceVertex(v), bag, vec![top])
    }

    /// Introduces the pending edges of `v` inside the current bag, then forgets `v`.
    fn forget(&mut self, mut top: usize, v: Vertex) -> usize {
        top = self.introduce_edges_of(top, v);
        let mut bag = self.nodes[top].bag.clone();
        bag.retain(|&w| w != v);
        self.push(NiceKind::ForgetVertex(v), bag, vec![top])
    }

    fn introduce_edges_of(&mut self, mut top: usize, v: Vertex) -> usize {
        let g = self.g;
        for &(w, e) in g.neighbors(v) {
            if !self.introduced[e] && self.nodes[top].bag.binary_search(&w).is_ok() {
                self.introduced[e] = true;
                let bag = self.nodes[top].bag.clone();
                top = self.push(NiceKind::IntroduceEdge(e), bag, vec![top]);
            }
        }
        top
    }

    /// Turns the chain ending at `top` into one ending at `target`.
    fn morph(&mut self, mut top: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &v in &current {
            if target.binary_search(&v).is_err() {
                top = self.forget(top, v);
            }
        }
        for &v in target {
            if current.binary_search(&v).is_err() {
                top = self.introduce(top, v);
            }
        }
        top
    }
}

/// Nice decomposition of `g` with root bag `{s, t}`. The tree is rooted at a
/// node holding `s` and `t` is added to the bags between that node and one
/// holding `t`, so the width grows by at most one.
pub fn make_nice(
    td: &TreeDecomposition,
    g: &WeightedGraph,
    s: Vertex,
    t: Vertex,
) -> Result<NiceDecomposition> {
    g.check_terminals(s, t)?;
    td.validate(g)?;
    let nodes = td.bags.len();
    let mut adjacency = vec![Vec::new(); nodes];
    for &(a, b) in &td.tree_edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let root = td
        .bags
        .iter()
        .position(|b| b.contains(&s))
        .expect("s is in some bag");
    let mut parent = vec![usize::MAX; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adjacency[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut bags = td.bags.clone();
    let mut x = bags
        .iter()
        .position(|b| b.contains(&t))
        .expect("t is in some bag");
    loop {
        if let Err(at) = bags[x].binary_search(&t) {
            bags[x].insert(at, t);
        }
        if x == root {
            break;
        }
        x = parent[x];
    }
    let mut children = vec![Vec::new(); nodes];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }
    let mut builder = Builder {
        g,
        nodes: Vec::new(),
        introduced: vec![false; g.m()],
    };
    let mut top = vec![usize::MAX; nodes];
    for &x in order.iter().rev() {
        let mut chains = Vec::with_capacity(children[x].len().max(1));
        for &c in &children[x] {
            chains.push(builder.morph(top[c], &bags[x]));
        }
        if chains.is_empty() {
            let leaf = builder.push(NiceKind::Leaf, Vec::new(), Vec::new());
            chains.push(builder.morph(leaf, &bags[x]));
        }
        let mut joined = chains[0];
        for &other in &chains[1..] {
            joined = builder.push(NiceKind::Join, bags[x].clone(), vec![joined, other]);
        }
        top[x] = joined;
    }
    let mut final_bag = vec![s, t];
    final_bag.sort_unstable();
    let mut last = builder.morph(top[root], &final_bag);
    last = builder.introduce_edges_of(last, s);
    let nice = NiceDecomposition {
        nodes: builder.nodes,
    };
    debug_assert_eq!(last, nice.root());
    debug_assert!(nice.validate(g, s, t).is_ok());
    Ok(nice)
}
