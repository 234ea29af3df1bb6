//! The forest formed by the negative edges.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};

/// One connected component of the negative edges, rooted at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeTree {
    /// Sorted.
    pub vertices: Vec<Vertex>,
    /// Sorted.
    pub edges: Vec<EdgeId>,
    pub root: Vertex,
}

#[derive(Debug, Clone)]
pub struct NegativeForest {
    trees: Vec<NegativeTree>,
    tree_of: Vec<Option<usize>>,
    parent: Vec<Option<(Vertex, EdgeId)>>,
    depth: Vec<usize>,
}

impl NegativeForest {
    /// Builds the forest; a cycle of negative edges is reported as a negative cycle.
    pub fn new(g: &WeightedGraph) -> Result<Self> {
        let n = g.n();
        let mut tree_of = vec![None; n];
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut trees = Vec::new();
        for root in 0..n {
            let has_negative = g
                .neighbors(root)
                .iter()
                .any(|&(_, e)| g.weight(e).is_negative());
            if tree_of[root].is_some() || !has_negative {
                continue;
            }
            let id = trees.len();
            let mut vertices = vec![root];
            let mut edges = Vec::new();
            tree_of[root] = Some(id);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, e) in g.neighbors(v) {
                    if !g.weight(e).is_negative() || parent[v].map(|(_, pe)| pe) == Some(e) {
                        continue;
                    }
                    if tree_of[w].is_some() {
                        return Err(Error::NotConservative {
                            cycle: tree_cycle(&parent, v, w),
                        });
                    }
                    tree_of[w] = Some(id);
                    parent[w] = Some((v, e));
                    depth[w] = depth[v] + 1;
                    vertices.push(w);
                    edges.push(e);
                    stack.push(w);
                }
            }
            vertices.sort_unstable();
            edges.sort_unstable();
            trees.push(NegativeTree {
                vertices,
                edges,
                root,
            });
        }
        Ok(NegativeForest {
            trees,
            tree_of,
            parent,
            depth,
        })
    }

    pub fn trees(&self) -> &[NegativeTree] {
        &self.trees
    }

    pub fn tree(&self, id: usize) -> &NegativeTree {
        &self.trees[id]
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn tree_of(&self, v: Vertex) -> Option<usize> {
        self.tree_of.get(v).copied().flatten()
    }

    pub fn in_tree(&self, tree: usize, v: Vertex) -> bool {
        self.tree_of(v) == Some(tree)
    }

    /// True if edge `e` of `g` belongs to negative tree `tree`.
    pub fn has_edge(&self, g: &WeightedGraph, tree: usize, e: EdgeId) -> bool {
        let edge = g.edge(e);
        edge.weight.is_negative() && self.in_tree(tree, edge.u)
    }

    fn require_in_tree(&self, tree: usize, v: Vertex) -> Result<()> {
        if self.in_tree(tree, v) {
            Ok(())
        } else {
            Err(Error::NotInTree { vertex: v, tree })
        }
    }

    /// Vertices of the tree path from `a` to `b`, both included.
    pub fn tree_path_vertices(&self, tree: usize, a: Vertex, b: Vertex) -> Result<Vec<Vertex>> {
        self.require_in_tree(tree, a)?;
        self.require_in_tree(tree, b)?;
        let (mut x, mut y) = (a, b);
        let mut from_a = Vec::new();
        let mut from_b = Vec::new();
        while self.depth[x] > self.depth[y] {
            from_a.push(x);
            x = self.parent[x].expect("non-root has parent").0;
        }
        while self.depth[y] > self.depth[x] {
            from_b.push(y);
            y = self.parent[y].expect("non-root has parent").0;
        }
        while x != y {
            from_a.push(x);
            from_b.push(y);
            x = self.parent[x].expect("non-root has parent").0;
            y = self.parent[y].expect("non-root has parent").0;
        }
        from_a.push(x);
        from_a.extend(from_b.into_iter().rev());
        Ok(from_a)
    }

    /// Edges of the tree path from `a` to `b`, in order from `a`.
    pub fn tree_path(
        &self,
        g: &WeightedGraph,
        tree: usize,
        a: Vertex,
        b: Vertex,
    ) -> Result<Vec<EdgeId>> {
        let vertices = self.tree_path_vertices(tree, a, b)?;
        Ok(g.path_edges(&vertices).expect("tree path follows edges"))
    }
}

fn tree_cycle(parent: &[Option<(Vertex, EdgeId)>], v: Vertex, w: Vertex) -> Vec<Vertex> {
    let ancestors = |mut x: Vertex| {
        let mut chain = vec![x];
        while let Some((p, _)) = parent[x] {
            chain.push(p);
            x = p;
        }
        chain
    };
    let from_v = ancestors(v);
    let from_w = ancestors(w);
    let meet = *from_v
        .iter()
        .find(|x| from_w.contains(x))
        .expect("same component");
    let mut cycle: Vec<Vertex> = from_v.iter().copied().take_while(|&x| x != meet).collect();
    cycle.push(meet);
    let tail: Vec<Vertex> = from_w.iter().copied().take_while(|&x| x != meet).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_trees_and_paths() {
        // Negative star 0-1, 0-2, 2-3 and a separate negative edge 4-5.
        let g = WeightedGraph::from_edges(
            7,
            [
                (0, 1, -1),
                (0, 2, -1),
                (2, 3, -2),
                (4, 5, -1),
                (1, 6, 3),
                (3, 4, 5),
            ],
        )
        .unwrap();
        let f = NegativeForest::new(&g).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.tree(0).vertices, [0, 1, 2, 3]);
        assert_eq!(f.tree(1).edges, [3]);
        assert_eq!(f.tree_of(6), None);
        assert_eq!(f.tree_path_vertices(0, 1, 3).unwrap(), [1, 0, 2, 3]);
        assert_eq!(f.tree_path(&g, 0, 3, 1).unwrap(), [2, 1, 0]);
        assert_eq!(f.tree_path_vertices(0, 2, 2).unwrap(), [2]);
        assert!(matches!(
            f.tree_path(&g, 0, 1, 4),
            Err(Error::NotInTree { vertex: 4, tree: 0 })
        ));
    }

    #[test]
    fn negative_cycle_in_forest() {
        let g =
            WeightedGraph::from_edges(4, [(0, 1, -1), (1, 2, -1), (2, 0, -1), (2, 3, 1)]).unwrap();
        match NegativeForest::new(&g) {
            Err(Error::NotConservative { cycle }) => assert_eq!(cycle.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
