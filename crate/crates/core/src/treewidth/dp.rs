//! Dynamic program over a nice decomposition.
//!
//! A state at node `x` records, for a partial solution `F` (an acyclic set
//! of edges introduced below `x` in which forgotten vertices have degree 0 or
//! 2), the degree of every bag vertex, which degree-1 bag vertices are the
//! two ends of the same path of `F`, and the parity of `|F|`. Each state
//! keeps the minimum weight seen and a back-pointer to rebuild `F`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex, WeightedGraph};
use crate::treewidth::nice::{NiceDecomposition, NiceKind};
use crate::treewidth::rank::independent_pairings;
use crate::treewidth::state::PartialState;
use crate::weight::{ScaledWeights, Weight};

/// Bags larger than this are rejected.
pub const MAX_BAG: usize = 24;
const NO_MATE: u8 = 31;

/// Degrees (2 bits per bag position), mates (5 bits per position) and parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    degrees: u64,
    mates: u128,
    parity: u8,
}

#[derive(Clone, Copy)]
struct Decoded {
    len: usize,
    degree: [u8; MAX_BAG],
    mate: [u8; MAX_BAG],
    parity: u8,
}

impl Key {
    fn decode(self, len: usize) -> Decoded {
        let mut d = Decoded {
            len,
            degree: [0; MAX_BAG],
            mate: [NO_MATE; MAX_BAG],
            parity: self.parity,
        };
        for i in 0..len {
            d.degree[i] = (self.degrees >> (2 * i) & 3) as u8;
            d.mate[i] = (self.mates >> (5 * i) & 31) as u8;
        }
        d
    }
}

impl Decoded {
    fn empty(len: usize) -> Decoded {
        Decoded {
            len,
            degree: [0; MAX_BAG],
            mate: [NO_MATE; MAX_BAG],
            parity: 0,
        }
    }

    fn encode(&self) -> Key {
        let mut key = Key {
            degrees: 0,
            mates: 0,
            parity: self.parity,
        };
        for i in 0..self.len {
            key.degrees |= u64::from(self.degree[i]) << (2 * i);
            let mate = if self.degree[i] == 1 {
                self.mate[i]
            } else {
                NO_MATE
            };
            key.mates |= u128::from(mate) << (5 * i);
        }
        key
    }

    fn insert_position(&self, at: usize) -> Decoded {
        let mut out = Decoded {
            parity: self.parity,
            ..Decoded::empty(self.len + 1)
        };
        for i in 0..self.len {
            let j = if i < at { i } else { i + 1 };
            out.degree[j] = self.degree[i];
            let m = self.mate[i];
            out.mate[j] = if m == NO_MATE || (m as usize) < at {
                m
            } else {
                m + 1
            };
        }
        out
    }

    fn remove_position(&self, at: usize) -> Decoded {
        let mut out = Decoded {
            parity: self.parity,
            ..Decoded::empty(self.len - 1)
        };
        for i in (0..self.len).filter(|&i| i != at) {
            let j = if i < at { i } else { i - 1 };
            out.degree[j] = self.degree[i];
            let m = self.mate[i];
            out.mate[j] = if m == NO_MATE || (m as usize) < at {
                m
            } else {
                m - 1
            };
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Leaf,
    /// Same partial solution as the child entry.
    Child(u32),
    /// The child entry plus the node's edge.
    WithEdge(u32),
    Join(u32, u32),
}

#[derive(Debug, Clone)]
struct Entry {
    key: Key,
    weight: i64,
    back: Back,
}

#[derive(Default)]
struct TableBuilder {
    index: HashMap<Key, usize>,
    entries: Vec<Entry>,
}

impl TableBuilder {
    fn offer(&mut self, key: Key, weight: i64, back: Back) {
        match self.index.get(&key) {
            Some(&i) => {
                if weight < self.entries[i].weight {
                    self.entries[i].weight = weight;
                    self.entries[i].back = back;
                }
            }
            None => {
                self.index.insert(key, self.entries.len());
                self.entries.push(Entry { key, weight, back });
            }
        }
    }
}

/// Per-node tables of a completed run.
pub struct DpTables<'a> {
    g: &'a WeightedGraph,
    nice: &'a NiceDecomposition,
    scaled: ScaledWeights,
    tables: Vec<Vec<Entry>>,
}

fn child_index(i: usize) -> u32 {
    u32::try_from(i).expect("table index fits in 32 bits")
}

/// Runs the dynamic program bottom-up. With `rank_reduce`, every slice of
/// a finished table is cut down to a representative subset.
pub fn run_dp<'a>(
    g: &'a WeightedGraph,
    nice: &'a NiceDecomposition,
    rank_reduce: bool,
) -> Result<DpTables<'a>> {
    if nice.width() + 1 > MAX_BAG {
        return Err(Error::ParameterTooLarge {
            parameter: "bag size",
            value: nice.width() + 1,
            limit: MAX_BAG,
        });
    }
    let scaled = ScaledWeights::new(g.edges().iter().map(|e| &e.weight));
    let mut tables: Vec<Vec<Entry>> = Vec::with_capacity(nice.len());
    for node in &nice.nodes {
        let len = node.bag.len();
        let mut out = TableBuilder::default();
        match node.kind {
            NiceKind::Leaf => out.offer(Decoded::empty(0).encode(), 0, Back::Leaf),
            NiceKind::IntroduceVertex(v) => {
                let at = node
                    .bag
                    .binary_search(&v)
                    .expect("introduced vertex in bag");
                for (i, entry) in tables[node.children[0]].iter().enumerate() {
                    let state = entry.key.decode(len - 1).insert_position(at);
                    out.offer(state.encode(), entry.weight, Back::Child(child_index(i)));
                }
            }
            NiceKind::ForgetVertex(v) => {
                let child_bag = &nice.nodes[node.children[0]].bag;
                let at = child_bag
                    .binary_search(&v)
                    .expect("forgotten vertex in child bag");
                for (i, entry) in tables[node.children[0]].iter().enumerate() {
                    let state = entry.key.decode(len + 1);
                    if state.degree[at] != 1 {
                        out.offer(
                            state.remove_position(at).encode(),
                            entry.weight,
                            Back::Child(child_index(i)),
                        );
                    }
                }
            }
            NiceKind::IntroduceEdge(e) => {
                let edge = g.edge(e);
                let (pu, pv) = (
                    node.bag.binary_search(&edge.u).expect("edge end in bag"),
                    node.bag.binary_search(&edge.v).expect("edge end in bag"),
                );
                let w = scaled.values[e];
                for (i, entry) in tables[node.children[0]].iter().enumerate() {
                    out.offer(entry.key, entry.weight, Back::Child(child_index(i)));
                    if let Some(next) = add_edge(entry.key.decode(len), pu, pv) {
                        out.offer(
                            next.encode(),
                            entry.weight + w,
                            Back::WithEdge(child_index(i)),
                        );
                    }
                }
            }
            NiceKind::Join => join(
                &tables[node.children[0]],
                &tables[node.children[1]],
                len,
                &mut out,
            ),
        }
        let entries = if rank_reduce {
            reduce_table(out.entries, len)
        } else {
            out.entries
        };
        tables.push(entries);
    }
    Ok(DpTables {
        g,
        nice,
        scaled,
        tables,
    })
}

/// Keeps, per degree vector and parity, a lightest-first representative
/// subset of the pairings.
fn reduce_table(entries: Vec<Entry>, len: usize) -> Vec<Entry> {
    let mut slices: HashMap<(u64, u8), Vec<usize>> = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        slices
            .entry((e.key.degrees, e.key.parity))
            .or_default()
            .push(i);
    }
    let mut keep = vec![true; entries.len()];
    for members in slices.values_mut() {
        if members.len() < 2 {
            continue;
        }
        members.sort_unstable_by_key(|&i| (entries[i].weight, entries[i].key));
        let state = entries[members[0]].key.decode(len);
        let universe: Vec<u8> = (0..len as u8)
            .filter(|&p| state.degree[p as usize] == 1)
            .collect();
        let pairings: Vec<Vec<(u8, u8)>> = members
            .iter()
            .map(|&i| {
                let d = entries[i].key.decode(len);
                universe
                    .iter()
                    .filter(|&&p| d.mate[p as usize] > p)
                    .map(|&p| (p, d.mate[p as usize]))
                    .collect()
            })
            .collect();
        for (&i, kept) in members
            .iter()
            .zip(independent_pairings(&universe, &pairings))
        {
            keep[i] = kept;
        }
    }
    entries
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(e, _)| e)
        .collect()
}

/// Adds the edge between positions `pu` and `pv`, unless that raises a
/// degree above two or closes a cycle.
fn add_edge(mut state: Decoded, pu: usize, pv: usize) -> Option<Decoded> {
    let (du, dv) = (state.degree[pu], state.degree[pv]);
    if du == 2 || dv == 2 || (du == 1 && dv == 1 && state.mate[pu] as usize == pv) {
        return None;
    }
    // Far ends of the paths that `u` and `v` extend.
    let a = if du == 1 { state.mate[pu] as usize } else { pu };
    let b = if dv == 1 { state.mate[pv] as usize } else { pv };
    state.degree[pu] += 1;
    state.degree[pv] += 1;
    state.mate[a] = b as u8;
    state.mate[b] = a as u8;
    state.parity ^= 1;
    Some(state)
}

fn join(left: &[Entry], right: &[Entry], len: usize, out: &mut TableBuilder) {
    let mut right_groups: HashMap<u64, Vec<usize>> = HashMap::new();
    for (j, entry) in right.iter().enumerate() {
        right_groups.entry(entry.key.degrees).or_default().push(j);
    }
    let mut right_degrees: Vec<(u64, Vec<usize>)> = right_groups.into_iter().collect();
    right_degrees.sort_unstable_by_key(|(d, _)| *d);
    let decoded_right: Vec<Decoded> = right.iter().map(|e| e.key.decode(len)).collect();
    for (i, l) in left.iter().enumerate() {
        let ls = l.key.decode(len);
        for (degrees, members) in &right_degrees {
            let fits = (0..len).all(|p| ls.degree[p] + (degrees >> (2 * p) & 3) as u8 <= 2);
            if !fits {
                continue;
            }
            for &j in members {
                if let Some(state) = combine(&ls, &decoded_right[j]) {
                    out.offer(
                        state.encode(),
                        l.weight + right[j].weight,
                        Back::Join(child_index(i), child_index(j)),
                    );
                }
            }
        }
    }
}

/// Glues two partial solutions on the same bag; `None` if a cycle forms.
fn combine(l: &Decoded, r: &Decoded) -> Option<Decoded> {
    let len = l.len;
    let mut out = Decoded {
        parity: l.parity ^ r.parity,
        ..Decoded::empty(len)
    };
    for p in 0..len {
        out.degree[p] = l.degree[p] + r.degree[p];
    }
    let mut visited = [false; MAX_BAG];
    for start in 0..len {
        if out.degree[start] != 1 || visited[start] {
            continue;
        }
        // Leave through whichever side gives `start` its degree, then alternate.
        let mut from_left = l.degree[start] == 1;
        let mut current = start;
        visited[start] = true;
        loop {
            current = if from_left {
                l.mate[current]
            } else {
                r.mate[current]
            } as usize;
            visited[current] = true;
            if out.degree[current] == 1 {
                break;
            }
            from_left = !from_left;
        }
        out.mate[start] = current as u8;
        out.mate[current] = start as u8;
    }
    // A vertex ending paths on both sides that no walk reached lies on a cycle.
    if (0..len).any(|p| l.degree[p] == 1 && r.degree[p] == 1 && !visited[p]) {
        return None;
    }
    Some(out)
}

impl<'a> DpTables<'a> {
    pub fn total_entries(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }

    /// Every entry of node `x` with its weight.
    pub fn node_entries(&self, x: usize) -> Vec<(PartialState, Weight)> {
        let bag = &self.nice.nodes[x].bag;
        self.tables[x]
            .iter()
            .map(|e| {
                let d = e.key.decode(bag.len());
                let degrees = bag
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, d.degree[i]))
                    .collect();
                let mut pairs: Vec<(Vertex, Vertex)> = (0..bag.len())
                    .filter(|&i| d.degree[i] == 1 && (d.mate[i] as usize) > i)
                    .map(|i| (bag[i], bag[d.mate[i] as usize]))
                    .collect();
                pairs.sort_unstable();
                (
                    PartialState {
                        degrees,
                        pairs,
                        parity: d.parity,
                    },
                    self.scaled.unscale(e.weight),
                )
            })
            .collect()
    }

    /// Edge set behind entry `index` of node `x`.
    fn witness(&self, x: usize, index: usize) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let mut stack = vec![(x, index)];
        while let Some((x, i)) = stack.pop() {
            let node = &self.nice.nodes[x];
            match self.tables[x][i].back {
                Back::Leaf => {}
                Back::Child(c) => stack.push((node.children[0], c as usize)),
                Back::WithEdge(c) => {
                    let NiceKind::IntroduceEdge(e) = node.kind else {
                        unreachable!("edge back-pointer on a non-edge node")
                    };
                    edges.push(e);
                    stack.push((node.children[0], c as usize));
                }
                Back::Join(a, b) => {
                    stack.push((node.children[0], a as usize));
                    stack.push((node.children[1], b as usize));
                }
            }
        }
        edges
    }

    /// Every entry's witness edge set has the entry's parity and weight.
    pub fn witnesses_consistent(&self) -> bool {
        (0..self.tables.len()).all(|x| {
            self.tables[x].iter().enumerate().all(|(i, e)| {
                let edges = self.witness(x, i);
                let weight: i64 = edges.iter().map(|&f| self.scaled.values[f]).sum();
                edges.len() % 2 == e.key.parity as usize && weight == e.weight
            })
        })
    }

    /// The root entry in which `s` and the other root vertex end one odd
    /// path, as a vertex sequence from `s`.
    pub fn optimum(&self, s: Vertex) -> Option<(Vec<Vertex>, Weight)> {
        let root = self.nice.root();
        debug_assert_eq!(self.nice.nodes[root].bag.len(), 2);
        let mut target = Decoded::empty(2);
        target.degree[0] = 1;
        target.degree[1] = 1;
        target.mate[0] = 1;
        target.mate[1] = 0;
        target.parity = 1;
        let target = target.encode();
        let index = self.tables[root].iter().position(|e| e.key == target)?;
        let edges = self.witness(root, index);
        let weight = self.scaled.unscale(self.tables[root][index].weight);
        Some((walk(self.g, &edges, s), weight))
    }
}

/// Orders the edges of a path starting at `start`.
fn walk(g: &WeightedGraph, edges: &[EdgeId], start: Vertex) -> Vec<Vertex> {
    let mut incident: HashMap<Vertex, Vec<EdgeId>> = HashMap::new();
    for &e in edges {
        incident.entry(g.edge(e).u).or_default().push(e);
        incident.entry(g.edge(e).v).or_default().push(e);
    }
    let mut path = vec![start];
    let mut previous: Option<EdgeId> = None;
    let mut current = start;
    while let Some(&e) = incident
        .get(&current)
        .and_then(|es| es.iter().find(|&&e| Some(e) != previous))
    {
        current = g.edge(e).other(current);
        previous = Some(e);
        path.push(current);
    }
    path
}
