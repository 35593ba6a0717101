//! Tree decompositions, treewidth bounds and small exact oracles.

mod exact;
mod heuristic;
mod minor;
mod td_sep;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::planar::PlaneGraph;

pub use exact::tw_exact_small;
pub use heuristic::{decomposition_from_order, tw_upper_bound, MIN_FILL_LIMIT};
pub use minor::{grid_minor_exact_small, grid_minor_number_small};
pub use td_sep::td_q_separator;

/// Default vertex limit of the exact oracles.
pub const EXACT_LIMIT: usize = 15;

/// A simple undirected graph as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list; loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Graph { adj }
    }

    pub fn from_plane(g: &PlaneGraph) -> Self {
        Self::from_edges(g.vertex_count(), g.edges())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().flat_map(|&u| {
            let index = &index;
            self.adj[u].iter().filter(move |&&v| index[v] != usize::MAX).map(move |&v| (index[u], index[v]))
        });
        Graph::from_edges(keep.len(), edges.collect::<Vec<_>>())
    }

    /// Adjacency bitmasks; only for graphs with at most 32 vertices.
    pub(crate) fn masks(&self) -> Vec<u32> {
        debug_assert!(self.vertex_count() <= 32);
        self.adj.iter().map(|a| a.iter().fold(0u32, |m, &v| m | 1 << v)).collect()
    }
}

/// Bags on the nodes of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; −1 when there are no bags or all are empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub(crate) fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum TdViolation {
    #[error("bag {bag} contains vertex {vertex}, which is not in the graph")]
    UnknownVertex { bag: usize, vertex: usize },
    #[error("tree edge ({0}, {1}) refers to a missing node")]
    UnknownNode(usize, usize),
    #[error("the decomposition tree is not a tree")]
    NotATree,
    #[error("edge {0}{1} uncovered")]
    EdgeUncovered(usize, usize),
    #[error("vertex {0} appears in no bag")]
    VertexMissing(usize),
    #[error("bags containing vertex {0} are not connected in the tree")]
    Disconnected(usize),
}

/// Checks both decomposition axioms and that the index set is a tree.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> core::result::Result<(), Vec<TdViolation>> {
    let n = g.vertex_count();
    let m = td.bags.len();
    let mut out = Vec::new();
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(TdViolation::UnknownVertex { bag: b, vertex: v });
            }
        }
    }
    for &(a, b) in &td.edges {
        if a >= m || b >= m {
            out.push(TdViolation::UnknownNode(a, b));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let adj = td.tree_adjacency();
    let connected = m == 0 || {
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == m
    };
    if !connected || td.edges.len() + 1 != m.max(1) {
        out.push(TdViolation::NotATree);
        return Err(out);
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(b);
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (&holders[u], &holders[v]);
        let (mut i, mut j) = (0, 0);
        let mut shared = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    shared = true;
                    break;
                }
            }
        }
        if !shared {
            out.push(TdViolation::EdgeUncovered(u, v));
        }
    }
    let mut mark = vec![usize::MAX; m];
    for v in 0..n {
        let hs = &holders[v];
        let Some(&start) = hs.first() else {
            out.push(TdViolation::VertexMissing(v));
            continue;
        };
        for &b in hs {
            mark[b] = v;
        }
        let mut seen = 1;
        let mut queue = VecDeque::from([start]);
        mark[start] = usize::MAX - 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if mark[y] == v {
                    mark[y] = usize::MAX - 1;
                    seen += 1;
                    queue.push_back(y);
                }
            }
        }
        if seen != hs.len() {
            out.push(TdViolation::Disconnected(v));
        }
        for &b in hs {
            mark[b] = usize::MAX;
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// `12·√(x + N/W) + 7`, defined for `N ≥ W ≥ 1`.
pub fn tw_weight_bound(x: usize, n_total: f64, w_min: f64) -> Result<f64> {
    if !(w_min >= 1.0 && n_total >= w_min) {
        return Err(Error::Precondition(alloc::format!("need N >= W >= 1, got N={n_total}, W={w_min}")));
    }
    Ok(12.0 * crate::num::sqrt(x as f64 + n_total / w_min) + 7.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)])
    }

    #[test]
    fn validate_examples() {
        let td = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![(0, 1)] };
        assert!(validate_td(&path3(), &td).is_ok());
        assert_eq!(td.width(), 1);
        let bad = TreeDecomposition { bags: vec![vec![0], vec![2]], edges: vec![(0, 1)] };
        let v = validate_td(&path3(), &bad).unwrap_err();
        assert!(v.contains(&TdViolation::EdgeUncovered(0, 1)));
        assert_eq!(TdViolation::EdgeUncovered(0, 1).to_string(), "edge 01 uncovered");
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let one = TreeDecomposition { bags: vec![vec![0, 1, 2, 3]], edges: vec![] };
        assert!(validate_td(&k4, &one).is_ok());
        assert_eq!(one.width(), 3);
    }

    #[test]
    fn validate_detects_broken_trees() {
        let split = TreeDecomposition { bags: vec![vec![0, 1], vec![2], vec![1, 2]], edges: vec![(0, 1), (1, 2)] };
        assert_eq!(validate_td(&path3(), &split).unwrap_err(), vec![TdViolation::Disconnected(1)]);
        let forest = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![] };
        assert_eq!(validate_td(&path3(), &forest).unwrap_err(), vec![TdViolation::NotATree]);
        let empty = TreeDecomposition::default();
        assert!(validate_td(&Graph::from_edges(0, []), &empty).is_ok());
        assert_eq!(empty.width(), -1);
    }

    #[test]
    fn weight_bound_values() {
        assert_eq!(tw_weight_bound(0, 5.0, 5.0).unwrap(), 19.0);
        assert_eq!(tw_weight_bound(4, 24.0, 2.0).unwrap(), 55.0);
        assert!(tw_weight_bound(0, 5.0, 0.5).is_err());
        assert!(tw_weight_bound(0, 1.0, 2.0).is_err());
    }
}
