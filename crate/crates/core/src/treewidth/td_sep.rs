use alloc::vec;
use alloc::vec::Vec;

use super::{validate_td, Graph, TreeDecomposition};
use crate::error::{Error, Result};
use crate::num::le_tol;

/// A q-separator of size at most `p`, read off a tree decomposition of width `k`.
///
/// Requires `n(k+1) ≤ pq` and `p ≥ k+1`. The tree is rooted at node 0 and
/// scanned bottom-up; whenever the vertices first appearing in the current
/// subtree (and not yet separated) exceed `q`, the current bag is added to `S`
/// and the whole subtree is cut off. Each cut takes more than `q` vertices and
/// at most `k+1` separator vertices, so fewer than `n/q` cuts happen.
pub fn td_q_separator(g: &Graph, td: &TreeDecomposition, q: f64, p: f64) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n as f64 <= q {
        return Ok(Vec::new());
    }
    if let Err(v) = validate_td(g, td) {
        return Err(Error::InvalidDecomposition(alloc::format!("{}", v[0])));
    }
    let k1 = (td.width() + 1) as f64;
    if !le_tol(k1, p) {
        return Err(Error::Precondition(alloc::format!("p >= k+1 fails: p={p}, k+1={k1}")));
    }
    if !le_tol(n as f64 * k1, p * q) {
        return Err(Error::Precondition(alloc::format!(
            "n(k+1) <= pq fails: n(k+1)={}, pq={}",
            n as f64 * k1,
            p * q
        )));
    }
    let m = td.node_count();
    let adj = td.tree_adjacency();
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                depth[y] = depth[x] + 1;
                order.push(y);
            }
        }
    }
    let mut top = vec![usize::MAX; n];
    for (x, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if top[v] == usize::MAX || depth[x] < depth[top[v]] {
                top[v] = x;
            }
        }
    }
    let mut removed = vec![false; n];
    let mut acc = vec![0usize; m];
    let mut s = Vec::new();
    for &x in order.iter().rev() {
        acc[x] += td.bags[x].iter().filter(|&&v| top[v] == x && !removed[v]).count();
        if acc[x] as f64 > q {
            for &v in &td.bags[x] {
                if !removed[v] {
                    removed[v] = true;
                    s.push(v);
                }
            }
            acc[x] = 0;
        }
        if x != 0 {
            acc[parent[x]] += acc[x];
        }
    }
    s.sort_unstable();
    Ok(s)
}
