use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{le_tol, sqrt};
use crate::planar::PlaneGraph;
use crate::separators::cycle::TreeCotree;
use crate::separators::triangulate::triangulate;
use crate::treewidth::{grid_minor_number_small, tw_exact_small, tw_upper_bound, Graph};
use crate::unionfind::UnionFind;

/// The constant `3/√2` of the balanced separator theorem used by the size bound.
pub const LT_CONSTANT: f64 = 2.121_320_343_559_642_6;

/// A balanced separator and how it compares with `√n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalancedSeparator {
    pub vertices: Vec<usize>,
    /// `|S| / √n` (zero for the empty graph).
    pub ratio: f64,
}

/// One separated component in the q-separator loop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub size: usize,
    pub separator_size: usize,
    pub parent: Option<usize>,
    /// 1 plus the largest level among the pieces it was cut into (small pieces
    /// have level 0).
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorResult {
    pub vertices: Vec<usize>,
    pub q: f64,
    pub trace: Vec<TraceRecord>,
    /// Largest `|S_X| / √|X|` over the balanced separators used.
    pub c_impl: f64,
}

impl SeparatorResult {
    /// `(c_impl / (3/√2)) · 12n/√q`.
    pub fn size_bound(&self, n: usize) -> f64 {
        self.c_impl / LT_CONSTANT * nominal_size_bound(n, self.q)
    }

    /// Whether every level-i record with i ≥ 1 has more than (3/2)^{i−1}·q vertices.
    pub fn levels_ok(&self) -> bool {
        self.trace.iter().all(|r| {
            r.level >= 1 && (r.size as f64) > crate::num::powf(1.5, (r.level - 1) as f64) * self.q
        })
    }
}

/// `12n/√q`, the size bound with the constant `3/√2`.
pub fn nominal_size_bound(n: usize, q: f64) -> f64 {
    12.0 * n as f64 / sqrt(q)
}

fn removed_mask(n: usize, s: &[usize]) -> Vec<bool> {
    let mut removed = vec![false; n];
    for &v in s {
        removed[v] = true;
    }
    removed
}

/// Largest component of `G - S`.
pub fn max_component_without(g: &PlaneGraph, s: &[usize]) -> usize {
    g.components_without(&removed_mask(g.vertex_count(), s)).max_size()
}

/// Whether every component of `G - S` has at most `q` vertices.
pub fn is_q_separator(g: &PlaneGraph, s: &[usize], q: f64) -> bool {
    max_component_without(g, s) as f64 <= q
}

fn smallest_balanced_brute(g: &PlaneGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let limit = 2.0 * n as f64 / 3.0;
    for size in 0..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if is_q_separator(g, &s, limit) {
                return s;
            }
        }
    }
    (0..n).collect()
}

/// Vertex set whose removal leaves components of at most ⅔·n vertices.
///
/// Uses the shortest fundamental cycle of a BFS tree in a triangulation of `g`
/// whose two sides each hold at most ⅔·n vertices, then drops vertices that
/// are not needed for the balance.
pub fn vertex_balanced_separator(g: &PlaneGraph) -> BalancedSeparator {
    let n = g.vertex_count();
    let ratio = |s: &[usize]| if n == 0 { 0.0 } else { s.len() as f64 / sqrt(n as f64) };
    if n <= 3 {
        let vertices = smallest_balanced_brute(g);
        return BalancedSeparator { ratio: ratio(&vertices), vertices };
    }
    let tri = triangulate(g).expect("n >= 4");
    let h = &tri.graph;
    let tc = TreeCotree::new(h);
    // a vertex lies strictly inside a cycle iff the dual LCA of its faces does
    let mut count = vec![0.0; h.face_count()];
    for v in 0..n {
        let mut faces = h.rotation(v).map(|d| h.dart_face(d));
        let first = faces.next().expect("triangulations are connected");
        let l = faces.fold(first, |acc, f| tc.face_lca(acc, f));
        count[l] += 1.0;
    }
    let inside = tc.subtree_sums(&count);
    let limit = 2.0 * n as f64 / 3.0;
    let mut best: Option<(usize, usize)> = None;
    for e in 0..h.edge_count() {
        if tc.tree_edge[e] {
            continue;
        }
        let len = tc.cycle_len(h, e);
        let a = inside[tc.child_face(h, e)];
        let b = n as f64 - a - len as f64;
        if a <= limit && b <= limit && best.map_or(true, |(l, _)| len < l) {
            best = Some((len, e));
        }
    }
    let cycle = match best {
        Some((_, e)) => tc.cycle(h, e),
        None => (0..n).collect(),
    };
    let vertices = minimalize_unchecked(g, limit, &cycle);
    BalancedSeparator { ratio: ratio(&vertices), vertices }
}

/// A q-separator built by repeatedly splitting oversized components with
/// balanced separators.
pub fn q_separator(g: &PlaneGraph, q: f64) -> Result<SeparatorResult> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Precondition(alloc::format!("q must be a positive real, got {q}")));
    }
    let n = g.vertex_count();
    let mut in_s = vec![false; n];
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut c_impl: f64 = 0.0;
    // each piece carries its own graph and the map back to `g`
    let mut work: Vec<(PlaneGraph, Vec<usize>, Option<usize>)> = Vec::new();
    let parts = g.components();
    if parts.len() == 1 && n as f64 > q {
        work.push((g.clone(), (0..n).collect(), None));
    } else {
        for part in parts.into_iter().rev() {
            if part.len() as f64 > q {
                let sub = g.induced_subgraph(&part)?;
                work.push((sub.graph, sub.to_parent, None));
            }
        }
    }
    while let Some((piece, to_g, parent)) = work.pop() {
        let sep = vertex_balanced_separator(&piece);
        c_impl = c_impl.max(sep.ratio);
        let id = trace.len();
        trace.push(TraceRecord { size: piece.vertex_count(), separator_size: sep.vertices.len(), parent, level: 1 });
        children.push(Vec::new());
        if let Some(p) = parent {
            children[p].push(id);
        }
        let removed = removed_mask(piece.vertex_count(), &sep.vertices);
        for &v in &sep.vertices {
            in_s[to_g[v]] = true;
        }
        let parts = piece.components_without(&removed).into_parts();
        for part in parts.into_iter().rev() {
            if part.len() as f64 > q {
                let sub = piece.induced_subgraph(&part)?;
                let map = sub.to_parent.iter().map(|&v| to_g[v]).collect();
                work.push((sub.graph, map, Some(id)));
            }
        }
    }
    // children always come after their parents
    for id in (0..trace.len()).rev() {
        let deepest = children[id].iter().map(|&c| trace[c].level).max().unwrap_or(0);
        trace[id].level = deepest + 1;
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    Ok(SeparatorResult { vertices, q, trace, c_impl })
}

/// Removes vertices from `S` in increasing order while it stays a q-separator.
///
/// A vertex is dropped when the component it would join has at most `q`
/// vertices. Later removals only grow components, so every kept vertex stays
/// necessary and the result is inclusion-minimal.
pub fn minimalize_q_separator(g: &PlaneGraph, q: f64, s: &[usize]) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(Error::UnknownVertex(v));
    }
    if !is_q_separator(g, s, q) {
        return Err(Error::Precondition(alloc::format!(
            "the given set is not a {q}-separator (a component has {} vertices)",
            max_component_without(g, s)
        )));
    }
    Ok(minimalize_unchecked(g, q, s))
}

fn minimalize_unchecked(g: &PlaneGraph, q: f64, s: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut in_s = removed_mask(n, s);
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        if !in_s[u] && !in_s[v] {
            uf.union(u, v);
        }
    }
    let mut order: Vec<usize> = s.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut roots: Vec<usize> = Vec::new();
    for &v in &order {
        roots.clear();
        for u in g.neighbors(v) {
            if !in_s[u] {
                roots.push(uf.find(u));
            }
        }
        roots.sort_unstable();
        roots.dedup();
        let merged: usize = 1 + roots.iter().map(|&r| uf.set_size(r)).sum::<usize>();
        if merged as f64 <= q {
            in_s[v] = false;
            for &r in &roots {
                uf.union(v, r);
            }
        }
    }
    order.into_iter().filter(|&v| in_s[v]).collect()
}

/// Whether no single vertex can be dropped from the q-separator `S`.
pub fn is_inclusion_minimal(g: &PlaneGraph, q: f64, s: &[usize]) -> bool {
    (0..s.len()).all(|i| {
        let rest: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        !is_q_separator(g, &rest, q)
    })
}

/// Measured quantities of a minimal q-separator next to its three bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowTwDiagnostics {
    pub size: usize,
    pub size_bound: f64,
    pub tw_upper: i64,
    pub tw_bound: f64,
    /// Exact treewidth of `G[S]`, when `|S|` is small enough.
    pub tw_exact: Option<i64>,
    /// Grid-minor number of `G[S]` capped at 3, when `|S|` is small enough.
    pub grid_minor: Option<usize>,
    pub gm_bound: f64,
    pub size_ok: bool,
    pub tw_ok: bool,
    pub gm_ok: Option<bool>,
}

/// Largest separator for which the exact diagnostics are computed.
pub const EXACT_DIAGNOSTIC_LIMIT: usize = 15;

/// A minimal q-separator together with treewidth diagnostics of `G[S]`.
pub fn low_tw_q_separator(g: &PlaneGraph, q: f64) -> Result<(SeparatorResult, LowTwDiagnostics)> {
    let mut res = q_separator(g, q)?;
    res.vertices = minimalize_unchecked(g, q, &res.vertices);
    let n = g.vertex_count() as f64;
    let sub = g.induced_subgraph(&res.vertices)?;
    let h = Graph::from_plane(&sub.graph);
    let (tw_upper, _) = tw_upper_bound(&h);
    let small = res.vertices.len() <= EXACT_DIAGNOSTIC_LIMIT;
    let tw_exact = small.then(|| tw_exact_small(&h, EXACT_DIAGNOSTIC_LIMIT)).transpose()?;
    let grid_minor = small.then(|| grid_minor_number_small(&h)).transpose()?;
    let root = sqrt(n / q);
    let size_bound = res.size_bound(g.vertex_count());
    let tw_bound = 12.0 * root + 13.0;
    let gm_bound = 2.0 * root + 2.0;
    let diag = LowTwDiagnostics {
        size: res.vertices.len(),
        size_bound,
        tw_upper,
        tw_bound,
        tw_exact,
        grid_minor,
        gm_bound,
        size_ok: le_tol(res.vertices.len() as f64, size_bound),
        tw_ok: (tw_upper as f64) < tw_bound,
        gm_ok: grid_minor.map(|k| (k as f64) < gm_bound),
    };
    Ok((res, diag))
}
