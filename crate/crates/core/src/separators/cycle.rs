use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::le_tol;
use crate::planar::{Dart, FaceId, FaceWeighting, PlaneGraph, NONE};
use crate::separators::triangulate::{is_triangulation, triangulate};

/// How a noose travels from one vertex to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NooseStep {
    /// Along the edge between the two vertices.
    Edge,
    /// Through the interior of a face incident to both.
    Face(FaceId),
}

/// A closed curve meeting the graph in `vertices`; `steps[i]` leads from
/// `vertices[i]` to `vertices[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Noose {
    pub vertices: Vec<usize>,
    pub steps: Vec<NooseStep>,
}

impl Noose {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertices share the crossed face or the traversed edge, and
    /// no vertex repeats.
    pub fn is_consistent(&self, g: &PlaneGraph) -> bool {
        let k = self.vertices.len();
        if k == 0 || self.steps.len() != k {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || sorted.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            match self.steps[i] {
                NooseStep::Edge => a != b && g.has_edge(a, b),
                NooseStep::Face(f) => {
                    f < g.face_count()
                        && g.incident_faces_unchecked(a).contains(&f)
                        && g.incident_faces_unchecked(b).contains(&f)
                }
            }
        })
    }
}

/// A noose together with the weight bookkeeping of its components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NooseSeparator {
    pub noose: Noose,
    pub total_weight: f64,
    /// `w(F(C) ∩ F(G))` for each component `C` of `G` minus the noose vertices.
    pub component_weights: Vec<f64>,
}

impl NooseSeparator {
    pub fn max_component_weight(&self) -> f64 {
        self.component_weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_balanced(&self) -> bool {
        le_tol(self.max_component_weight(), 2.0 * self.total_weight / 3.0)
    }
}

/// For each component of `G - removed`, the total weight of faces of `G` whose
/// boundary lies entirely inside that component.
pub fn component_face_weights(g: &PlaneGraph, w: &[f64], removed: &[bool]) -> Vec<f64> {
    let labels = g.components_without(removed);
    let mut out = vec![0.0; labels.count()];
    for f in 0..g.face_count() {
        let vs = g.face_vertices(f);
        let Some(&first) = vs.first() else { continue };
        let Some(c) = labels.component_of(first) else { continue };
        if vs.iter().all(|&v| labels.label[v] == c) {
            out[c] += w[f];
        }
    }
    out
}

/// BFS tree of a connected plane graph and the dual spanning tree of the
/// remaining edges.
pub(crate) struct TreeCotree {
    pub depth: Vec<usize>,
    /// Binary lifting table over the vertex tree; `up[0]` is the parent.
    up: Vec<Vec<usize>>,
    pub tree_edge: Vec<bool>,
    /// Parent face in the dual tree (the root face points to itself).
    face_parent: Vec<usize>,
    /// Edge to the parent face.
    pub face_parent_edge: Vec<usize>,
    /// Faces in BFS order from the root face.
    pub face_order: Vec<FaceId>,
    face_depth: Vec<usize>,
    face_up: Vec<Vec<usize>>,
}

fn lifting(parent: &[usize]) -> Vec<Vec<usize>> {
    let n = parent.len();
    let mut levels = 1;
    while (1usize << levels) < n.max(2) {
        levels += 1;
    }
    let mut up = vec![parent.to_vec()];
    for j in 1..levels {
        let prev = &up[j - 1];
        let next: Vec<usize> = (0..n).map(|v| prev[prev[v]]).collect();
        up.push(next);
    }
    up
}

fn lca(up: &[Vec<usize>], depth: &[usize], mut a: usize, mut b: usize) -> usize {
    if depth[a] < depth[b] {
        core::mem::swap(&mut a, &mut b);
    }
    let mut diff = depth[a] - depth[b];
    let mut j = 0;
    while diff > 0 {
        if diff & 1 == 1 {
            a = up[j][a];
        }
        diff >>= 1;
        j += 1;
    }
    if a == b {
        return a;
    }
    for j in (0..up.len()).rev() {
        if up[j][a] != up[j][b] {
            a = up[j][a];
            b = up[j][b];
        }
    }
    up[0][a]
}

fn bfs(g: &PlaneGraph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let mut dist = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    parent[root] = root;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if dist[u] == NONE {
                dist[u] = dist[v] + 1;
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    (dist, parent)
}

fn farthest(dist: &[usize]) -> usize {
    let mut best = 0;
    for (v, &d) in dist.iter().enumerate() {
        if d != NONE && d > dist[best] {
            best = v;
        }
    }
    best
}

/// Middle vertex of a longest BFS path found by two sweeps.
fn pseudo_centre(g: &PlaneGraph) -> usize {
    let (d0, _) = bfs(g, 0);
    let a = farthest(&d0);
    let (da, pa) = bfs(g, a);
    let b = farthest(&da);
    let mut v = b;
    for _ in 0..da[b] / 2 {
        v = pa[v];
    }
    v
}

impl TreeCotree {
    pub fn new(g: &PlaneGraph) -> Self {
        let n = g.vertex_count();
        let root = pseudo_centre(g);
        let (depth, parent) = bfs(g, root);
        let mut tree_edge = vec![false; g.edge_count()];
        for v in 0..n {
            if v != root {
                let d = g.dart_between(v, parent[v]).expect("tree edge");
                tree_edge[d.edge()] = true;
            }
        }
        let fcount = g.face_count();
        let mut face_parent = vec![NONE; fcount];
        let mut face_parent_edge = vec![NONE; fcount];
        let mut face_depth = vec![0; fcount];
        let mut face_order = Vec::with_capacity(fcount);
        face_parent[0] = 0;
        face_order.push(0);
        let mut head = 0;
        while head < face_order.len() {
            let f = face_order[head];
            head += 1;
            for d in g.face(f).darts() {
                if tree_edge[d.edge()] {
                    continue;
                }
                let h = g.dart_face(d.twin());
                if face_parent[h] == NONE {
                    face_parent[h] = f;
                    face_parent_edge[h] = d.edge();
                    face_depth[h] = face_depth[f] + 1;
                    face_order.push(h);
                }
            }
        }
        let up = lifting(&parent);
        let face_up = lifting(&face_parent);
        TreeCotree { depth, up, tree_edge, face_parent, face_parent_edge, face_order, face_depth, face_up }
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        lca(&self.up, &self.depth, a, b)
    }

    pub fn face_lca(&self, a: FaceId, b: FaceId) -> FaceId {
        lca(&self.face_up, &self.face_depth, a, b)
    }

    pub fn parent(&self, v: usize) -> usize {
        self.up[0][v]
    }

    /// Sums a per-face quantity over dual subtrees.
    pub fn subtree_sums(&self, values: &[f64]) -> Vec<f64> {
        let mut sum = values.to_vec();
        for &f in self.face_order.iter().skip(1).rev() {
            let p = self.face_parent[f];
            sum[p] += sum[f];
        }
        sum
    }

    /// The face on the far side (from the dual root) of non-tree edge `e`.
    pub fn child_face(&self, g: &PlaneGraph, e: usize) -> FaceId {
        let a = g.dart_face(Dart(2 * e));
        if self.face_parent_edge[a] == e && self.face_parent[a] != a {
            a
        } else {
            g.dart_face(Dart(2 * e + 1))
        }
    }

    pub fn cycle_len(&self, g: &PlaneGraph, e: usize) -> usize {
        let (u, v) = (g.origin(Dart(2 * e)), g.head(Dart(2 * e)));
        let l = self.lca(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[l] + 1
    }

    /// Vertices of the fundamental cycle of `e`, in cyclic order.
    pub fn cycle(&self, g: &PlaneGraph, e: usize) -> Vec<usize> {
        let (u, v) = (g.origin(Dart(2 * e)), g.head(Dart(2 * e)));
        let l = self.lca(u, v);
        let mut out = Vec::new();
        let mut x = u;
        while x != l {
            out.push(x);
            x = self.parent(x);
        }
        out.push(l);
        let mut tail = Vec::new();
        let mut y = v;
        while y != l {
            tail.push(y);
            y = self.parent(y);
        }
        out.extend(tail.into_iter().rev());
        out
    }
}

fn triangle(g: &PlaneGraph, f: FaceId) -> Vec<usize> {
    g.face(f).darts().map(|d| g.origin(d)).collect()
}

fn finish(g: &PlaneGraph, w: &[f64], vertices: Vec<usize>, steps: Vec<NooseStep>) -> NooseSeparator {
    let mut removed = vec![false; g.vertex_count()];
    for &v in &vertices {
        removed[v] = true;
    }
    let component_weights = component_face_weights(g, w, &removed);
    NooseSeparator { noose: Noose { vertices, steps }, total_weight: w.iter().sum(), component_weights }
}

/// Cycle `λ` of a triangulation such that every component `C` of `G - V(λ)`
/// has `w(F(C) ∩ F(G)) ≤ ⅔ N`.
///
/// If some face carries at least a third of the weight its triangle is
/// returned. Otherwise the cycle is the shortest balanced fundamental cycle of
/// a BFS tree rooted near the centre; if none is balanced, the fundamental
/// cycle at the weighted centroid of the dual tree is used.
pub fn balanced_cycle_separator(g: &PlaneGraph, w: &FaceWeighting) -> Result<NooseSeparator> {
    if g.vertex_count() < 4 {
        return Err(Error::NotTriangulation(alloc::format!("{} vertices, need at least 4", g.vertex_count())));
    }
    if !is_triangulation(g) {
        return Err(Error::NotTriangulation("some face is not a triangle".into()));
    }
    if w.len() != g.face_count() {
        return Err(Error::InvalidWeighting(alloc::format!(
            "{} weights for {} faces",
            w.len(),
            g.face_count()
        )));
    }
    let weights = w.as_slice();
    let total = w.total();
    let mut heavy = 0;
    for (f, &x) in weights.iter().enumerate() {
        if x > weights[heavy] {
            heavy = f;
        }
    }
    if 3.0 * weights[heavy] >= total {
        let tri = triangle(g, heavy);
        return Ok(finish(g, weights, tri, vec![NooseStep::Edge; 3]));
    }

    let tc = TreeCotree::new(g);
    let sub = tc.subtree_sums(weights);
    let limit = 2.0 * total / 3.0;
    let mut best: Option<(usize, usize)> = None;
    for e in 0..g.edge_count() {
        if tc.tree_edge[e] {
            continue;
        }
        let inside = sub[tc.child_face(g, e)];
        if inside <= limit && total - inside <= limit {
            let len = tc.cycle_len(g, e);
            if best.map_or(true, |(l, _)| len < l) {
                best = Some((len, e));
            }
        }
    }
    let e = match best {
        Some((_, e)) => e,
        None => centroid_edge(g, &tc, &sub, total),
    };
    let cycle = tc.cycle(g, e);
    let k = cycle.len();
    let sep = finish(g, weights, cycle, vec![NooseStep::Edge; k]);
    if !sep.is_balanced() {
        return Err(Error::Structure("fundamental cycle failed the balance re-check".into()));
    }
    Ok(sep)
}

/// Non-tree edge from the dual-tree centroid towards its heaviest side.
///
/// At the centroid every side weighs at most N/2, and the heaviest of its (at
/// most three) sides carries at least a third of what the other sides hold,
/// so both sides of that edge's cycle stay within ⅔ N once the faces touching
/// the cycle are discounted.
fn centroid_edge(g: &PlaneGraph, tc: &TreeCotree, sub: &[f64], total: f64) -> usize {
    let mut best = (f64::INFINITY, NONE);
    for &f in &tc.face_order {
        let mut sides: Vec<(f64, usize)> = Vec::with_capacity(3);
        if f != 0 {
            sides.push((total - sub[f], tc.face_parent_edge[f]));
        }
        for d in g.face(f).darts() {
            let e = d.edge();
            let h = g.dart_face(d.twin());
            if !tc.tree_edge[e] && h != 0 && tc.face_parent[h] == f && tc.face_parent_edge[h] == e {
                sides.push((sub[h], e));
            }
        }
        let mut heaviest = sides[0];
        for &s in &sides[1..] {
            if s.0 > heaviest.0 {
                heaviest = s;
            }
        }
        if heaviest.0 < best.0 {
            best = heaviest;
        }
    }
    best.1
}

/// Balanced noose of an arbitrary plane graph: triangulate, split each face's
/// weight evenly over its pieces, cut with a balanced cycle and read the cycle
/// back as a noose of `g`.
pub fn noose_separator(g: &PlaneGraph, w: &FaceWeighting) -> Result<NooseSeparator> {
    let n = g.vertex_count();
    if w.len() != g.face_count() {
        return Err(Error::InvalidWeighting(alloc::format!("{} weights for {} faces", w.len(), g.face_count())));
    }
    if n == 0 {
        return Err(Error::TooFewVertices { needed: 1, got: 0 });
    }
    if n <= 3 {
        let vertices: Vec<usize> = (0..n).collect();
        let steps = (0..n)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                if n == 3 && g.has_edge(a, b) || n == 2 && i == 0 && g.has_edge(a, b) {
                    NooseStep::Edge
                } else {
                    let fa = g.incident_faces_unchecked(a);
                    let fb = g.incident_faces_unchecked(b);
                    NooseStep::Face(*fa.iter().find(|f| fb.contains(f)).expect("common face"))
                }
            })
            .collect();
        return Ok(finish(g, w.as_slice(), vertices, steps));
    }
    let tri = triangulate(g)?;
    let split = FaceWeighting::new(tri.split_weights(w.as_slice()))?;
    let cyc = balanced_cycle_separator(&tri.graph, &split)?;
    let h = &tri.graph;
    let vertices = cyc.noose.vertices;
    let k = vertices.len();
    let steps = (0..k)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if g.has_edge(a, b) {
                NooseStep::Edge
            } else {
                let d = h.dart_between(a, b).expect("cycle edge");
                NooseStep::Face(tri.face_origin[h.dart_face(d)])
            }
        })
        .collect();
    let sep = finish(g, w.as_slice(), vertices, steps);
    if !sep.is_balanced() {
        return Err(Error::Structure("noose failed the balance re-check".into()));
    }
    Ok(sep)
}
