use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::planar::{Corner, Darts, FaceId, PlaneGraph, NONE};

/// A triangulation of a plane graph plus the face correspondence.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: PlaneGraph,
    /// For each face `f` of the input, the faces of `graph` lying inside `f`.
    pub face_map: Vec<Vec<FaceId>>,
    /// For each face of `graph`, the input face containing it.
    pub face_origin: Vec<FaceId>,
}

impl Triangulation {
    /// Spreads each input face's weight evenly over the faces inside it.
    pub fn split_weights(&self, weights: &[f64]) -> Vec<f64> {
        self.face_origin.iter().map(|&f| weights[f] / self.face_map[f].len() as f64).collect()
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

struct Builder {
    darts: Darts,
    tags: Vec<FaceId>,
    edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn connect(&mut self, a: Corner, b: Corner, tag: FaceId) -> usize {
        let x = self.darts.add_edge(a, b);
        self.tags.push(tag);
        self.tags.push(tag);
        self.edges.insert(key(self.darts.origin[x], self.darts.origin[x ^ 1]));
        x
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&key(u, v))
    }

    /// Cuts a single-walk face into triangles.
    fn cut(&mut self, walk: Vec<usize>, tag: FaceId, work: &mut Vec<Vec<usize>>) -> Result<()> {
        let len0 = walk.len();
        let mut slot = walk;
        let mut nxt: Vec<usize> = (0..len0).map(|i| (i + 1) % len0).collect();
        let mut prv: Vec<usize> = (0..len0).map(|i| (i + len0 - 1) % len0).collect();
        let mut len = len0;
        let mut p = 0;
        let mut failures = 0;
        while len > 3 {
            if failures >= len {
                let start = p;
                let mut cur = Vec::with_capacity(len);
                let mut i = start;
                loop {
                    cur.push(slot[i]);
                    i = nxt[i];
                    if i == start {
                        break;
                    }
                }
                return self.split(cur, tag, work);
            }
            let (a, b) = (slot[p], slot[nxt[p]]);
            let prev = slot[prv[p]];
            let (u, v) = (self.darts.origin[a], self.darts.head(b));
            if u != v && !self.has(u, v) {
                let x = self.connect(Corner::After(prev ^ 1), Corner::After(b ^ 1), tag);
                let gone = nxt[p];
                slot[p] = x;
                nxt[p] = nxt[gone];
                prv[nxt[gone]] = p;
                len -= 1;
                p = prv[p];
                failures = 0;
            } else {
                p = nxt[p];
                failures += 1;
            }
        }
        Ok(())
    }

    /// Splits a walk with a chord between two non-adjacent corners.
    fn split(&mut self, cur: Vec<usize>, tag: FaceId, work: &mut Vec<Vec<usize>>) -> Result<()> {
        let len = cur.len();
        for i in 0..len {
            let u = self.darts.origin[cur[i]];
            for gap in 2..=len - 2 {
                let j = (i + gap) % len;
                let v = self.darts.origin[cur[j]];
                if u == v || self.has(u, v) {
                    continue;
                }
                let before_i = cur[(i + len - 1) % len];
                let before_j = cur[(j + len - 1) % len];
                let x = self.connect(Corner::After(before_i ^ 1), Corner::After(before_j ^ 1), tag);
                let mut a = Vec::with_capacity(len - gap + 1);
                let mut k = j;
                while k != i {
                    a.push(cur[k]);
                    k = (k + 1) % len;
                }
                a.push(x);
                let mut b = Vec::with_capacity(gap + 1);
                let mut k = i;
                while k != j {
                    b.push(cur[k]);
                    k = (k + 1) % len;
                }
                b.push(x ^ 1);
                for w in [a, b] {
                    if w.len() > 3 {
                        work.push(w);
                    }
                }
                return Ok(());
            }
        }
        Err(Error::Structure(alloc::format!("face walk of length {len} has no admissible chord")))
    }
}

/// Adds edges until every face is a triangle, keeping the original rotations.
///
/// Faces bounded by several walks are first made connected by joining the
/// walks (and isolated vertices) to one anchor corner; every remaining face
/// longer than three is then cut by ears, with an arbitrary admissible chord
/// whenever no ear can be added without creating a parallel edge.
pub fn triangulate(g: &PlaneGraph) -> Result<Triangulation> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: n });
    }
    let mut b = Builder {
        darts: g.darts().clone(),
        tags: (0..g.dart_count()).map(|d| g.dart_face(crate::planar::Dart(d))).collect(),
        edges: g.edges().map(|(u, v)| key(u, v)).collect(),
    };
    for (f, face) in g.faces().iter().enumerate() {
        if face.is_disk() {
            continue;
        }
        let mut isolated = face.isolated.iter().copied();
        let anchor = match face.walks.first() {
            Some(w) => w[0].0,
            None => {
                let a = isolated.next().expect("a face has a walk or a vertex");
                match isolated.next() {
                    Some(v) => b.connect(Corner::Isolated(a), Corner::Isolated(v), f),
                    None => continue,
                }
            }
        };
        for w in face.walks.iter().skip(1) {
            b.connect(Corner::After(anchor ^ 1), Corner::After(w[0].0 ^ 1), f);
        }
        for v in isolated {
            b.connect(Corner::After(anchor ^ 1), Corner::Isolated(v), f);
        }
    }
    let (walks, _) = b.darts.trace_walks();
    let mut work: Vec<Vec<usize>> =
        walks.into_iter().filter(|w| w.len() > 3).map(|w| w.into_iter().map(|d| d.0).collect()).collect();
    while let Some(walk) = work.pop() {
        let tag = b.tags[walk[0]];
        b.cut(walk, tag, &mut work)?;
    }
    let Builder { darts, tags, .. } = b;
    let graph = PlaneGraph::from_connected_darts(darts, g.coords().map(<[_]>::to_vec));
    let mut face_map = vec![Vec::new(); g.face_count()];
    let mut face_origin = vec![NONE; graph.face_count()];
    for (f, face) in graph.faces().iter().enumerate() {
        debug_assert!(face.is_disk() && face.boundary_len() == 3);
        let tag = tags[face.walks[0][0].0];
        debug_assert!(face.darts().all(|d| tags[d.0] == tag));
        face_origin[f] = tag;
        face_map[tag].push(f);
    }
    Ok(Triangulation { graph, face_map, face_origin })
}

/// Whether `g` is a simple plane triangulation (connected, every face a triangle).
pub fn is_triangulation(g: &PlaneGraph) -> bool {
    let n = g.vertex_count();
    n >= 3
        && g.edge_count() == 3 * n - 6
        && g.faces().iter().all(|f| f.is_disk() && f.boundary_len() == 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fan_apex, gen_grid, gen_random_triangulation};

    fn check(g: &PlaneGraph) -> Triangulation {
        let t = triangulate(g).unwrap();
        let h = &t.graph;
        assert!(h.validate().is_ok());
        assert!(is_triangulation(h));
        for v in 0..g.vertex_count() {
            let sub: Vec<usize> = h.neighbors(v).filter(|&u| g.has_edge(u, v)).collect();
            let orig: Vec<usize> = g.neighbors(v).collect();
            if orig.is_empty() {
                continue;
            }
            let s = sub.iter().position(|&u| u == orig[0]).unwrap();
            let rotated: Vec<usize> = sub[s..].iter().chain(&sub[..s]).copied().collect();
            assert_eq!(rotated, orig, "rotation of {v}");
        }
        let mut seen = vec![false; h.face_count()];
        for fs in &t.face_map {
            assert!(!fs.is_empty());
            for &f in fs {
                assert!(!seen[f]);
                seen[f] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        t
    }

    #[test]
    fn triangle_is_unchanged() {
        let g = PlaneGraph::from_rotations(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let t = check(&g);
        assert_eq!(t.graph, g);
    }

    #[test]
    fn four_cycle_becomes_k4() {
        let g = gen_grid(2);
        let t = check(&g);
        assert_eq!(t.graph.edge_count(), 6);
        assert_eq!(t.face_map.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn two_disjoint_edges_become_k4() {
        let g = PlaneGraph::from_rotations(vec![vec![1], vec![0], vec![3], vec![2]]).unwrap();
        assert_eq!(g.face_count(), 1);
        let t = check(&g);
        assert_eq!(t.graph.edge_count(), 6);
        assert_eq!(t.face_map[0].len(), 4);
    }

    #[test]
    fn trees_isolated_vertices_and_families() {
        check(&PlaneGraph::empty(3));
        check(&PlaneGraph::empty(7));
        let star = PlaneGraph::from_rotations(vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]]).unwrap();
        check(&star);
        let path: Vec<Vec<usize>> =
            (0..9usize).map(|v| [v.checked_sub(1), (v < 8).then_some(v + 1)].into_iter().flatten().collect()).collect();
        check(&PlaneGraph::from_rotations(path).unwrap());
        check(&gen_grid(5));
        check(&gen_fan_apex(3));
        let g = gen_random_triangulation(60, 3);
        let sub = g.induced_subgraph(&(0..60).filter(|v| v % 3 != 0).collect::<Vec<_>>()).unwrap();
        check(&sub.graph);
    }

    #[test]
    fn too_small() {
        assert!(matches!(triangulate(&PlaneGraph::empty(2)), Err(Error::TooFewVertices { .. })));
    }
}
