//! Plane graphs stored as rotation systems.
//!
//! Every undirected edge `e` owns the two darts `2e` and `2e + 1`; the twin of a
//! dart flips its low bit. The rotation at a vertex lists its outgoing darts in
//! clockwise order, and faces are traced with `next(d) = rot_next(twin(d))`.
//!
//! A face of a disconnected plane graph can be bounded by several closed walks
//! (one per incident component) and can contain isolated vertices, so [`Face`]
//! carries both. Graphs built from bare rotation lists have no nesting
//! information; for those, every component's longest walk (ties: smallest
//! first dart) is merged into one shared outer face together with all isolated
//! vertices. Induced subgraphs inherit the exact face structure of their parent.
//!
//! The empty graph has no faces. A single vertex has one face and a single edge
//! has one face with a walk of length 2; the tracing rule needs no special case.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

pub type FaceId = usize;

pub(crate) const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> usize {
        self.0 >> 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum Violation {
    #[error("vertex {vertex} lists out-of-range neighbour {neighbour}")]
    VertexOutOfRange { vertex: usize, neighbour: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("dart multiplicity: {vertex} -> {neighbour} appears more than once")]
    DartMultiplicity { vertex: usize, neighbour: usize },
    #[error("rotation is not involutive: {vertex} lists {neighbour} but not the reverse")]
    NotInvolutive { vertex: usize, neighbour: usize },
    #[error("rotation of vertex {vertex} is not a cyclic permutation of its darts")]
    Rotation { vertex: usize },
    #[error("dart {dart} is not on exactly one face walk")]
    FaceCover { dart: usize },
    #[error(
        "Euler relation fails on the component of vertex {root}: \
         v={vertices} e={edges} walks={walks}"
    )]
    Euler { root: usize, vertices: usize, edges: usize, walks: usize },
    #[error("face count breaks v - e + f = 1 + c: v={vertices} e={edges} f={faces} c={components}")]
    FaceCount { vertices: usize, edges: usize, faces: usize, components: usize },
    #[error("coordinates given for {got} vertices, expected {expected}")]
    Coordinates { expected: usize, got: usize },
}

/// A face: its boundary walks and the isolated vertices lying inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Closed walks, each starting at its smallest dart.
    pub walks: Vec<Vec<Dart>>,
    pub isolated: Vec<usize>,
}

impl Face {
    pub fn boundary_len(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }

    /// One walk and nothing floating inside.
    pub fn is_disk(&self) -> bool {
        self.walks.len() == 1 && self.isolated.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.walks.iter().flatten().copied()
    }
}

/// Raw dart arrays shared by the parser, induced subgraphs and the triangulator.
#[derive(Clone, Debug)]
pub(crate) struct Darts {
    pub n: usize,
    pub origin: Vec<usize>,
    pub rot_next: Vec<usize>,
    pub rot_prev: Vec<usize>,
    pub first: Vec<usize>,
}

/// Insertion point for a new dart: right after an existing dart in clockwise
/// order around its origin, or as the only dart of an isolated vertex.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Corner {
    After(usize),
    Isolated(usize),
}

impl Darts {
    pub fn with_vertices(n: usize) -> Self {
        Darts { n, origin: Vec::new(), rot_next: Vec::new(), rot_prev: Vec::new(), first: vec![NONE; n] }
    }

    fn from_rotations(rotations: &[Vec<usize>]) -> Self {
        let n = rotations.len();
        // (owner, neighbour, dart) for the reverse darts, resolved after sorting
        let mut pending: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut dart_at: Vec<Vec<usize>> = rotations.iter().map(|r| vec![NONE; r.len()]).collect();
        let mut edges = 0usize;
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                if v < u {
                    dart_at[v][i] = 2 * edges;
                    pending[u].push((v, 2 * edges + 1));
                    edges += 1;
                }
            }
        }
        for (u, rot) in rotations.iter().enumerate() {
            let p = &mut pending[u];
            p.sort_unstable();
            for (i, &v) in rot.iter().enumerate() {
                if v < u {
                    let k = p.binary_search_by(|probe| probe.0.cmp(&v)).expect("involution checked");
                    dart_at[u][i] = p[k].1;
                }
            }
        }
        let m2 = 2 * edges;
        let mut darts = Darts {
            n,
            origin: vec![0; m2],
            rot_next: vec![0; m2],
            rot_prev: vec![0; m2],
            first: vec![NONE; n],
        };
        for (v, ds) in dart_at.iter().enumerate() {
            let k = ds.len();
            if k == 0 {
                continue;
            }
            darts.first[v] = ds[0];
            for i in 0..k {
                let d = ds[i];
                darts.origin[d] = v;
                darts.rot_next[d] = ds[(i + 1) % k];
                darts.rot_prev[d] = ds[(i + k - 1) % k];
            }
        }
        darts
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    #[inline]
    pub fn face_next(&self, d: usize) -> usize {
        self.rot_next[d ^ 1]
    }

    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.origin[d ^ 1]
    }

    pub fn trace_walks(&self) -> (Vec<Vec<Dart>>, Vec<usize>) {
        let m2 = self.dart_count();
        let mut dart_walk = vec![NONE; m2];
        let mut walks = Vec::new();
        for s in 0..m2 {
            if dart_walk[s] != NONE {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let mut d = s;
            loop {
                dart_walk[d] = id;
                walk.push(Dart(d));
                d = self.face_next(d);
                if d == s {
                    break;
                }
            }
            walks.push(walk);
        }
        (walks, dart_walk)
    }

    fn push_dart(&mut self, origin: usize) -> usize {
        let d = self.origin.len();
        self.origin.push(origin);
        self.rot_next.push(d);
        self.rot_prev.push(d);
        d
    }

    fn place(&mut self, d: usize, corner: Corner) {
        match corner {
            Corner::Isolated(v) => {
                debug_assert_eq!(self.first[v], NONE);
                self.first[v] = d;
            }
            Corner::After(a) => {
                let b = self.rot_next[a];
                self.rot_next[a] = d;
                self.rot_prev[d] = a;
                self.rot_next[d] = b;
                self.rot_prev[b] = d;
            }
        }
    }

    /// Adds an edge between two corners; returns the dart leaving the first one.
    pub fn add_edge(&mut self, a: Corner, b: Corner) -> usize {
        let va = match a {
            Corner::After(d) => self.origin[d],
            Corner::Isolated(v) => v,
        };
        let vb = match b {
            Corner::After(d) => self.origin[d],
            Corner::Isolated(v) => v,
        };
        let d = self.push_dart(va);
        let t = self.push_dart(vb);
        debug_assert_eq!(d ^ 1, t);
        self.place(d, a);
        self.place(t, b);
        d
    }

    pub fn rotation(&self, v: usize) -> RotationIter<'_> {
        RotationIter { darts: self, start: self.first[v], cur: self.first[v] }
    }

    fn edge_components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for e in 0..self.dart_count() / 2 {
            uf.union(self.origin[2 * e], self.origin[2 * e + 1]);
        }
        uf
    }
}

pub struct RotationIter<'a> {
    darts: &'a Darts,
    start: usize,
    cur: usize,
}

impl Iterator for RotationIter<'_> {
    type Item = Dart;

    fn next(&mut self) -> Option<Dart> {
        if self.cur == NONE {
            return None;
        }
        let d = self.cur;
        let nxt = self.darts.rot_next[d];
        self.cur = if nxt == self.start { NONE } else { nxt };
        Some(Dart(d))
    }
}

/// A plane graph: a rotation system together with its faces.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    darts: Darts,
    degree: Vec<usize>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    /// Containing face of each isolated vertex, `NONE` otherwise.
    vertex_face: Vec<FaceId>,
    coords: Option<Vec<[f64; 2]>>,
}

impl PartialEq for PlaneGraph {
    /// Dart-for-dart equality of the embedding and faces; coordinates are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.darts.n == other.darts.n
            && self.darts.origin == other.darts.origin
            && self.darts.rot_next == other.darts.rot_next
            && self.darts.first == other.darts.first
            && self.faces == other.faces
    }
}

impl PlaneGraph {
    pub fn empty(n: usize) -> Self {
        let darts = Darts::with_vertices(n);
        let (faces, vertex_face) = root_faces(&darts, Vec::new());
        Self::assemble(darts, faces, vertex_face, None)
    }

    /// Builds a plane graph from clockwise neighbour rotations.
    ///
    /// Rejects loops, repeated neighbours, non-symmetric neighbour lists and
    /// rotation systems whose traced faces break Euler's relation.
    pub fn from_rotations(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let violations = validate_rotations(&rotations);
        if !violations.is_empty() {
            return Err(Error::InvalidEmbedding(violations));
        }
        let darts = Darts::from_rotations(&rotations);
        let (walks, _) = darts.trace_walks();
        let (faces, vertex_face) = root_faces(&darts, walks);
        Ok(Self::assemble(darts, faces, vertex_face, None))
    }

    pub fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Result<Self> {
        if coords.len() != self.vertex_count() {
            return Err(Error::InvalidEmbedding(vec![Violation::Coordinates {
                expected: self.vertex_count(),
                got: coords.len(),
            }]));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub(crate) fn assemble(
        darts: Darts,
        faces: Vec<Face>,
        vertex_face: Vec<FaceId>,
        coords: Option<Vec<[f64; 2]>>,
    ) -> Self {
        let mut dart_face = vec![NONE; darts.dart_count()];
        for (f, face) in faces.iter().enumerate() {
            for d in face.darts() {
                dart_face[d.0] = f;
            }
        }
        let degree = (0..darts.n).map(|v| darts.rotation(v).count()).collect();
        PlaneGraph { darts, degree, faces, dart_face, vertex_face, coords }
    }

    /// Builds a connected graph whose faces are exactly its traced walks.
    pub(crate) fn from_connected_darts(darts: Darts, coords: Option<Vec<[f64; 2]>>) -> Self {
        let (walks, _) = darts.trace_walks();
        let (faces, vertex_face) = root_faces(&darts, walks);
        Self::assemble(darts, faces, vertex_face, coords)
    }

    pub(crate) fn darts(&self) -> &Darts {
        &self.darts
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.darts.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.darts.dart_count() / 2
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.darts.dart_count()
    }

    #[inline]
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> usize {
        self.darts.origin[d.0]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.darts.head(d.0)
    }

    #[inline]
    pub fn rot_next(&self, d: Dart) -> Dart {
        Dart(self.darts.rot_next[d.0])
    }

    #[inline]
    pub fn rot_prev(&self, d: Dart) -> Dart {
        Dart(self.darts.rot_prev[d.0])
    }

    /// Successor of `d` on its face walk.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        Dart(self.darts.face_next(d.0))
    }

    /// Outgoing darts of `v` in clockwise order.
    pub fn rotation(&self, v: usize) -> RotationIter<'_> {
        self.darts.rotation(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation(v).map(move |d| self.head(d))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree[u] <= self.degree[v] { (u, v) } else { (v, u) };
        self.neighbors(a).any(|x| x == b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.edge_count()).map(move |e| (self.darts.origin[2 * e], self.darts.origin[2 * e + 1]))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    #[inline]
    pub fn dart_face(&self, d: Dart) -> FaceId {
        self.dart_face[d.0]
    }

    /// Face containing an isolated vertex.
    pub fn isolated_face(&self, v: usize) -> Option<FaceId> {
        let f = self.vertex_face[v];
        (f != NONE).then_some(f)
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    /// Clockwise neighbour lists, the inverse of [`PlaneGraph::from_rotations`].
    pub fn to_rotations(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count()).map(|v| self.neighbors(v).collect()).collect()
    }

    /// All faces, in id order.
    pub fn trace_faces(&self) -> &[Face] {
        &self.faces
    }

    /// Faces whose boundary visits `v` (or the face containing `v` if isolated).
    pub fn incident_faces(&self, v: usize) -> Result<Vec<FaceId>> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.incident_faces_unchecked(v))
    }

    pub(crate) fn incident_faces_unchecked(&self, v: usize) -> Vec<FaceId> {
        if let Some(f) = self.isolated_face(v) {
            return vec![f];
        }
        let mut fs: Vec<FaceId> = self.rotation(v).map(|d| self.dart_face(d)).collect();
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    /// Vertices on the boundary of face `f`, including isolated ones; sorted.
    pub fn face_vertices(&self, f: FaceId) -> Vec<usize> {
        let face = &self.faces[f];
        let mut vs: Vec<usize> = face.darts().map(|d| self.origin(d)).collect();
        vs.extend_from_slice(&face.isolated);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&vec![false; self.vertex_count()]).into_parts()
    }

    /// Components of `G - removed`.
    pub fn components_without(&self, removed: &[bool]) -> ComponentLabels {
        let n = self.vertex_count();
        let mut label = vec![NONE; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if removed[s] || label[s] != NONE {
                continue;
            }
            let c = sizes.len();
            label[s] = c;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for u in self.neighbors(v) {
                    if !removed[u] && label[u] == NONE {
                        label[u] = c;
                        queue.push_back(u);
                    }
                }
            }
            sizes.push(size);
        }
        ComponentLabels { label, sizes }
    }

    /// Checks the rotation system, simplicity, face partition and Euler's relation.
    pub fn validate(&self) -> core::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let d = &self.darts;
        let m2 = d.dart_count();
        let mut seen = vec![false; m2];
        for v in 0..d.n {
            let mut count = 0;
            let mut nbrs = Vec::new();
            let mut bad = false;
            for dart in d.rotation(v) {
                let x = dart.0;
                if x >= m2 || seen[x] || d.origin[x] != v || d.rot_prev[d.rot_next[x]] != x {
                    bad = true;
                    break;
                }
                seen[x] = true;
                count += 1;
                nbrs.push(d.head(x));
                if count > m2 {
                    bad = true;
                    break;
                }
            }
            if bad || count != self.degree[v] {
                out.push(Violation::Rotation { vertex: v });
                continue;
            }
            if nbrs.contains(&v) {
                out.push(Violation::Loop { vertex: v });
            }
            nbrs.sort_unstable();
            for w in nbrs.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::DartMultiplicity { vertex: v, neighbour: w[0] });
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            out.push(Violation::Rotation { vertex: d.origin[x] });
        }
        if !out.is_empty() {
            return Err(out);
        }

        let mut cover = vec![0u32; m2];
        for (f, face) in self.faces.iter().enumerate() {
            for walk in &face.walks {
                for (i, &dart) in walk.iter().enumerate() {
                    cover[dart.0] += 1;
                    let next = walk[(i + 1) % walk.len()];
                    if d.face_next(dart.0) != next.0 || self.dart_face[dart.0] != f {
                        out.push(Violation::FaceCover { dart: dart.0 });
                    }
                }
            }
        }
        for (x, &c) in cover.iter().enumerate() {
            if c != 1 {
                out.push(Violation::FaceCover { dart: x });
            }
        }
        if !out.is_empty() {
            return Err(out);
        }

        let walks: Vec<Vec<Dart>> = self.faces.iter().flat_map(|f| f.walks.iter().cloned()).collect();
        out.extend(euler_violations(d, &walks));
        if d.n > 0 {
            let c = self.components().len();
            let (v, e, f) = (d.n, self.edge_count(), self.faces.len());
            if v + f != 1 + c + e {
                out.push(Violation::FaceCount { vertices: v, edges: e, faces: f, components: c });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// The subgraph induced by `keep`, with the embedding and faces it inherits.
    ///
    /// Child vertices are numbered in increasing order of their parent ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<InducedSubgraph> {
        let n = self.vertex_count();
        let mut from_parent = vec![NONE; n];
        let mut to_parent: Vec<usize> = Vec::with_capacity(keep.len());
        for &v in keep {
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            from_parent[v] = 0;
        }
        for v in 0..n {
            if from_parent[v] != NONE {
                from_parent[v] = to_parent.len();
                to_parent.push(v);
            }
        }
        Ok(self.induced_from_map(from_parent, to_parent))
    }

    fn induced_from_map(&self, from_parent: Vec<usize>, to_parent: Vec<usize>) -> InducedSubgraph {
        let pd = &self.darts;
        let k = to_parent.len();
        let mut child_dart = vec![NONE; pd.dart_count()];
        let mut cd = Darts::with_vertices(k);
        for e in 0..self.edge_count() {
            let (a, b) = (pd.origin[2 * e], pd.origin[2 * e + 1]);
            if from_parent[a] != NONE && from_parent[b] != NONE {
                let x = cd.origin.len();
                child_dart[2 * e] = x;
                child_dart[2 * e + 1] = x + 1;
                cd.origin.push(from_parent[a]);
                cd.origin.push(from_parent[b]);
            }
        }
        cd.rot_next = vec![NONE; cd.origin.len()];
        cd.rot_prev = vec![NONE; cd.origin.len()];
        let mut ring = Vec::new();
        for (c, &v) in to_parent.iter().enumerate() {
            ring.clear();
            ring.extend(pd.rotation(v).map(|x| child_dart[x.0]).filter(|&x| x != NONE));
            if let Some(&f) = ring.first() {
                cd.first[c] = f;
                for i in 0..ring.len() {
                    cd.rot_next[ring[i]] = ring[(i + 1) % ring.len()];
                    cd.rot_prev[ring[(i + 1) % ring.len()]] = ring[i];
                }
            }
        }

        // faces of the child are the classes of parent faces glued across removed edges
        let pf = self.face_count();
        let mut uf = UnionFind::new(pf);
        for e in 0..self.edge_count() {
            if child_dart[2 * e] == NONE {
                uf.union(self.dart_face[2 * e], self.dart_face[2 * e + 1]);
            }
        }
        let (walks, _) = cd.trace_walks();
        let parent_of_child_dart = |x: usize| -> usize {
            // child dart x of edge i corresponds to the parent dart with the same orientation
            let pe = {
                let (a, b) = (to_parent[cd.origin[x]], to_parent[cd.origin[x ^ 1]]);
                self.find_dart(a, b)
            };
            pe
        };
        let mut class_face = vec![NONE; pf];
        let mut faces: Vec<Face> = Vec::new();
        for walk in walks {
            let pdart = parent_of_child_dart(walk[0].0);
            let cls = uf.find(self.dart_face[pdart]);
            if class_face[cls] == NONE {
                class_face[cls] = faces.len();
                faces.push(Face { walks: Vec::new(), isolated: Vec::new() });
            }
            faces[class_face[cls]].walks.push(walk);
        }
        let mut vertex_face = vec![NONE; k];
        for c in 0..k {
            if cd.first[c] != NONE {
                continue;
            }
            let v = to_parent[c];
            let pface = if pd.first[v] == NONE { self.vertex_face[v] } else { self.dart_face[pd.first[v]] };
            let cls = uf.find(pface);
            if class_face[cls] == NONE {
                class_face[cls] = faces.len();
                faces.push(Face { walks: Vec::new(), isolated: Vec::new() });
            }
            faces[class_face[cls]].isolated.push(c);
            vertex_face[c] = class_face[cls];
        }

        let mut parent_face_to_face = vec![None; pf];
        let mut origin: Vec<FaceOrigin> =
            (0..faces.len()).map(|_| FaceOrigin { parent_faces: Vec::new(), pure: false }).collect();
        for (p, slot) in parent_face_to_face.iter_mut().enumerate() {
            let f = class_face[uf.find(p)];
            if f != NONE {
                *slot = Some(f);
                origin[f].parent_faces.push(p);
            }
        }
        for (f, o) in origin.iter_mut().enumerate() {
            if let [p] = o.parent_faces[..] {
                let parent = &self.faces[p];
                o.pure = parent.darts().all(|d| child_dart[d.0] != NONE)
                    && parent.isolated.iter().all(|&v| from_parent[v] != NONE)
                    && faces[f].walks.len() == parent.walks.len();
            }
        }
        let coords = self.coords.as_ref().map(|cs| to_parent.iter().map(|&v| cs[v]).collect());
        let graph = PlaneGraph::assemble(cd, faces, vertex_face, coords);
        InducedSubgraph { graph, to_parent, from_parent, parent_face_to_face, face_origin: origin }
    }

    /// Dart `u -> v`, if the edge exists.
    pub fn dart_between(&self, u: usize, v: usize) -> Option<Dart> {
        self.rotation(u).find(|&d| self.head(d) == v)
    }

    fn find_dart(&self, u: usize, v: usize) -> usize {
        self.dart_between(u, v).expect("edge present in parent").0
    }
}

/// Result of [`PlaneGraph::induced_subgraph`].
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: PlaneGraph,
    /// Child vertex to parent vertex.
    pub to_parent: Vec<usize>,
    /// Parent vertex to child vertex (`usize::MAX` when dropped).
    pub from_parent: Vec<usize>,
    /// The child face containing each parent face.
    pub parent_face_to_face: Vec<Option<FaceId>>,
    pub face_origin: Vec<FaceOrigin>,
}

/// Which parent faces a child face is made of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOrigin {
    pub parent_faces: Vec<FaceId>,
    /// The child face is literally a face of the parent.
    pub pure: bool,
}

impl InducedSubgraph {
    pub fn child_of(&self, parent_vertex: usize) -> Option<usize> {
        self.from_parent.get(parent_vertex).copied().filter(|&c| c != NONE)
    }
}

/// Component labelling of `G - removed`.
#[derive(Clone, Debug)]
pub struct ComponentLabels {
    /// Component of each vertex, `usize::MAX` for removed vertices.
    pub label: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentLabels {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn component_of(&self, v: usize) -> Option<usize> {
        let c = self.label[v];
        (c != NONE).then_some(c)
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.label.iter().enumerate() {
            if c != NONE {
                parts[c].push(v);
            }
        }
        parts
    }
}

/// Non-negative weights on the faces of one plane graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceWeighting {
    weights: Vec<f64>,
}

impl FaceWeighting {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((f, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidWeighting(alloc::format!("face {f} has weight {w}")));
        }
        Ok(FaceWeighting { weights })
    }

    pub fn zeros(faces: usize) -> Self {
        FaceWeighting { weights: vec![0.0; faces] }
    }

    pub fn uniform(faces: usize, w: f64) -> Result<Self> {
        Self::new(vec![w; faces])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, f: FaceId) -> Result<f64> {
        self.weights.get(f).copied().ok_or(Error::UnknownFace(f))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `w(B)`; the empty sum is zero.
    pub fn weight_sum(&self, faces: &[FaceId]) -> Result<f64> {
        faces.iter().try_fold(0.0, |acc, &f| Ok(acc + self.get(f)?))
    }
}

/// All violations of a rotation list, structural ones first.
pub fn validate_rotations(rotations: &[Vec<usize>]) -> Vec<Violation> {
    let n = rotations.len();
    let mut out = Vec::new();
    let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (v, rot) in rotations.iter().enumerate() {
        let mut s = rot.clone();
        s.sort_unstable();
        for w in s.windows(2) {
            if w[0] == w[1] && (out.is_empty() || out.last() != Some(&Violation::DartMultiplicity { vertex: v, neighbour: w[0] })) {
                out.push(Violation::DartMultiplicity { vertex: v, neighbour: w[0] });
            }
        }
        for &u in rot {
            if u >= n {
                out.push(Violation::VertexOutOfRange { vertex: v, neighbour: u });
            } else if u == v {
                out.push(Violation::Loop { vertex: v });
            }
        }
        sorted.push(s);
    }
    for (v, rot) in rotations.iter().enumerate() {
        for &u in rot {
            if u < n && u != v && sorted[u].binary_search(&v).is_err() {
                out.push(Violation::NotInvolutive { vertex: v, neighbour: u });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let darts = Darts::from_rotations(rotations);
    let (walks, _) = darts.trace_walks();
    euler_violations(&darts, &walks)
}

/// Per-component check of `v - e + walks = 2`.
fn euler_violations(darts: &Darts, walks: &[Vec<Dart>]) -> Vec<Violation> {
    let mut uf = darts.edge_components();
    let n = darts.n;
    let mut verts = vec![0usize; n];
    let mut edges = vec![0usize; n];
    let mut wcount = vec![0usize; n];
    let mut root_min = vec![NONE; n];
    for v in 0..n {
        let r = uf.find(v);
        verts[r] += 1;
        root_min[r] = root_min[r].min(v);
    }
    for e in 0..darts.dart_count() / 2 {
        let r = uf.find(darts.origin[2 * e]);
        edges[r] += 1;
    }
    for w in walks {
        let r = uf.find(darts.origin[w[0].0]);
        wcount[r] += 1;
    }
    let mut out = Vec::new();
    for r in 0..n {
        if verts[r] == 0 || edges[r] == 0 {
            continue;
        }
        if verts[r] + wcount[r] != 2 + edges[r] {
            out.push(Violation::Euler { root: root_min[r], vertices: verts[r], edges: edges[r], walks: wcount[r] });
        }
    }
    out
}

/// Face structure for graphs without nesting information.
fn root_faces(darts: &Darts, walks: Vec<Vec<Dart>>) -> (Vec<Face>, Vec<FaceId>) {
    let n = darts.n;
    let mut vertex_face = vec![NONE; n];
    if n == 0 {
        return (Vec::new(), vertex_face);
    }
    let mut uf = darts.edge_components();
    let isolated: Vec<usize> = (0..n).filter(|&v| darts.first[v] == NONE).collect();
    // outer walk per component: longest, first in dart order on ties
    let mut outer = vec![NONE; n];
    for (i, w) in walks.iter().enumerate() {
        let r = uf.find(darts.origin[w[0].0]);
        if outer[r] == NONE || w.len() > walks[outer[r]].len() {
            outer[r] = i;
        }
    }
    let edge_components = outer.iter().filter(|&&o| o != NONE).count();
    let merge = edge_components + isolated.len() >= 2;
    let mut is_outer = vec![false; walks.len()];
    for &o in outer.iter().filter(|&&o| o != NONE) {
        is_outer[o] = true;
    }
    let mut faces: Vec<Face> = Vec::new();
    let mut shared = NONE;
    for (i, w) in walks.into_iter().enumerate() {
        if merge && is_outer[i] {
            if shared == NONE {
                shared = faces.len();
                faces.push(Face { walks: Vec::new(), isolated: Vec::new() });
            }
            faces[shared].walks.push(w);
        } else {
            faces.push(Face { walks: vec![w], isolated: Vec::new() });
        }
    }
    if !isolated.is_empty() {
        if shared == NONE {
            shared = faces.len();
            faces.push(Face { walks: Vec::new(), isolated: Vec::new() });
        }
        for &v in &isolated {
            vertex_face[v] = shared;
        }
        faces[shared].isolated = isolated;
    }
    (faces, vertex_face)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fan_apex, gen_grid};

    fn k3() -> PlaneGraph {
        PlaneGraph::from_rotations(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    pub(crate) fn k4() -> PlaneGraph {
        // 3 at the centre of triangle 0,1,2
        PlaneGraph::from_rotations(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn triangle_has_two_faces_of_length_three() {
        let g = k3();
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.boundary_len() == 3 && f.is_disk()));
        assert!(g.validate().is_ok());
        for v in 0..3 {
            assert_eq!(g.incident_faces(v).unwrap(), vec![0, 1]);
        }
    }

    #[test]
    fn single_edge_has_one_walk_of_length_two() {
        let g = PlaneGraph::from_rotations(vec![vec![1], vec![0]]).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.face(0).boundary_len(), 2);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn grid_faces_and_incidences() {
        let g = gen_grid(3);
        assert_eq!(g.face_count(), 5);
        let inner: Vec<usize> = (0..5).filter(|&f| g.face(f).boundary_len() == 4).collect();
        let outer: Vec<usize> = (0..5).filter(|&f| g.face(f).boundary_len() == 8).collect();
        assert_eq!(inner.len(), 4);
        assert_eq!(outer.len(), 1);
        assert_eq!(g.incident_faces(4).unwrap(), inner);
        let corner = g.incident_faces(0).unwrap();
        assert_eq!(corner.len(), 2);
        assert!(corner.contains(&outer[0]));
        assert!(matches!(g.incident_faces(9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn k4_validates_and_k5_fails_euler() {
        assert!(k4().validate().is_ok());
        let k5: Vec<Vec<usize>> = (0..5).map(|v| (0..5).filter(|&u| u != v).collect()).collect();
        let violations = validate_rotations(&k5);
        assert!(matches!(violations[..], [Violation::Euler { .. }]), "{violations:?}");
        assert!(PlaneGraph::from_rotations(k5).is_err());
    }

    #[test]
    fn repeated_dart_is_reported() {
        let rots = vec![vec![1, 1, 2], vec![2, 0], vec![0, 1]];
        let v = validate_rotations(&rots);
        assert!(v.contains(&Violation::DartMultiplicity { vertex: 0, neighbour: 1 }));
    }

    #[test]
    fn non_involutive_rotation_is_rejected() {
        let rots = vec![vec![1, 2], vec![0], vec![1]];
        let v = validate_rotations(&rots);
        assert!(v.contains(&Violation::NotInvolutive { vertex: 0, neighbour: 2 }));
        assert!(v.contains(&Violation::NotInvolutive { vertex: 2, neighbour: 1 }));
    }

    #[test]
    fn components_examples() {
        assert_eq!(gen_grid(4).components().len(), 1);
        let two = PlaneGraph::from_rotations(vec![
            vec![1, 2],
            vec![2, 0],
            vec![0, 1],
            vec![4, 5],
            vec![5, 3],
            vec![3, 4],
        ])
        .unwrap();
        let parts = two.components();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        // two triangles side by side: 6 - 6 + f = 1 + 2
        assert_eq!(two.face_count(), 3);
        assert!(two.validate().is_ok());
        let empty = PlaneGraph::empty(5);
        assert_eq!(empty.components().len(), 5);
        assert_eq!(empty.face_count(), 1);
        assert!(empty.validate().is_ok());
        assert_eq!(PlaneGraph::empty(0).face_count(), 0);
    }

    #[test]
    fn induced_on_everything_is_identical() {
        let g = gen_fan_apex(3);
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        let sub = g.induced_subgraph(&all).unwrap();
        assert_eq!(sub.graph, g);
        assert!(sub.face_origin.iter().all(|o| o.pure && o.parent_faces.len() == 1));
    }

    #[test]
    fn induced_on_nothing_is_empty() {
        let sub = gen_grid(3).induced_subgraph(&[]).unwrap();
        assert_eq!(sub.graph.vertex_count(), 0);
        assert_eq!(sub.graph.face_count(), 0);
        assert!(sub.parent_face_to_face.iter().all(Option::is_none));
    }

    #[test]
    fn induced_middle_row_of_grid_is_a_path() {
        let g = gen_grid(3);
        let sub = g.induced_subgraph(&[3, 4, 5]).unwrap();
        let h = &sub.graph;
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.face_count(), 1);
        assert_eq!(h.face(0).boundary_len(), 4);
        assert!(h.validate().is_ok());
        assert_eq!(sub.to_parent, vec![3, 4, 5]);
        assert!(!sub.face_origin[0].pure);
        assert_eq!(sub.face_origin[0].parent_faces.len(), 5);
    }

    #[test]
    fn nested_cycles_share_an_annulus_face() {
        // 3x3 grid minus its centre-adjacent edges keeps the outer 8-cycle and the centre
        let g = gen_grid(3);
        let ring: Vec<usize> = vec![0, 1, 2, 3, 5, 6, 7, 8];
        let mut keep = ring.clone();
        keep.push(4);
        let sub = g.induced_subgraph(&keep).unwrap();
        assert!(sub.graph.validate().is_ok());
        let ring_only = g.induced_subgraph(&ring).unwrap();
        assert_eq!(ring_only.graph.face_count(), 2);
        // centre vertex alone: one face, isolated
        let centre = g.induced_subgraph(&[4]).unwrap();
        assert_eq!(centre.graph.face_count(), 1);
        assert_eq!(centre.graph.face(0).isolated, vec![0]);
        // ring plus an isolated vertex in each of its two faces
        let corner_pair = g.induced_subgraph(&[0, 2, 4]).unwrap();
        assert_eq!(corner_pair.graph.face_count(), 1);
        assert_eq!(corner_pair.graph.face(0).isolated.len(), 3);
    }

    #[test]
    fn weight_sums() {
        let w = FaceWeighting::new(vec![2.0, 3.0]).unwrap();
        assert_eq!(w.weight_sum(&[0, 1]).unwrap(), 5.0);
        assert_eq!(w.weight_sum(&[]).unwrap(), 0.0);
        assert_eq!(FaceWeighting::new(vec![0.0]).unwrap().weight_sum(&[0]).unwrap(), 0.0);
        assert!(matches!(w.weight_sum(&[2]), Err(Error::UnknownFace(2))));
        assert!(FaceWeighting::new(vec![-1.0]).is_err());
    }

    #[test]
    fn rotation_round_trip() {
        let g = gen_fan_apex(2);
        let h = PlaneGraph::from_rotations(g.to_rotations()).unwrap();
        assert_eq!(g, h);
    }
}
