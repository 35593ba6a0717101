//! Cutting a face-weighted plane graph into pieces of small treewidth with
//! weight-balanced nooses.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{floor, le_tol, ln, log_three_halves, powf, sqrt};
use crate::planar::{FaceId, FaceWeighting, PlaneGraph};
use crate::separators::noose_separator;
use crate::treewidth::{tw_upper_bound, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelParams {
    /// `N`: upper bound on the total face weight.
    pub n_total: f64,
    /// `W`: lower bound on the weight around every vertex.
    pub w_min: f64,
    /// Stop once every component has treewidth upper bound below `t`.
    pub t: f64,
    /// Run even when `t` is below [`peel_threshold`].
    pub allow_low_t: bool,
}

/// `12·√(10·log_{3/2} N + 36) + 7`.
pub fn peel_threshold(n_total: f64) -> f64 {
    12.0 * sqrt(10.0 * log_three_halves(n_total) + 36.0) + 7.0
}

/// `4778N/(W(t−7)) + 20480N/(W(t−7)²)`.
pub fn peel_size_bound(n_total: f64, w_min: f64, t: f64) -> f64 {
    let d = t - 7.0;
    4778.0 * n_total / (w_min * d) + 20480.0 * n_total / (w_min * d * d)
}

/// `160N/(W(t−7)²)·(3/4)^i`.
pub fn class_count_bound(n_total: f64, w_min: f64, t: f64, i: i64) -> f64 {
    let d = t - 7.0;
    160.0 * n_total / (w_min * d * d) * powf(0.75, i as f64)
}

/// Index `i` with `((t−7)/12)²(4/3)^i ≤ |X| + N_C/W < ((t−7)/12)²(4/3)^{i+1}`.
///
/// `None` when the middle term is zero or `t ≤ 7`. Negative indices occur
/// when the treewidth heuristic keeps a component whose weight the width bound
/// arithmetic would already have ruled out.
pub fn class_index(x: usize, n_c: f64, w_min: f64, t: f64) -> Option<i64> {
    let value = x as f64 + n_c / w_min;
    let base = (t - 7.0) / 12.0;
    if value <= 0.0 || t <= 7.0 {
        return None;
    }
    Some(floor(ln(value / (base * base)) / ln(4.0 / 3.0)) as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub vertices: usize,
    /// `N_C = w(F(C) ∩ F(G))`.
    pub n_c: f64,
    /// `|X_C|`, the faces of `C` that are not faces of `G`.
    pub x_c: usize,
    pub class_index: Option<i64>,
    /// Vertices of the component, sorted; not serialised.
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelIteration {
    pub component: ComponentStats,
    pub tw_upper: i64,
    pub noose_size: usize,
    pub children: Vec<ComponentStats>,
    /// `N_{C'} ≤ ⅔ N_C` for every child.
    pub split_ok: bool,
    /// `|X_{C'}| ≤ |X_C| + 1` for every child.
    pub growth_ok: bool,
    /// `N_C ≤ (⅔)^{|X_C| − |X_K|} N`, where `K` is the component of `G`
    /// containing `C`. Same as the next flag when `G` is connected.
    pub decay_ok: bool,
    /// `N_C ≤ (⅔)^{|X_C|} N`.
    pub decay_literal_ok: bool,
    /// `|X_K|`: faces of the component of `G` containing `C` that are not faces of `G`.
    pub x_base: usize,
    /// When `N_C/W ≥ 36 + 9|X_C|`: every child lands in a strictly lower class.
    pub class_step_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelReport {
    pub params: PeelParams,
    pub threshold: f64,
    pub threshold_met: bool,
    pub iterations: Vec<PeelIteration>,
    pub class_histogram: BTreeMap<i64, usize>,
    /// Every non-negative class respects `|𝒞_i| ≤ 160N/(W(t−7)²)(3/4)^i`.
    pub histogram_within_bound: bool,
    pub separator_size: usize,
    pub size_bound: f64,
    /// The size bound only applies when the threshold on `t` holds.
    pub size_bound_in_force: bool,
    pub final_components: usize,
    pub final_max_tw: i64,
}

impl PeelReport {
    /// Every per-iteration check and the stopping condition hold.
    pub fn invariants_hold(&self) -> bool {
        self.iterations.iter().all(|it| it.split_ok && it.growth_ok && it.decay_ok)
            && (self.final_max_tw as f64) < self.params.t
    }
}

struct Piece {
    graph: PlaneGraph,
    to_g: Vec<usize>,
    /// The face of `G` each face equals, if any.
    face_to_g: Vec<Option<FaceId>>,
    x_base: usize,
}

impl Piece {
    fn stats(&self, w: &FaceWeighting, p: &PeelParams) -> ComponentStats {
        let mut n_c = 0.0;
        let mut x_c = 0;
        for f in &self.face_to_g {
            match f {
                Some(g) => n_c += w.as_slice()[*g],
                None => x_c += 1,
            }
        }
        ComponentStats {
            vertices: self.to_g.len(),
            n_c,
            x_c,
            class_index: class_index(x_c, n_c, p.w_min, p.t),
            members: self.to_g.clone(),
        }
    }

    fn split(&self, part: &[usize]) -> Result<Piece> {
        let sub = self.graph.induced_subgraph(part)?;
        let face_to_g = sub
            .face_origin
            .iter()
            .map(|o| if o.pure { self.face_to_g[o.parent_faces[0]] } else { None })
            .collect();
        let to_g = sub.to_parent.iter().map(|&v| self.to_g[v]).collect();
        Ok(Piece { graph: sub.graph, to_g, face_to_g, x_base: self.x_base })
    }
}

struct Queued {
    n_c: f64,
    id: usize,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    /// Heaviest first, then smallest id.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_c.total_cmp(&other.n_c).then(other.id.cmp(&self.id))
    }
}

fn check_preconditions(g: &PlaneGraph, w: &FaceWeighting, p: &PeelParams) -> Result<f64> {
    if !(p.w_min >= 1.0 && p.n_total >= p.w_min) {
        return Err(Error::Precondition(format!("need N >= W >= 1, got N={}, W={}", p.n_total, p.w_min)));
    }
    if w.len() != g.face_count() {
        return Err(Error::InvalidWeighting(format!("{} weights for {} faces", w.len(), g.face_count())));
    }
    if !le_tol(w.total(), p.n_total) {
        return Err(Error::Precondition(format!("w(F(G)) = {} exceeds N = {}", w.total(), p.n_total)));
    }
    for v in 0..g.vertex_count() {
        let around = w.weight_sum(&g.incident_faces_unchecked(v))?;
        if !le_tol(p.w_min, around) {
            return Err(Error::Precondition(format!("vertex {v} has w(F(G,v)) = {around} < W = {}", p.w_min)));
        }
    }
    let threshold = peel_threshold(p.n_total);
    if !p.allow_low_t && !le_tol(threshold, p.t) {
        return Err(Error::Precondition(format!("t = {} is below 12*sqrt(10*log_1.5(N)+36)+7 = {threshold}", p.t)));
    }
    Ok(threshold)
}

/// Repeatedly cuts the heaviest component whose treewidth upper bound is at
/// least `t` along a balanced noose (faces that are not faces of `G` get
/// weight zero), until every component is below `t`. Returns the union of the
/// noose vertices, sorted.
pub fn peel_low_treewidth(g: &PlaneGraph, w: &FaceWeighting, p: PeelParams) -> Result<(Vec<usize>, PeelReport)> {
    let threshold = check_preconditions(g, w, &p)?;
    let mut pieces: Vec<Option<Piece>> = Vec::new();
    let mut queue = BinaryHeap::new();
    let root = Piece { graph: g.clone(), to_g: (0..g.vertex_count()).collect(), face_to_g: (0..g.face_count()).map(Some).collect(), x_base: 0 };
    for part in g.components() {
        let mut piece = root.split(&part)?;
        piece.x_base = piece.stats(w, &p).x_c;
        queue.push(Queued { n_c: piece.stats(w, &p).n_c, id: pieces.len() });
        pieces.push(Some(piece));
    }
    let mut s: Vec<usize> = Vec::new();
    let mut iterations = Vec::new();
    let mut final_components = 0;
    let mut final_max_tw = -1;
    while let Some(Queued { id, .. }) = queue.pop() {
        let Some(piece) = pieces[id].take() else { continue };
        let (tw, _) = tw_upper_bound(&Graph::from_plane(&piece.graph));
        if (tw as f64) < p.t {
            final_components += 1;
            final_max_tw = final_max_tw.max(tw);
            continue;
        }
        let stats = piece.stats(w, &p);
        let local: Vec<f64> =
            piece.face_to_g.iter().map(|f| f.map_or(0.0, |g| w.as_slice()[g])).collect();
        let sep = noose_separator(&piece.graph, &FaceWeighting::new(local)?)?;
        let mut removed = vec![false; piece.graph.vertex_count()];
        for &v in &sep.noose.vertices {
            removed[v] = true;
            s.push(piece.to_g[v]);
        }
        let parts = piece.graph.components_without(&removed).into_parts();
        let mut children = Vec::with_capacity(parts.len());
        let mut new_pieces = Vec::with_capacity(parts.len());
        for part in parts {
            let child = piece.split(&part)?;
            children.push(child.stats(w, &p));
            new_pieces.push(child);
        }
        let hypothesis = stats.n_c / p.w_min >= 36.0 + 9.0 * stats.x_c as f64;
        let record = PeelIteration {
            split_ok: children.iter().all(|c| le_tol(c.n_c, 2.0 * stats.n_c / 3.0)),
            growth_ok: children.iter().all(|c| c.x_c <= stats.x_c + 1),
            decay_ok: le_tol(stats.n_c, powf(2.0 / 3.0, stats.x_c as f64 - piece.x_base as f64) * p.n_total),
            decay_literal_ok: le_tol(stats.n_c, powf(2.0 / 3.0, stats.x_c as f64) * p.n_total),
            x_base: piece.x_base,
            class_step_ok: hypothesis.then(|| {
                children.iter().all(|c| match (c.class_index, stats.class_index) {
                    (Some(j), Some(i)) => j < i,
                    _ => true,
                })
            }),
            component: stats,
            tw_upper: tw,
            noose_size: sep.noose.len(),
            children,
        };
        let weights: Vec<f64> = record.children.iter().map(|c| c.n_c).collect();
        iterations.push(record);
        for (child, n_c) in new_pieces.into_iter().zip(weights) {
            queue.push(Queued { n_c, id: pieces.len() });
            pieces.push(Some(child));
        }
    }
    s.sort_unstable();
    let mut class_histogram = BTreeMap::new();
    for it in &iterations {
        if let Some(i) = it.component.class_index {
            *class_histogram.entry(i).or_insert(0) += 1;
        }
    }
    let histogram_within_bound = p.t > 7.0
        && class_histogram
            .iter()
            .filter(|(&i, _)| i >= 0)
            .all(|(&i, &count)| le_tol(count as f64, class_count_bound(p.n_total, p.w_min, p.t, i)));
    let threshold_met = le_tol(threshold, p.t);
    let report = PeelReport {
        params: p,
        threshold,
        threshold_met,
        separator_size: s.len(),
        size_bound: if p.t > 7.0 { peel_size_bound(p.n_total, p.w_min, p.t) } else { f64::INFINITY },
        size_bound_in_force: threshold_met,
        iterations,
        class_histogram,
        histogram_within_bound,
        final_components,
        final_max_tw,
    };
    Ok((s, report))
}
