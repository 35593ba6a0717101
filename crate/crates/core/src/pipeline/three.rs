use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::colouring::{class_maxima, Colour, Colouring};
use super::weights::weights_on;
use crate::error::{Error, Result, Stage};
use crate::num::{le_tol, powf};
use crate::peel::{peel_low_treewidth, peel_threshold, PeelParams, PeelReport};
use crate::planar::PlaneGraph;
use crate::separators::{minimalize_q_separator, q_separator};
use crate::treewidth::{td_q_separator, tw_upper_bound, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    /// Largest allowed red and blue component.
    pub q: f64,
    /// Treewidth target of the peeling stage.
    pub t: f64,
    /// Size budget of the treewidth separator.
    pub p: f64,
    /// Peel even when `t` is below the peeling threshold.
    pub allow_low_t: bool,
    /// Raise `p` when the treewidth separator's preconditions fail instead of
    /// reporting an error.
    pub raise_p: bool,
}

impl PipelineParams {
    /// `q = 16n^{4/9}`, `t = max(40n^{1/9}, threshold + 1)`, `p = 8n^{4/9}`.
    pub fn defaults(n: usize) -> Self {
        let nf = (n.max(1)) as f64;
        PipelineParams {
            q: 16.0 * powf(nf, 4.0 / 9.0),
            t: (40.0 * powf(nf, 1.0 / 9.0)).max(peel_threshold(nf) + 1.0),
            p: 8.0 * powf(nf, 4.0 / 9.0),
            allow_low_t: false,
            raise_p: true,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, x) in [("q", self.q), ("t", self.t), ("p", self.p)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Precondition(alloc::format!("{name} must be a positive real, got {x}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreewidthStage {
    pub vertices: usize,
    /// Width of the heuristic decomposition of `G2`.
    pub k: i64,
    pub p_requested: f64,
    pub p_used: f64,
    pub p_raised: bool,
    pub separator_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeColourReport {
    pub n: usize,
    pub params: PipelineParams,
    pub s0_size: usize,
    /// `3n^{7/9}`.
    pub s0_bound: f64,
    pub s0_within_bound: bool,
    /// The q-separator's own size bound with the measured constant.
    pub s0_scaled_bound: f64,
    pub s0_levels_ok: bool,
    pub c_impl: f64,
    pub s_size: usize,
    pub face_weight_total: f64,
    /// `min_v w(F(G1, v))`, compared with `q − 1`.
    pub min_vertex_weight: Option<f64>,
    pub peel: Option<PeelReport>,
    pub s1_size: usize,
    /// `8n^{4/9}`.
    pub s1_bound: f64,
    pub s1_within_bound: bool,
    pub tw_g1: Option<i64>,
    pub treewidth: Option<TreewidthStage>,
    pub s2_size: usize,
    pub yellow_count: usize,
    pub yellow_within_q: bool,
    pub maxima: BTreeMap<Colour, usize>,
    pub clustering: usize,
    /// `clustering / n^{4/9}`.
    pub ratio: f64,
    pub red_ok: bool,
    pub blue_ok: bool,
    pub yellow_ok: bool,
}

impl ThreeColourReport {
    /// The guarantees that hold for every input: red and blue components of
    /// at most `q` vertices, and every yellow component within `|S1| + |S2|`.
    pub fn hard_invariants_hold(&self) -> bool {
        self.red_ok && self.blue_ok && self.yellow_ok
    }
}

/// Three-stage colouring: a minimal q-separator `S` leaves red pieces; the
/// graph `G[S]` is peeled to small treewidth (peeled vertices yellow); a
/// q-separator read off a tree decomposition of the rest is also yellow; what
/// remains is blue.
pub fn three_colour(g: &PlaneGraph, params: PipelineParams) -> Result<(Colouring, ThreeColourReport)> {
    params.validate()?;
    let n = g.vertex_count();
    let nf = n as f64;
    let q = params.q;
    let mut colour = vec![Colour::Red; n];

    let sep = q_separator(g, q).map_err(|e| e.at(Stage::QSeparator))?;
    let s0_bound = 3.0 * powf(nf, 7.0 / 9.0);
    let s = minimalize_q_separator(g, q, &sep.vertices).map_err(|e| e.at(Stage::Minimalize))?;

    let g1 = g.induced_subgraph(&s).map_err(|e| e.at(Stage::FaceWeights))?;
    let w = weights_on(g, &g1).map_err(|e| e.at(Stage::FaceWeights))?;
    let mut min_vertex_weight: Option<f64> = None;
    for v in 0..g1.graph.vertex_count() {
        let around = w.weight_sum(&g1.graph.incident_faces_unchecked(v)).map_err(|e| e.at(Stage::FaceWeights))?;
        if !le_tol(q - 1.0, around) {
            return Err(Error::Precondition(alloc::format!(
                "vertex {} of S has w(F(G1,v)) = {around} < q - 1 = {}",
                g1.to_parent[v],
                q - 1.0
            ))
            .at(Stage::FaceWeights));
        }
        min_vertex_weight = Some(min_vertex_weight.map_or(around, |m| m.min(around)));
    }

    let mut peel = None;
    let mut s1_local: Vec<usize> = Vec::new();
    if g1.graph.vertex_count() > 0 {
        let pp = PeelParams { n_total: nf, w_min: q - 1.0, t: params.t, allow_low_t: params.allow_low_t };
        let (s1, report) = peel_low_treewidth(&g1.graph, &w, pp).map_err(|e| e.at(Stage::Peel))?;
        s1_local = s1;
        peel = Some(report);
    }
    let mut in_s1 = vec![false; g1.graph.vertex_count()];
    for &v in &s1_local {
        in_s1[v] = true;
        colour[g1.to_parent[v]] = Colour::Yellow;
    }
    let tw_g1 = (g1.graph.vertex_count() > 0).then(|| tw_upper_bound(&Graph::from_plane(&g1.graph)).0);

    let rest: Vec<usize> = (0..g1.graph.vertex_count()).filter(|&v| !in_s1[v]).collect();
    let g2 = Graph::from_plane(&g1.graph).induced(&rest);
    let mut treewidth = None;
    let mut s2_size = 0;
    if !rest.is_empty() {
        let (k, td) = tw_upper_bound(&g2);
        let n2 = rest.len() as f64;
        let k1 = (k + 1) as f64;
        let mut p = params.p;
        let fits = n2 <= q || (le_tol(k1, p) && le_tol(n2 * k1, p * q));
        if !fits && params.raise_p {
            p = p.max(k1).max(n2 * k1 / q);
        }
        let s2 = td_q_separator(&g2, &td, q, p).map_err(|e| e.at(Stage::TreewidthSeparator))?;
        s2_size = s2.len();
        for &v in &s2 {
            colour[g1.to_parent[rest[v]]] = Colour::Yellow;
        }
        for (i, &v) in rest.iter().enumerate() {
            if s2.binary_search(&i).is_err() {
                colour[g1.to_parent[v]] = Colour::Blue;
            }
        }
        treewidth = Some(TreewidthStage {
            vertices: rest.len(),
            k,
            p_requested: params.p,
            p_used: p,
            p_raised: p != params.p,
            separator_size: s2.len(),
        });
    }

    let maxima = class_maxima(g, &colour);
    let clustering = maxima.values().copied().max().unwrap_or(0);
    let yellow_count = colour.iter().filter(|&&c| c == Colour::Yellow).count();
    let max_of = |c: Colour| maxima.get(&c).copied().unwrap_or(0);
    let s1_bound = 8.0 * powf(nf, 4.0 / 9.0);
    let report = ThreeColourReport {
        n,
        params,
        s0_size: sep.vertices.len(),
        s0_bound,
        s0_within_bound: le_tol(sep.vertices.len() as f64, s0_bound),
        s0_scaled_bound: sep.size_bound(n),
        s0_levels_ok: sep.levels_ok(),
        c_impl: sep.c_impl,
        s_size: s.len(),
        face_weight_total: w.total(),
        min_vertex_weight,
        peel,
        s1_size: s1_local.len(),
        s1_bound,
        s1_within_bound: le_tol(s1_local.len() as f64, s1_bound),
        tw_g1,
        treewidth,
        s2_size,
        yellow_count,
        yellow_within_q: yellow_count as f64 <= q,
        clustering,
        ratio: if n == 0 { 0.0 } else { clustering as f64 / powf(nf, 4.0 / 9.0) },
        red_ok: max_of(Colour::Red) as f64 <= q,
        blue_ok: max_of(Colour::Blue) as f64 <= q,
        yellow_ok: max_of(Colour::Yellow) <= s1_local.len() + s2_size,
        maxima,
    };
    Ok((Colouring { assignment: colour, clustering }, report))
}
