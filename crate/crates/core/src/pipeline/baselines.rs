use alloc::collections::BTreeMap;
use alloc::vec;

use serde::{Deserialize, Serialize};

use super::colouring::{class_maxima, Colour, Colouring};
use crate::error::Result;
use crate::num::{powf, sqrt};
use crate::planar::PlaneGraph;
use crate::separators::q_separator;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    pub n: usize,
    pub q: f64,
    /// Size of the outer separator.
    pub s_size: usize,
    /// Size of the nested separator (three colours only).
    pub s1_size: usize,
    pub maxima: BTreeMap<Colour, usize>,
    pub clustering: usize,
    /// The clustering the construction promises.
    pub bound: usize,
    /// `clustering / n^{exponent}`.
    pub ratio: f64,
    pub exponent: f64,
}

fn finish(g: &PlaneGraph, colour: vec::Vec<Colour>, q: f64, s: usize, s1: usize, bound: usize, exponent: f64) -> (Colouring, BaselineReport) {
    let n = g.vertex_count();
    let maxima = class_maxima(g, &colour);
    let clustering = maxima.values().copied().max().unwrap_or(0);
    let ratio = if n == 0 { 0.0 } else { clustering as f64 / powf(n as f64, exponent) };
    let report = BaselineReport { n, q, s_size: s, s1_size: s1, maxima, clustering, bound, ratio, exponent };
    (Colouring { assignment: colour, clustering }, report)
}

/// Red/blue colouring: an `n^{2/3}`-separator is blue, the rest red.
pub fn two_colour(g: &PlaneGraph) -> Result<(Colouring, BaselineReport)> {
    let n = g.vertex_count();
    let q = powf(n.max(1) as f64, 2.0 / 3.0);
    let s = q_separator(g, q)?.vertices;
    let mut colour = vec![Colour::Red; n];
    for &v in &s {
        colour[v] = Colour::Blue;
    }
    let bound = (q as usize).max(s.len());
    Ok(finish(g, colour, q, s.len(), 0, bound, 2.0 / 3.0))
}

/// Three colours from nested `√n`-separators: `S` of `G`, then `S1` of `G[S]`.
/// `G − S` is red, `S − S1` blue and `S1` yellow.
pub fn lmst_three_colour(g: &PlaneGraph) -> Result<(Colouring, BaselineReport)> {
    let n = g.vertex_count();
    let q = sqrt(n.max(1) as f64);
    let s = q_separator(g, q)?.vertices;
    let sub = g.induced_subgraph(&s)?;
    let s1 = q_separator(&sub.graph, q)?.vertices;
    let mut colour = vec![Colour::Red; n];
    for &v in &s {
        colour[v] = Colour::Blue;
    }
    for &v in &s1 {
        colour[sub.to_parent[v]] = Colour::Yellow;
    }
    let bound = (q as usize).max(s1.len());
    Ok(finish(g, colour, q, s.len(), s1.len(), bound, 0.5))
}
