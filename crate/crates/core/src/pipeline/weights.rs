use alloc::format;
use alloc::vec;

use crate::error::{Error, Result};
use crate::planar::{FaceWeighting, InducedSubgraph, PlaneGraph};

/// For each face of `G[S]`, the number of vertices of `G − S` inside it.
///
/// Each component of `G − S` lies in a single face of `G[S]`; all faces of
/// `G` it touches must be glued into that face.
pub fn face_weights_from_separator(g: &PlaneGraph, s: &[usize]) -> Result<(InducedSubgraph, FaceWeighting)> {
    let sub = g.induced_subgraph(s)?;
    let weights = weights_on(g, &sub)?;
    Ok((sub, weights))
}

pub(crate) fn weights_on(g: &PlaneGraph, sub: &InducedSubgraph) -> Result<FaceWeighting> {
    let n = g.vertex_count();
    let mut weights = vec![0.0; sub.graph.face_count()];
    let removed: alloc::vec::Vec<bool> = (0..n).map(|v| sub.child_of(v).is_some()).collect();
    let labels = g.components_without(&removed);
    if labels.count() == 0 || sub.graph.vertex_count() == 0 {
        return FaceWeighting::new(weights);
    }
    let mut home = vec![None; labels.count()];
    for v in 0..n {
        let Some(c) = labels.component_of(v) else { continue };
        for f in g.incident_faces_unchecked(v) {
            let Some(target) = sub.parent_face_to_face[f] else {
                return Err(Error::Structure(format!("face {f} of G around vertex {v} lies in no face of G[S]")));
            };
            match home[c] {
                None => home[c] = Some(target),
                Some(t) if t != target => {
                    return Err(Error::Structure(format!(
                        "component of G - S containing vertex {v} touches faces {t} and {target} of G[S]"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    for (c, &size) in labels.sizes.iter().enumerate() {
        let f = home[c].ok_or_else(|| Error::Structure(format!("component {c} of G - S has no face")))?;
        weights[f] += size as f64;
    }
    FaceWeighting::new(weights)
}
