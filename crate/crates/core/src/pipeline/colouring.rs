use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar::PlaneGraph;
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Yellow,
    Blue,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::Red, Colour::Yellow, Colour::Blue];

    pub fn name(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Yellow => "yellow",
            Colour::Blue => "blue",
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown colour {0:?}")]
pub struct UnknownColour(pub alloc::string::String);

impl FromStr for Colour {
    type Err = UnknownColour;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Colour::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownColour(s.into()))
    }
}

/// A colour for every vertex, with the size of the largest monochromatic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub assignment: Vec<Colour>,
    pub clustering: usize,
}

impl Colouring {
    /// Wraps `assignment`, computing the clustering from components of each colour class.
    pub fn new(g: &PlaneGraph, assignment: Vec<Colour>) -> Self {
        let clustering = class_maxima(g, &assignment).values().copied().max().unwrap_or(0);
        Colouring { assignment, clustering }
    }

    pub fn count(&self, c: Colour) -> usize {
        self.assignment.iter().filter(|&&x| x == c).count()
    }
}

/// Largest component of each colour class present, via breadth-first search.
pub(crate) fn class_maxima(g: &PlaneGraph, assignment: &[Colour]) -> BTreeMap<Colour, usize> {
    let mut out = BTreeMap::new();
    for c in Colour::ALL {
        if !assignment.contains(&c) {
            continue;
        }
        let removed: Vec<bool> = assignment.iter().map(|&x| x != c).collect();
        out.insert(c, g.components_without(&removed).max_size());
    }
    out
}

/// Largest monochromatic component of each colour used, recomputed from scratch.
pub fn verify_clustering(g: &PlaneGraph, col: &Colouring) -> Result<BTreeMap<Colour, usize>> {
    let partial: Vec<Option<Colour>> = col.assignment.iter().copied().map(Some).collect();
    verify_assignment(g, &partial)
}

/// As [`verify_clustering`], for a possibly partial assignment.
pub fn verify_assignment(g: &PlaneGraph, assignment: &[Option<Colour>]) -> Result<BTreeMap<Colour, usize>> {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| assignment.get(v).copied().flatten().is_none()) {
        return Err(Error::Uncoloured(v));
    }
    if assignment.len() > n {
        return Err(Error::UnknownVertex(n));
    }
    let colour = |v: usize| assignment[v].expect("checked above");
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        if colour(u) == colour(v) {
            uf.union(u, v);
        }
    }
    let mut out = BTreeMap::new();
    let mut seen = vec![false; n];
    for v in 0..n {
        let r = uf.find(v);
        if !seen[r] {
            seen[r] = true;
            let size = uf.set_size(r);
            let best = out.entry(colour(v)).or_insert(0);
            *best = size.max(*best);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_grid;

    fn triangle() -> PlaneGraph {
        PlaneGraph::from_rotations(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn monochromatic_connected_graph() {
        let g = gen_grid(4);
        let col = Colouring::new(&g, vec![Colour::Blue; 16]);
        assert_eq!(col.clustering, 16);
        assert_eq!(verify_clustering(&g, &col).unwrap(), BTreeMap::from([(Colour::Blue, 16)]));
    }

    #[test]
    fn proper_colouring_has_clustering_one() {
        let g = triangle();
        let col = Colouring::new(&g, Colour::ALL.to_vec());
        assert_eq!(col.clustering, 1);
        assert!(verify_clustering(&g, &col).unwrap().values().all(|&m| m == 1));
    }

    #[test]
    fn missing_colour_is_rejected() {
        let g = triangle();
        assert_eq!(verify_assignment(&g, &[Some(Colour::Red), None, Some(Colour::Red)]), Err(Error::Uncoloured(1)));
        assert_eq!(verify_assignment(&g, &[Some(Colour::Red)]), Err(Error::Uncoloured(1)));
    }

    #[test]
    fn names_round_trip() {
        for c in Colour::ALL {
            assert_eq!(c.name().parse::<Colour>().unwrap(), c);
        }
        assert!("green".parse::<Colour>().is_err());
    }
}
