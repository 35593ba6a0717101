use alloc::vec;

use super::Graph;
use crate::error::{Error, Result};

/// Largest limit accepted by the subset dynamic programme.
const HARD_LIMIT: usize = 20;

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// `TW(S)` is the best possible largest neighbourhood when the vertices of
/// `S` are eliminated first; `TW(S) = min_v max(TW(S − v), |Q(S − v, v)|)`,
/// where `Q(S, v)` are the vertices outside `S ∪ {v}` reachable from `v`
/// through `S`.
pub fn tw_exact_small(g: &Graph, limit: usize) -> Result<i64> {
    let n = g.vertex_count();
    if n > limit.min(HARD_LIMIT) {
        return Err(Error::TooLarge { limit: limit.min(HARD_LIMIT), got: n });
    }
    if n == 0 {
        return Ok(-1);
    }
    let adj = g.masks();
    let full = (1u32 << n) - 1;
    let nbhd = |mask: u32| {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            out |= adj[v as usize];
            m &= m - 1;
        }
        out
    };
    let q = |s: u32, v: usize| {
        let inside = s | 1 << v;
        let mut comp = 1u32 << v;
        loop {
            let grown = comp | (nbhd(comp) & inside);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        (nbhd(comp) & !inside & full).count_ones()
    };
    let mut tw = vec![u8::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let here = (q(rest, v) as u8).max(prev);
            best = best.min(here);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_grid;

    #[test]
    fn known_values() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(tw_exact_small(&k4, 15).unwrap(), 3);
        assert_eq!(tw_exact_small(&Graph::from_plane(&gen_grid(3)), 15).unwrap(), 3);
        let path = Graph::from_edges(6, (0..5).map(|i| (i, i + 1)));
        assert_eq!(tw_exact_small(&path, 15).unwrap(), 1);
        let cycle = Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7)));
        assert_eq!(tw_exact_small(&cycle, 15).unwrap(), 2);
        assert_eq!(tw_exact_small(&Graph::from_edges(3, []), 15).unwrap(), 0);
        assert_eq!(tw_exact_small(&Graph::from_edges(0, []), 15).unwrap(), -1);
    }

    #[test]
    fn too_large() {
        let g = Graph::from_plane(&gen_grid(4));
        assert!(matches!(tw_exact_small(&g, 15), Err(Error::TooLarge { limit: 15, got: 16 })));
        assert_eq!(tw_exact_small(&g, 16).unwrap(), 4);
    }
}
