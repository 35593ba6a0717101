use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{tw_exact_small, Graph, EXACT_LIMIT};
use crate::error::{Error, Result};

/// Whether `g` has a simple cycle of length at least 4 (a 2×2 grid minor).
fn has_long_cycle(adj: &[u32]) -> bool {
    fn extend(adj: &[u32], start: usize, v: usize, visited: u32, len: u32) -> bool {
        if len >= 4 && adj[v] >> start & 1 == 1 {
            return true;
        }
        let mut next = adj[v] & !visited & !((1u32 << (start + 1)) - 1);
        while next != 0 {
            let u = next.trailing_zeros() as usize;
            next &= next - 1;
            if extend(adj, start, u, visited | 1 << u, len + 1) {
                return true;
            }
        }
        false
    }
    (0..adj.len()).any(|s| extend(adj, s, s, 1 << s, 1))
}

/// Grid vertices ordered so each one after the first touches an earlier one.
const GRID3_ORDER: [usize; 9] = [4, 1, 3, 5, 7, 0, 2, 6, 8];

fn grid3_adjacent(a: usize, b: usize) -> bool {
    let (ra, ca, rb, cb) = (a / 3, a % 3, b / 3, b % 3);
    ra.abs_diff(rb) + ca.abs_diff(cb) == 1
}

/// Whether the 9-vertex graph with adjacency `q` contains the 3×3 grid as a
/// spanning subgraph.
fn contains_grid3(q: &[u32; 9]) -> bool {
    fn place(q: &[u32; 9], k: usize, image: &mut [usize; 9], used: u32) -> bool {
        if k == 9 {
            return true;
        }
        let gv = GRID3_ORDER[k];
        let degree = (0..9).filter(|&x| grid3_adjacent(gv, x)).count() as u32;
        for h in 0..9 {
            if used >> h & 1 == 1 || q[h].count_ones() < degree {
                continue;
            }
            let fits = GRID3_ORDER[..k]
                .iter()
                .all(|&prev| !grid3_adjacent(gv, prev) || q[h] >> image[prev] & 1 == 1);
            if fits {
                image[gv] = h;
                if place(q, k + 1, image, used | 1 << h) {
                    return true;
                }
            }
        }
        false
    }
    place(q, 0, &mut [0; 9], 0)
}

struct Search<'a> {
    adj: &'a [u32],
    seen: BTreeSet<Vec<u16>>,
}

impl Search<'_> {
    fn quotient(&self, sets: &[u16]) -> Vec<u32> {
        let reach: Vec<u32> = sets
            .iter()
            .map(|&s| {
                let mut m = s as u32;
                let mut out = 0;
                while m != 0 {
                    out |= self.adj[m.trailing_zeros() as usize];
                    m &= m - 1;
                }
                out
            })
            .collect();
        (0..sets.len())
            .map(|i| {
                (0..sets.len())
                    .filter(|&j| j != i && reach[i] & sets[j] as u32 != 0)
                    .fold(0u32, |m, j| m | 1 << j)
            })
            .collect()
    }

    fn run(&mut self, sets: Vec<u16>) -> bool {
        let q = self.quotient(&sets);
        let edges: u32 = q.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
        if edges < 12 {
            return false;
        }
        if sets.len() == 9 {
            let arr: [u32; 9] = core::array::from_fn(|i| q[i]);
            return contains_grid3(&arr);
        }
        for i in 0..sets.len() {
            let mut m = q[i] & !((1u32 << (i + 1)) - 1);
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                let mut next: Vec<u16> = sets.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &s)| s).collect();
                next.push(sets[i] | sets[j]);
                next.sort_unstable();
                if self.seen.insert(next.clone()) && self.run(next) {
                    return true;
                }
            }
        }
        false
    }
}

fn components(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut left: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = 1u32 << left.trailing_zeros();
        loop {
            let mut grown = comp;
            let mut m = comp;
            while m != 0 {
                grown |= adj[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// Whether the k×k grid is a minor of `g`, for `k ≤ 3` and at most 15 vertices.
///
/// For `k = 3` the search only contracts edges: inside a connected graph,
/// deleting a vertex never yields a minor that contracting it into a
/// neighbour would not also contain as a subgraph.
pub fn grid_minor_exact_small(g: &Graph, k: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n > EXACT_LIMIT {
        return Err(Error::TooLarge { limit: EXACT_LIMIT, got: n });
    }
    if k > 3 {
        return Err(Error::Precondition(alloc::format!("grid-minor oracle supports k <= 3, got {k}")));
    }
    let adj = g.masks();
    match k {
        0 => Ok(true),
        1 => Ok(n >= 1),
        2 => Ok(has_long_cycle(&adj)),
        _ => {
            if n < 9 || g.edge_count() < 12 || tw_exact_small(g, EXACT_LIMIT)? < 3 {
                return Ok(false);
            }
            for comp in components(&adj) {
                if comp.count_ones() < 9 {
                    continue;
                }
                let sets: Vec<u16> = (0..n).filter(|&v| comp >> v & 1 == 1).map(|v| 1u16 << v).collect();
                let mut search = Search { adj: &adj, seen: BTreeSet::new() };
                if search.run(sets) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// `min(gm(G), 3)`.
pub fn grid_minor_number_small(g: &Graph) -> Result<usize> {
    let mut k = 0;
    while k < 3 && grid_minor_exact_small(g, k + 1)? {
        k += 1;
    }
    Ok(k)
}
