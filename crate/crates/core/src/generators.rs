//! Seeded constructions of grids, fan-apex graphs and random triangulations.
//!
//! All generators attach coordinates. Rotations are clockwise with the y axis
//! pointing up.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::planar::PlaneGraph;

/// Sorts each vertex's neighbours clockwise around it using the coordinates.
fn rotations_by_angle(adj: Vec<Vec<usize>>, coords: &[[f64; 2]]) -> Vec<Vec<usize>> {
    adj.into_iter()
        .enumerate()
        .map(|(v, mut nbrs)| {
            let [x, y] = coords[v];
            let angle = |u: &usize| libm::atan2(coords[*u][1] - y, coords[*u][0] - x);
            nbrs.sort_by(|a, b| angle(b).total_cmp(&angle(a)));
            nbrs
        })
        .collect()
}

/// The k×k grid. Vertex `(row, col)` has id `row * k + col`; row 0 is on top.
pub fn gen_grid(k: usize) -> PlaneGraph {
    assert!(k >= 1, "grid side must be at least 1");
    let id = |r: usize, c: usize| r * k + c;
    let mut rotations = Vec::with_capacity(k * k);
    let mut coords = Vec::with_capacity(k * k);
    for r in 0..k {
        for c in 0..k {
            // clockwise: east, south, west, north
            let mut rot = Vec::with_capacity(4);
            if c + 1 < k {
                rot.push(id(r, c + 1));
            }
            if r + 1 < k {
                rot.push(id(r + 1, c));
            }
            if c > 0 {
                rot.push(id(r, c - 1));
            }
            if r > 0 {
                rot.push(id(r - 1, c));
            }
            rotations.push(rot);
            coords.push([c as f64, -(r as f64)]);
        }
    }
    PlaneGraph::from_rotations(rotations)
        .and_then(|g| g.with_coords(coords))
        .expect("grid embedding is valid")
}

/// Every `s`-th row and column of the k×k grid (1-based rows `s, 2s, ...`).
pub fn grid_rowcol_separator(k: usize, s: usize) -> Vec<usize> {
    assert!(s >= 1 && s <= k, "need 1 <= s <= k");
    let hit = |i: usize| (i + 1) % s == 0;
    (0..k * k).filter(|&v| hit(v / k) || hit(v % k)).collect()
}

/// `k` disjoint fans on `k²` vertices each, plus an apex adjacent to everything.
///
/// The apex is vertex 0. Fan `i` occupies ids `1 + i·k² .. 1 + (i+1)·k²`: its
/// centre first, then the path in order. Fans sit in consecutive sectors
/// around the apex, each with its path between the apex and its centre.
pub fn gen_fan_apex(k: usize) -> PlaneGraph {
    assert!(k >= 2, "fan-apex family needs k >= 2");
    let fan = k * k;
    let n = k * fan + 1;
    let path = fan - 1;
    let mut adj = vec![Vec::new(); n];
    let mut coords = vec![[0.0, 0.0]; n];
    let width = (0.8 * 2.0 * PI / k as f64).min(PI / 4.0);
    let b = libm::tan(width);
    for i in 0..k {
        let centre = 1 + i * fan;
        let phi = 2.0 * PI * i as f64 / k as f64;
        let (s, c) = (libm::sin(phi), libm::cos(phi));
        let place = |x: f64, y: f64| [c * x - s * y, s * x + c * y];
        coords[centre] = place(0.0, 2.0);
        adj[0].push(centre);
        adj[centre].push(0);
        for j in 0..path {
            let v = centre + 1 + j;
            let x = b * (0.2 + 0.8 * j as f64 / (path - 1) as f64);
            coords[v] = place(x, 1.0);
            adj[0].push(v);
            adj[v].push(0);
            adj[centre].push(v);
            adj[v].push(centre);
            if j > 0 {
                adj[v].push(v - 1);
                adj[v - 1].push(v);
            }
        }
    }
    let rotations = rotations_by_angle(adj, &coords);
    PlaneGraph::from_rotations(rotations)
        .and_then(|g| g.with_coords(coords))
        .expect("fan-apex embedding is valid")
}

/// Stacked triangulation followed by `n` random edge-flip attempts.
pub fn gen_random_triangulation(n: usize, seed: u64) -> PlaneGraph {
    gen_random_triangulation_with_flips(n, seed, n)
}

/// Stacked triangulation on `n` vertices: start from a triangle, then insert
/// each new vertex into a uniformly chosen bounded face. Afterwards `flips`
/// random edges are flipped where that keeps the graph simple.
pub fn gen_random_triangulation_with_flips(n: usize, seed: u64, flips: usize) -> PlaneGraph {
    assert!(n >= 3, "a triangulation needs at least 3 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let h = libm::sqrt(3.0) / 2.0;
    let mut coords = vec![[0.0, 0.0], [1.0, 0.0], [0.5, h]];
    // bounded faces as walks a -> b -> c (counter-clockwise in the drawing)
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let insert_after = |list: &mut Vec<usize>, after: usize, x: usize| {
        let i = list.iter().position(|&y| y == after).expect("neighbour present");
        list.insert(i + 1, x);
    };
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[fi];
        insert_after(&mut rot[a], c, v);
        insert_after(&mut rot[b], a, v);
        insert_after(&mut rot[c], b, v);
        rot.push(vec![a, c, b]);
        let (pa, pb, pc) = (coords[a], coords[b], coords[c]);
        coords.push([(pa[0] + pb[0] + pc[0]) / 3.0, (pa[1] + pb[1] + pc[1]) / 3.0]);
        faces[fi] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    for _ in 0..flips {
        let a = rng.gen_range(0..n);
        let b = rot[a][rng.gen_range(0..rot[a].len())];
        flip(&mut rot, a, b);
    }
    PlaneGraph::from_rotations(rot)
        .and_then(|g| g.with_coords(coords))
        .expect("triangulation embedding is valid")
}

fn cyclic_next(list: &[usize], x: usize) -> usize {
    let i = list.iter().position(|&y| y == x).expect("neighbour present");
    list[(i + 1) % list.len()]
}

/// Replaces edge `ab` by the other diagonal `cd` of its two triangles.
fn flip(rot: &mut [Vec<usize>], a: usize, b: usize) -> bool {
    if rot[a].len() <= 3 || rot[b].len() <= 3 {
        return false;
    }
    let c = cyclic_next(&rot[b], a);
    let d = cyclic_next(&rot[a], b);
    if c == d || rot[c].contains(&d) {
        return false;
    }
    rot[a].retain(|&x| x != b);
    rot[b].retain(|&x| x != a);
    let i = rot[c].iter().position(|&x| x == b).expect("face corner");
    rot[c].insert(i + 1, d);
    let j = rot[d].iter().position(|&x| x == a).expect("face corner");
    rot[d].insert(j + 1, c);
    true
}
