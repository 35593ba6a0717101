use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{Graph, TreeDecomposition};

/// Graphs up to this many vertices use min-fill; larger ones use min-degree.
pub const MIN_FILL_LIMIT: usize = 3000;

struct Elimination {
    adj: Vec<Vec<usize>>,
    gone: Vec<bool>,
}

impl Elimination {
    fn new(g: &Graph) -> Self {
        Elimination { adj: (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(), gone: vec![false; g.vertex_count()] }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn fill(&self, v: usize) -> usize {
        let nb = &self.adj[v];
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !self.adjacent(a, b) {
                    missing += 1;
                }
            }
        }
        missing
    }

    /// Eliminates `v`, turning its neighbourhood into a clique; returns it.
    fn eliminate(&mut self, v: usize) -> Vec<usize> {
        let nb = core::mem::take(&mut self.adj[v]);
        self.gone[v] = true;
        let mut merged = Vec::new();
        for &u in &nb {
            merged.clear();
            let (a, b) = (&self.adj[u], &nb);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let x = match (a.get(i), b.get(j)) {
                    (Some(&x), Some(&y)) if x == y => {
                        i += 1;
                        j += 1;
                        x
                    }
                    (Some(&x), Some(&y)) if x < y => {
                        i += 1;
                        x
                    }
                    (Some(_), Some(&y)) => {
                        j += 1;
                        y
                    }
                    (Some(&x), None) => {
                        i += 1;
                        x
                    }
                    (None, Some(&y)) => {
                        j += 1;
                        y
                    }
                    (None, None) => unreachable!(),
                };
                if x != u && x != v {
                    merged.push(x);
                }
            }
            core::mem::swap(&mut self.adj[u], &mut merged);
        }
        nb
    }
}

fn assemble(n: usize, order: &[usize], bags: Vec<Vec<usize>>) -> TreeDecomposition {
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        let parent = bag.iter().filter(|&&u| u != v).map(|&u| position[u]).min();
        match parent {
            Some(p) => edges.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, edges }
}

/// The decomposition induced by eliminating vertices in `order`.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let mut el = Elimination::new(g);
    let bags = order
        .iter()
        .map(|&v| {
            let mut bag = el.eliminate(v);
            bag.push(v);
            bag.sort_unstable();
            bag
        })
        .collect();
    assemble(g.vertex_count(), order, bags)
}

/// Greedy elimination (min-fill, or min-degree above [`MIN_FILL_LIMIT`]
/// vertices), ties broken by degree and then by vertex id.
pub fn tw_upper_bound(g: &Graph) -> (i64, TreeDecomposition) {
    let n = g.vertex_count();
    let min_fill = n <= MIN_FILL_LIMIT;
    let mut el = Elimination::new(g);
    let key = |el: &Elimination, v: usize| if min_fill { (el.fill(v), el.adj[v].len()) } else { (el.adj[v].len(), 0) };
    let mut version = vec![0u32; n];
    let mut heap = BinaryHeap::new();
    for v in 0..n {
        heap.push(Reverse((key(&el, v), v, 0u32)));
    }
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    let mut touched = vec![false; n];
    let mut dirty = Vec::new();
    while let Some(Reverse((_, v, ver))) = heap.pop() {
        if el.gone[v] || ver != version[v] {
            continue;
        }
        let nb = el.eliminate(v);
        dirty.clear();
        for &u in &nb {
            if !touched[u] {
                touched[u] = true;
                dirty.push(u);
            }
            if min_fill {
                for &x in &el.adj[u] {
                    if !touched[x] {
                        touched[x] = true;
                        dirty.push(x);
                    }
                }
            }
        }
        for &u in &dirty {
            touched[u] = false;
            version[u] += 1;
            heap.push(Reverse((key(&el, u), u, version[u])));
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        order.push(v);
        bags.push(bag);
    }
    let td = assemble(n, &order, bags);
    (td.width(), td)
}

#[cfg(test)]
mod tests {
    use super::super::validate_td;
    use super::*;
    use crate::generators::{gen_grid, gen_random_triangulation};

    #[test]
    fn known_widths() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
        assert_eq!(tw_upper_bound(&tree).0, 1);
        let cycle = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        assert_eq!(tw_upper_bound(&cycle).0, 2);
        let (w, td) = tw_upper_bound(&Graph::from_plane(&gen_grid(3)));
        assert_eq!(w, 3);
        assert!(validate_td(&Graph::from_plane(&gen_grid(3)), &td).is_ok());
        assert_eq!(tw_upper_bound(&Graph::from_edges(0, [])).0, -1);
        assert_eq!(tw_upper_bound(&Graph::from_edges(3, [])).0, 0);
    }

    #[test]
    fn decompositions_are_valid() {
        for g in [Graph::from_plane(&gen_grid(7)), Graph::from_plane(&gen_random_triangulation(300, 1))] {
            let (w, td) = tw_upper_bound(&g);
            assert!(validate_td(&g, &td).is_ok());
            assert_eq!(w, td.width());
            let order: Vec<usize> = (0..g.vertex_count()).rev().collect();
            assert!(validate_td(&g, &decomposition_from_order(&g, &order)).is_ok());
        }
    }
}
