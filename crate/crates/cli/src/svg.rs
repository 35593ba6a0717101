//! SVG drawings from stored vertex positions.

use std::fmt::Write as _;

use planar_cluster::pipeline::Colour;
use planar_cluster::PlaneGraph;

fn fill(c: Option<Colour>) -> &'static str {
    match c {
        Some(Colour::Red) => "#d62728",
        Some(Colour::Yellow) => "#e6b400",
        Some(Colour::Blue) => "#1f77b4",
        None => "#7f7f7f",
    }
}

/// Straight-line drawing scaled into a 800×800 box. `None` when the graph has no positions.
pub fn render(g: &PlaneGraph, colours: Option<&[Option<Colour>]>) -> Option<String> {
    let cs = g.coords()?;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in cs {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let (size, margin) = (800.0, 20.0);
    let scale = (size - 2.0 * margin) / span;
    let at = |v: usize| {
        let [x, y] = cs[v];
        (margin + (x - lo[0]) * scale, margin + (hi[1] - y) * scale)
    };
    let radius = (4.0 * 30.0 / (g.vertex_count().max(1) as f64).sqrt()).clamp(1.0, 6.0);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n<g stroke=\"#444\" stroke-width=\"0.6\">\n"
    );
    for (u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        let _ = writeln!(out, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>");
    }
    out.push_str("</g>\n<g stroke=\"#000\" stroke-width=\"0.3\">\n");
    for v in 0..g.vertex_count() {
        let (x, y) = at(v);
        let c = colours.and_then(|cs| cs.get(v).copied().flatten());
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{radius:.2}\" fill=\"{}\"/>", fill(c));
    }
    out.push_str("</g>\n</svg>\n");
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use planar_cluster::generators::gen_grid;

    #[test]
    fn needs_positions() {
        assert!(render(&PlaneGraph::empty(2), None).is_none());
        let svg = render(&gen_grid(3), Some(&[Some(Colour::Red); 9])).unwrap();
        assert_eq!(svg.matches("<line").count(), 12);
        assert_eq!(svg.matches("#d62728").count(), 9);
    }
}
