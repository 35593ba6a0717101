//! Text formats: `.plan` embeddings, colourings and `.td` decompositions.

use std::fmt::Write as _;

use planar_cluster::pipeline::{Colour, Colouring};
use planar_cluster::treewidth::TreeDecomposition;
use planar_cluster::PlaneGraph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Embedding(#[from] planar_cluster::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn numbered(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("bad {what} {tok:?}")))
}

/// Parses `planar <n> <m>`, `n` rotation lines `<v>: <u1> ... <uk>` (clockwise)
/// and an optional `coords` section of `<v> <x> <y>` lines.
pub fn parse_plan(text: &str) -> Result<PlaneGraph, FormatError> {
    let mut lines = numbered(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [kw, n, m] = head[..] else {
        return Err(syntax(hl, "expected `planar <n> <m>`"));
    };
    if kw != "planar" {
        return Err(syntax(hl, "expected `planar <n> <m>`"));
    }
    let n: usize = parse_num(hl, n, "vertex count")?;
    let m: usize = parse_num(hl, m, "edge count")?;
    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut coords: Option<Vec<Option<[f64; 2]>>> = None;
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        if line == "coords" {
            if coords.is_some() {
                return Err(syntax(ln, "repeated coords section"));
            }
            coords = Some(vec![None; n]);
            continue;
        }
        if let Some(cs) = coords.as_mut() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [v, x, y] = toks[..] else {
                return Err(syntax(ln, "expected `<v> <x> <y>`"));
            };
            let v: usize = parse_num(ln, v, "vertex")?;
            let x: f64 = parse_num(ln, x, "coordinate")?;
            let y: f64 = parse_num(ln, y, "coordinate")?;
            let slot = cs.get_mut(v).ok_or_else(|| syntax(ln, format!("vertex {v} out of range")))?;
            if slot.replace([x, y]).is_some() {
                return Err(syntax(ln, format!("vertex {v} has two positions")));
            }
            continue;
        }
        let (v, rest) = line.split_once(':').ok_or_else(|| syntax(ln, "expected `<v>: <neighbours>`"))?;
        let v: usize = parse_num(ln, v.trim(), "vertex")?;
        let rot = rest.split_whitespace().map(|t| parse_num(ln, t, "neighbour")).collect::<Result<Vec<usize>, _>>()?;
        let slot = rotations.get_mut(v).ok_or_else(|| syntax(ln, format!("vertex {v} out of range")))?;
        if slot.replace(rot).is_some() {
            return Err(syntax(ln, format!("vertex {v} listed twice")));
        }
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(last, format!("missing rotation of vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let degree_sum: usize = rotations.iter().map(Vec::len).sum();
    if degree_sum != 2 * m {
        return Err(syntax(hl, format!("header says {m} edges, rotations have {degree_sum} entries")));
    }
    let g = PlaneGraph::from_rotations(rotations)?;
    match coords {
        None => Ok(g),
        Some(cs) => {
            let cs = cs
                .into_iter()
                .enumerate()
                .map(|(v, c)| c.ok_or_else(|| syntax(last, format!("missing position of vertex {v}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(g.with_coords(cs)?)
        }
    }
}

pub fn write_plan(g: &PlaneGraph) -> String {
    let mut out = format!("planar {} {}\n", g.vertex_count(), g.edge_count());
    for (v, rot) in g.to_rotations().iter().enumerate() {
        let _ = write!(out, "{v}:");
        for u in rot {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    if let Some(cs) = g.coords() {
        out.push_str("coords\n");
        for (v, [x, y]) in cs.iter().enumerate() {
            let _ = writeln!(out, "{v} {x} {y}");
        }
    }
    out
}

/// One `<v> <colour>` line per vertex. Vertices may be missing; the verifier
/// reports them.
pub fn parse_colouring(text: &str, n: usize) -> Result<Vec<Option<Colour>>, FormatError> {
    let mut out = vec![None; n];
    for (ln, line) in numbered(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [v, c] = toks[..] else {
            return Err(syntax(ln, "expected `<v> <colour>`"));
        };
        let v: usize = parse_num(ln, v, "vertex")?;
        let c: Colour = c.parse().map_err(|e: planar_cluster::pipeline::UnknownColour| syntax(ln, e.to_string()))?;
        let slot = out.get_mut(v).ok_or_else(|| syntax(ln, format!("vertex {v} out of range")))?;
        if slot.replace(c).is_some() {
            return Err(syntax(ln, format!("vertex {v} coloured twice")));
        }
    }
    Ok(out)
}

pub fn write_colouring(col: &Colouring) -> String {
    let mut out = String::new();
    for (v, c) in col.assignment.iter().enumerate() {
        let _ = writeln!(out, "{v} {c}");
    }
    out
}

/// `s td <bags> <width+1> <n>`, then `b <i> <vertices>` and `<i> <j>` lines,
/// all 1-based.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for (a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let ["s", "td", bags, _, n] = head[..] else {
        return Err(syntax(hl, "expected `s td <bags> <max bag> <n>`"));
    };
    let bag_count: usize = parse_num(hl, bags, "bag count")?;
    let n: usize = parse_num(hl, n, "vertex count")?;
    let mut td = TreeDecomposition { bags: vec![Vec::new(); bag_count], edges: Vec::new() };
    let one_based = |ln: usize, t: &str, limit: usize, what: &str| -> Result<usize, FormatError> {
        let x: usize = parse_num(ln, t, what)?;
        if x == 0 || x > limit {
            return Err(syntax(ln, format!("{what} {x} out of range")));
        }
        Ok(x - 1)
    };
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "b" {
            let i = one_based(ln, toks.get(1).copied().unwrap_or(""), bag_count, "bag")?;
            let mut bag = toks[2..].iter().map(|t| one_based(ln, t, n, "vertex")).collect::<Result<Vec<_>, _>>()?;
            bag.sort_unstable();
            td.bags[i] = bag;
        } else if let [a, b] = toks[..] {
            td.edges.push((one_based(ln, a, bag_count, "bag")?, one_based(ln, b, bag_count, "bag")?));
        } else {
            return Err(syntax(ln, "expected a bag or a tree edge"));
        }
    }
    Ok((td, n))
}
