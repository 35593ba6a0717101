//! Batch runs over generated families, one CSV row per (family, n, seed, algo).

use std::time::Instant;

use clap::ValueEnum;
use planar_cluster::generators::{gen_fan_apex, gen_grid, gen_random_triangulation};
use planar_cluster::num::powf;
use planar_cluster::pipeline::{lmst_three_colour, three_colour, two_colour, PipelineParams};
use planar_cluster::PlaneGraph;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Grid,
    Fan,
    Tri,
}

impl Family {
    /// Grids and fans take `k`, triangulations take `n`.
    pub fn generate(self, size: usize, seed: u64) -> PlaneGraph {
        match self {
            Family::Grid => gen_grid(size),
            Family::Fan => gen_fan_apex(size),
            Family::Tri => gen_random_triangulation(size, seed),
        }
    }

    pub fn is_random(self) -> bool {
        self == Family::Tri
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Main,
    Lmst3,
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub algo: Algo,
    pub clustering: usize,
    #[serde(rename = "clustering/n^{4/9}")]
    pub ratio: f64,
    #[serde(rename = "|S0|")]
    pub s0: usize,
    #[serde(rename = "|S|")]
    pub s: usize,
    #[serde(rename = "|S1|")]
    pub s1: usize,
    #[serde(rename = "|S2|")]
    pub s2: usize,
    #[serde(rename = "tw_ub(G1)")]
    pub tw_g1: Option<i64>,
    pub runtime_ms: Option<u128>,
    pub flags: String,
}

fn flag(name: &str, held: bool) -> String {
    format!("{name}={}", u8::from(held))
}

pub fn run_one(family: Family, size: usize, seed: u64, algo: Algo, timings: bool) -> planar_cluster::Result<BenchRow> {
    let g = family.generate(size, seed);
    let n = g.vertex_count();
    let start = Instant::now();
    let mut row = BenchRow {
        family,
        n,
        seed,
        algo,
        clustering: 0,
        ratio: 0.0,
        s0: 0,
        s: 0,
        s1: 0,
        s2: 0,
        tw_g1: None,
        runtime_ms: None,
        flags: String::new(),
    };
    match algo {
        Algo::Main => {
            let (col, r) = three_colour(&g, PipelineParams::defaults(n))?;
            row.clustering = col.clustering;
            (row.s0, row.s, row.s1, row.s2, row.tw_g1) = (r.s0_size, r.s_size, r.s1_size, r.s2_size, r.tw_g1);
            let threshold = r.peel.as_ref().map_or(true, |p| p.threshold_met);
            let raised = r.treewidth.as_ref().is_some_and(|t| t.p_raised);
            row.flags = [
                flag("hard", r.hard_invariants_hold()),
                flag("s0_bound", r.s0_within_bound),
                flag("s1_bound", r.s1_within_bound),
                flag("t_threshold", threshold),
                flag("p_raised", raised),
                flag("yellow_le_q", r.yellow_within_q),
            ]
            .join(";");
        }
        Algo::Lmst3 | Algo::Two => {
            let (col, r) = if algo == Algo::Two { two_colour(&g)? } else { lmst_three_colour(&g)? };
            row.clustering = col.clustering;
            (row.s0, row.s, row.s1) = (r.s_size, r.s_size, r.s1_size);
            row.flags = flag("within_bound", r.clustering <= r.bound);
        }
    }
    if timings {
        row.runtime_ms = Some(start.elapsed().as_millis());
    }
    row.ratio = if n == 0 { 0.0 } else { row.clustering as f64 / powf(n as f64, 4.0 / 9.0) };
    Ok(row)
}

/// Every combination, run in parallel, returned sorted by (family, n, seed, algo).
pub fn run_bench(
    families: &[Family],
    sizes: &[usize],
    seeds: &[u64],
    algos: &[Algo],
    timings: bool,
) -> planar_cluster::Result<Vec<BenchRow>> {
    let mut jobs = Vec::new();
    for &f in families {
        for &size in sizes {
            let seeds: &[u64] = if f.is_random() { seeds } else { &[0] };
            for &seed in seeds {
                for &a in algos {
                    jobs.push((f, size, seed, a));
                }
            }
        }
    }
    let mut rows =
        jobs.into_par_iter().map(|(f, size, seed, a)| run_one(f, size, seed, a, timings)).collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| (a.family, a.n, a.seed, a.algo).cmp(&(b.family, b.n, b.seed, b.algo)));
    Ok(rows)
}

pub fn write_csv(rows: &[BenchRow], out: impl std::io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
