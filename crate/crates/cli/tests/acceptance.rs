//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any of them fails. Run with `cargo test --test acceptance`.

use std::collections::VecDeque;
use std::time::Instant;

use planar_cluster::generators::{gen_fan_apex, gen_grid, gen_random_triangulation, grid_rowcol_separator};
use planar_cluster::num::le_tol;
use planar_cluster::peel::PeelReport;
use planar_cluster::pipeline::{
    lmst_three_colour, three_colour, verify_clustering, Colour, PipelineParams, ThreeColourReport,
};
use planar_cluster::separators::{balanced_cycle_separator, is_triangulation, q_separator};
use planar_cluster::treewidth::{grid_minor_number_small, tw_exact_small, tw_upper_bound, tw_weight_bound, Graph};
use planar_cluster::{FaceWeighting, PlaneGraph};

const RUNTIME_LIMIT_S: f64 = 60.0;
const ENUMERATION_LIMIT_S: f64 = 10.0;
const RATIO_SPREAD: f64 = 4.0;
const TW_FACTOR: f64 = 3.0;
const EXACT_MAX_VERTICES: usize = 15;
const MIN_SMALL_FIXTURES: usize = 200;
const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail }
    }
}

struct Run {
    label: String,
    n: usize,
    report: ThreeColourReport,
}

/// Largest monochromatic component per colour, by plain BFS.
fn colour_maxima(g: &PlaneGraph, colours: &[Colour]) -> [usize; 3] {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut best = [0; 3];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for u in g.neighbors(v) {
                if !seen[u] && colours[u] == colours[s] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        let i = Colour::ALL.iter().position(|&c| c == colours[s]).unwrap();
        best[i] = best[i].max(size);
    }
    best
}

/// Largest component of `g` minus the vertices in `removed`, on bitmasks.
fn largest_without(adj: &[u32], removed: u32) -> u32 {
    let n = adj.len();
    let mut left = ((1u64 << n) - 1) as u32 & !removed;
    let mut best = 0;
    while left != 0 {
        let mut comp = 1u32 << left.trailing_zeros();
        loop {
            let mut grown = comp;
            let mut m = comp;
            while m != 0 {
                grown |= adj[m.trailing_zeros() as usize] & !removed;
                m &= m - 1;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        best = best.max(comp.count_ones());
        left &= !comp;
    }
    best
}

fn adjacency_masks(g: &PlaneGraph) -> Vec<u32> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).fold(0, |m, u| m | 1 << u)).collect()
}

fn brute_min_q_separator(adj: &[u32], q: usize) -> usize {
    let n = adj.len();
    let mut best = n;
    for removed in 0u32..1 << n {
        let k = removed.count_ones() as usize;
        if k < best && largest_without(adj, removed) as usize <= q {
            best = k;
        }
    }
    best
}

fn criterion_1(runs: &mut Vec<Run>) -> Outcome {
    let mut fixtures: Vec<(String, Box<dyn Fn() -> PlaneGraph>)> = Vec::new();
    for k in 4..=40 {
        fixtures.push((format!("grid {k}"), Box::new(move || gen_grid(k))));
    }
    for k in 2..=8 {
        fixtures.push((format!("fan {k}"), Box::new(move || gen_fan_apex(k))));
    }
    for n in [100, 1_000, 10_000, 100_000] {
        for seed in SEEDS {
            fixtures.push((format!("tri {n} seed {seed}"), Box::new(move || gen_random_triangulation(n, seed))));
        }
    }
    let mut failures = Vec::new();
    let mut slowest = 0.0f64;
    for (label, make) in &fixtures {
        let g = make();
        let n = g.vertex_count();
        let start = Instant::now();
        let (col, report) = match three_colour(&g, PipelineParams::defaults(n)) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let secs = start.elapsed().as_secs_f64();
        if n >= 100_000 {
            slowest = slowest.max(secs);
            if secs > RUNTIME_LIMIT_S {
                failures.push(format!("{label}: {secs:.1} s"));
            }
        }
        let q = 16.0 * (n as f64).powf(4.0 / 9.0);
        let [red, yellow, blue] = colour_maxima(&g, &col.assignment);
        let yellow_cap = report.s1_size + report.s2_size;
        let verified = verify_clustering(&g, &col).ok();
        let agrees = verified.as_ref().is_some_and(|m| {
            m.get(&Colour::Red).copied().unwrap_or(0) == red
                && m.get(&Colour::Yellow).copied().unwrap_or(0) == yellow
                && m.get(&Colour::Blue).copied().unwrap_or(0) == blue
        });
        if !(red as f64 <= q && blue as f64 <= q && yellow <= yellow_cap && agrees && report.hard_invariants_hold()) {
            failures.push(format!("{label}: red {red} blue {blue} yellow {yellow} (q {q:.1}, |S1|+|S2| {yellow_cap})"));
        }
        runs.push(Run { label: label.clone(), n, report });
    }
    let detail = if failures.is_empty() {
        format!(
            "hard clustering invariants on {} fixtures; slowest n=10^5 run {slowest:.1} s (limit {RUNTIME_LIMIT_S} s)",
            fixtures.len()
        )
    } else {
        format!("{} failures: {}", failures.len(), failures.join("; "))
    };
    Outcome::new(failures.is_empty(), detail)
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let min = values.iter().copied().fold(f64::MAX, f64::min);
    max / min
}

fn criterion_2(runs: &[Run]) -> Outcome {
    let sizes = [1_000usize, 3_000, 10_000, 30_000, 100_000];
    let mut main = Vec::new();
    let mut lmst = Vec::new();
    let mut means = Vec::new();
    for &n in &sizes {
        let mut main_n = Vec::new();
        let mut lmst_n = Vec::new();
        for seed in SEEDS {
            let g = gen_random_triangulation(n, seed);
            let label = format!("tri {n} seed {seed}");
            let ratio = match runs.iter().find(|r| r.label == label) {
                Some(r) => r.report.ratio,
                None => match three_colour(&g, PipelineParams::defaults(n)) {
                    Ok((_, r)) => r.ratio,
                    Err(e) => return Outcome::new(false, format!("{label}: {e}")),
                },
            };
            main_n.push(ratio);
            match lmst_three_colour(&g) {
                Ok((col, _)) => lmst_n.push(col.clustering as f64 / (n as f64).sqrt()),
                Err(e) => return Outcome::new(false, format!("{label}: {e}")),
            }
        }
        let avg = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        means.push(format!("n={n} {:.2}/{:.2}", avg(&main_n), avg(&lmst_n)));
        main.extend(main_n);
        lmst.extend(lmst_n);
    }
    let (sm, sl) = (spread(&main), spread(&lmst));
    Outcome::new(
        sm <= RATIO_SPREAD && sl <= RATIO_SPREAD,
        format!(
            "max/min of clustering/n^(4/9) {sm:.2}, of lmst clustering/n^(1/2) {sl:.2} (limit {RATIO_SPREAD}); means {}",
            means.join(", ")
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut graphs: Vec<(String, PlaneGraph)> = Vec::new();
    for k in [8, 16, 32, 64, 128] {
        graphs.push((format!("grid {k}"), gen_grid(k)));
    }
    for n in [1_000, 10_000, 100_000] {
        for seed in &SEEDS[..3] {
            graphs.push((format!("tri {n} seed {seed}"), gen_random_triangulation(n, *seed)));
        }
    }
    let mut runs = 0;
    let mut worst_c = 0.0f64;
    let mut worst_fill = 0.0f64;
    let mut failures = Vec::new();
    for (label, g) in &graphs {
        let n = g.vertex_count();
        for q in [2.0, 8.0, 32.0, 16.0 * (n as f64).powf(4.0 / 9.0)] {
            runs += 1;
            let r = match q_separator(g, q) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{label} q={q:.1}: {e}"));
                    continue;
                }
            };
            let mut removed = vec![false; n];
            for &v in &r.vertices {
                removed[v] = true;
            }
            let largest = g.components_without(&removed).max_size();
            let bound = r.size_bound(n);
            worst_c = worst_c.max(r.c_impl);
            worst_fill = worst_fill.max(r.vertices.len() as f64 / bound);
            if !(le_tol(r.vertices.len() as f64, bound) && r.levels_ok() && largest as f64 <= q) {
                failures.push(format!("{label} q={q:.1}: |S| {} bound {bound:.1} levels {}", r.vertices.len(), r.levels_ok()));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{runs} runs within the scaled size bound with level invariants; largest c_impl {worst_c:.3}, largest |S|/bound {worst_fill:.3}")
    } else {
        failures.join("; ")
    };
    Outcome::new(failures.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for k in [8usize, 16, 32] {
        let g = Graph::from_plane(&gen_grid(k));
        let n = (k * k) as f64;
        for q in [4.0f64, 16.0, 64.0] {
            let s = q.sqrt().ceil() as usize;
            let sep = grid_rowcol_separator(k, s);
            let size_bound = 2.0 * n / q.sqrt() + 2.0 * k as f64;
            let (tw, _) = tw_upper_bound(&g.induced(&sep));
            let target = (n / q).sqrt();
            let ok = sep.len() as f64 <= size_bound && (tw as f64) <= TW_FACTOR * target && (tw as f64) >= target / TW_FACTOR;
            pass &= ok;
            rows.push(format!("k={k} q={q}: |S| {}/{size_bound:.0} tw {tw} vs {target:.1}{}", sep.len(), if ok { "" } else { " FAIL" }));
        }
    }
    Outcome::new(pass, rows.join(", "))
}

fn small_fixtures() -> Vec<(String, PlaneGraph)> {
    let mut out = Vec::new();
    for n in 4..=12 {
        for seed in 0..15 {
            out.push((format!("tri {n} seed {seed}"), gen_random_triangulation(n, seed)));
        }
    }
    for seed in 0..30u64 {
        let g = gen_random_triangulation(15, 100 + seed);
        let drop = (seed % 5) as usize;
        let keep: Vec<usize> = (0..15).filter(|&v| !(0..drop).any(|i| v == (seed as usize * 7 + i * 4) % 15)).collect();
        out.push((format!("tri 15 seed {} minus {drop}", 100 + seed), g.induced_subgraph(&keep).unwrap().graph));
    }
    let g4 = gen_grid(4);
    for seed in 0..20usize {
        let keep: Vec<usize> = (0..16).filter(|&v| v != seed % 16 && v != (seed * 5 + 3) % 16 && v != (seed * 11) % 16).collect();
        out.push((format!("grid 4 cut {seed}"), g4.induced_subgraph(&keep).unwrap().graph));
    }
    out.push(("grid 2".into(), gen_grid(2)));
    out.push(("grid 3".into(), gen_grid(3)));
    out.push(("fan 2".into(), gen_fan_apex(2)));
    for n in 2..=12usize {
        let rot = (0..n).map(|v| [v.checked_sub(1), (v + 1 < n).then_some(v + 1)].into_iter().flatten().collect()).collect();
        out.push((format!("path {n}"), PlaneGraph::from_rotations(rot).unwrap()));
    }
    for n in 3..=12usize {
        let rot = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
        out.push((format!("cycle {n}"), PlaneGraph::from_rotations(rot).unwrap()));
    }
    out
}

fn criterion_5() -> Outcome {
    let fixtures = small_fixtures();
    let mut failures = Vec::new();
    let (mut tri_count, mut weight_checks, mut sep_checks, mut slack_b) = (0, 0, 0, i64::MAX);
    for (label, g) in &fixtures {
        let n = g.vertex_count();
        assert!(n <= EXACT_MAX_VERTICES);
        let h = Graph::from_plane(g);
        let exact = tw_exact_small(&h, EXACT_MAX_VERTICES).unwrap();
        let (upper, _) = tw_upper_bound(&h);
        if exact > upper {
            failures.push(format!("(a) {label}: exact {exact} > upper {upper}"));
        }
        let gm = grid_minor_number_small(&h).unwrap() as i64;
        slack_b = slack_b.min(6 * gm + 1 - exact);
        if exact > 6 * gm + 1 {
            failures.push(format!("(b) {label}: tw {exact} gm {gm}"));
        }
        let weights: Vec<f64> = (0..g.face_count()).map(|f| 1.0 + ((f * 7 + 3) % 5) as f64).collect();
        let w_min = (0..n)
            .map(|v| g.incident_faces(v).unwrap().iter().map(|&f| weights[f]).sum::<f64>())
            .fold(f64::MAX, f64::min);
        let total: f64 = weights.iter().sum();
        if let Ok(bound) = tw_weight_bound(0, total, w_min) {
            weight_checks += 1;
            if exact as f64 > bound {
                failures.push(format!("(c) {label}: tw {exact} > {bound:.2}"));
            }
        }
        if n >= 4 && is_triangulation(g) {
            tri_count += 1;
            for w in [vec![1.0; g.face_count()], weights.clone()] {
                let sep = balanced_cycle_separator(g, &FaceWeighting::new(w).unwrap()).unwrap();
                if sep.noose.vertices.len() as i64 > 4 * gm + 4 {
                    failures.push(format!("(d) {label}: cycle {} gm {gm}", sep.noose.vertices.len()));
                }
            }
        }
        let adj = adjacency_masks(g);
        for q in [1usize, 2, 3, n / 3] {
            if q == 0 {
                continue;
            }
            sep_checks += 1;
            let ours = q_separator(g, q as f64).unwrap().vertices.len();
            let best = brute_min_q_separator(&adj, q);
            if best > ours {
                failures.push(format!("(e) {label} q={q}: brute {best} > {ours}"));
            }
        }
    }
    let enough = fixtures.len() >= MIN_SMALL_FIXTURES;
    let detail = if failures.is_empty() {
        format!(
            "{} fixtures (at least {MIN_SMALL_FIXTURES}), {tri_count} triangulations, {weight_checks} weight-bound checks, {sep_checks} exhaustive separator checks; smallest slack in tw <= 6gm+1 is {slack_b}",
            fixtures.len()
        )
    } else {
        failures.join("; ")
    };
    Outcome::new(enough && failures.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let g = gen_fan_apex(2);
    let n = g.vertex_count();
    let mut colours = vec![Colour::Red; n];
    let mut best = usize::MAX;
    let mut count = 0u32;
    for code in 0..3u32.pow(n as u32) {
        let mut c = code;
        for slot in colours.iter_mut() {
            *slot = Colour::ALL[(c % 3) as usize];
            c /= 3;
        }
        best = best.min(colour_maxima(&g, &colours).into_iter().max().unwrap());
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        best == 2 && secs <= ENUMERATION_LIMIT_S,
        format!("{count} colourings of the 9-vertex fan-apex graph, minimum clustering {best}, {secs:.2} s (limit {ENUMERATION_LIMIT_S} s)"),
    )
}

struct PeelTally {
    iterations: usize,
    failures: Vec<String>,
    literal_exceptions: usize,
}

fn check_peel(label: &str, peel: &PeelReport, literal: bool, tally: &mut PeelTally) {
    let big_n = peel.params.n_total;
    for it in &peel.iterations {
        tally.iterations += 1;
        let c = &it.component;
        let split = it.children.iter().all(|ch| le_tol(ch.n_c, 2.0 / 3.0 * c.n_c));
        let growth = it.children.iter().all(|ch| ch.x_c <= c.x_c + 1);
        let decay_literal = le_tol(c.n_c, (2.0f64 / 3.0).powi(c.x_c as i32) * big_n);
        let decay_rooted = le_tol(c.n_c, (2.0f64 / 3.0).powi(c.x_c as i32 - it.x_base as i32) * big_n);
        if !decay_literal {
            tally.literal_exceptions += 1;
        }
        let decay = if literal { decay_literal } else { decay_rooted };
        if !(split && growth && decay) {
            tally.failures.push(format!("{label}: split {split} growth {growth} decay {decay}"));
        }
    }
    if peel.final_max_tw as f64 >= peel.params.t {
        tally.failures.push(format!("{label}: final tw {} >= t {}", peel.final_max_tw, peel.params.t));
    }
}

fn criterion_7(runs: &[Run]) -> (Outcome, Outcome) {
    let mut tally = PeelTally { iterations: 0, failures: Vec::new(), literal_exceptions: 0 };
    let mut peeled = 0;
    for r in runs {
        if let Some(peel) = &r.report.peel {
            peeled += 1;
            check_peel(&r.label, peel, true, &mut tally);
        }
        if let Some(tw) = r.report.tw_g1 {
            if tw as f64 >= r.report.params.t {
                tally.failures.push(format!("{}: tw(G1 - S1) {tw} >= t", r.label));
            }
        }
    }
    let main = Outcome::new(
        tally.failures.is_empty(),
        if tally.failures.is_empty() {
            format!(
                "literal invariants on {peeled} default runs: {} peel iterations, all final components below t",
                tally.iterations
            )
        } else {
            tally.failures.join("; ")
        },
    );

    let mut forced = PeelTally { iterations: 0, failures: Vec::new(), literal_exceptions: 0 };
    let mut graphs: Vec<(String, PlaneGraph)> = vec![("grid 40".into(), gen_grid(40))];
    for n in [2_000, 5_000] {
        for seed in &SEEDS[..3] {
            graphs.push((format!("tri {n} seed {seed}"), gen_random_triangulation(n, *seed)));
        }
    }
    for (label, g) in &graphs {
        let params = PipelineParams { q: 10.0, t: 2.5, allow_low_t: true, ..PipelineParams::defaults(g.vertex_count()) };
        match three_colour(g, params) {
            Ok((_, r)) => {
                if !r.hard_invariants_hold() {
                    forced.failures.push(format!("{label}: clustering invariants"));
                }
                if let Some(peel) = &r.peel {
                    check_peel(label, peel, false, &mut forced);
                }
            }
            Err(e) => forced.failures.push(format!("{label}: {e}")),
        }
    }
    let extra = Outcome::new(
        forced.failures.is_empty() && forced.iterations > 0,
        if forced.failures.is_empty() {
            format!(
                "forced t=2.5 on {} graphs: {} iterations, split/growth/decay relative to the component of G1 and final tw hold; {} iterations break the decay bound measured from the whole of G1 (G1 disconnected)",
                graphs.len(),
                forced.iterations,
                forced.literal_exceptions
            )
        } else {
            forced.failures.join("; ")
        },
    );
    (main, extra)
}

fn cli(args: &[&str], dir: &std::path::Path) -> (i32, Vec<u8>) {
    let mut full = vec!["planar-cluster".to_string()];
    full.extend(args.iter().map(|a| {
        if a.contains('.') && !a.starts_with('-') && a.parse::<f64>().is_err() {
            dir.join(a).to_string_lossy().into_owned()
        } else {
            a.to_string()
        }
    }));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = planar_cluster_cli::run(full, &mut out, &mut err);
    (code, out)
}

fn criterion_8(runs: &[Run]) -> Outcome {
    let script: &[&[&str]] = &[
        &["gen", "tri", "--n", "3000", "--seed", "7", "--out", "t.plan"],
        &["gen", "grid", "--k", "12", "--out", "g.plan"],
        &["colour", "--algo", "main", "--in", "t.plan", "--out", "main.txt", "--report", "main.json"],
        &["colour", "--algo", "lmst3", "--in", "t.plan", "--out", "lmst.txt", "--report", "lmst.json"],
        &["colour", "--algo", "two", "--in", "g.plan", "--out", "two.txt", "--report", "two.json"],
        &["separate", "--q", "16", "--in", "t.plan", "--minimal", "--out", "s.txt", "--report", "s.json", "--td", "t.td"],
        &["svg", "--graph", "g.plan", "--colouring", "two.txt", "--out", "g.svg"],
        &["bench", "--family", "grid,fan", "--sizes", "3,5", "--csv", "bench.csv"],
        &["bench", "--family", "tri", "--sizes", "300,2000", "--seeds", "1,2", "--csv", "bench_tri.csv"],
    ];
    let files = [
        "t.plan", "g.plan", "main.txt", "main.json", "lmst.txt", "lmst.json", "two.txt", "two.json", "s.txt", "s.json",
        "t.td", "g.svg", "bench.csv", "bench_tri.csv",
    ];
    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let mut outputs = Vec::new();
        for args in script {
            let (code, stdout) = cli(args, dir.path());
            if code != 0 {
                return Outcome::new(false, format!("`{}` exited {code}", args.join(" ")));
            }
            outputs.push(stdout);
        }
        for f in files {
            outputs.push(std::fs::read(dir.path().join(f)).unwrap_or_default());
        }
        snapshots.push(outputs);
    }
    let cli_same = snapshots[0] == snapshots[1];
    let mut lib_same = true;
    for r in runs.iter().filter(|r| r.n == 10_000) {
        let seed: u64 = r.label.rsplit(' ').next().unwrap().parse().unwrap();
        let again = three_colour(&gen_random_triangulation(r.n, seed), PipelineParams::defaults(r.n)).unwrap().1;
        lib_same &= again == r.report;
    }
    Outcome::new(
        cli_same && lib_same,
        format!(
            "{} CLI outputs byte-identical across two runs: {cli_same}; library reports for n=10^4 identical on rerun: {lib_same}",
            files.len() + script.len()
        ),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut all = true;
    let mut report = |name: &str, o: Outcome, secs: f64| {
        all &= o.pass;
        println!("criterion {name}: {} {} [{secs:.1} s]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };
    let mut runs = Vec::new();
    let t = Instant::now();
    let o = criterion_1(&mut runs);
    report("1", o, t.elapsed().as_secs_f64());
    let t = Instant::now();
    report("2", criterion_2(&runs), t.elapsed().as_secs_f64());
    let t = Instant::now();
    report("3", criterion_3(), t.elapsed().as_secs_f64());
    let t = Instant::now();
    report("4", criterion_4(), t.elapsed().as_secs_f64());
    let t = Instant::now();
    report("5", criterion_5(), t.elapsed().as_secs_f64());
    let t = Instant::now();
    report("6", criterion_6(), t.elapsed().as_secs_f64());
    let t = Instant::now();
    let (main7, forced7) = criterion_7(&runs);
    let secs = t.elapsed().as_secs_f64();
    report("7", main7, secs);
    report("7 (forced low t)", forced7, secs);
    let t = Instant::now();
    report("8", criterion_8(&runs), t.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
