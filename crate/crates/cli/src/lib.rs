//! File formats, rendering, benchmarks and the command-line driver for
//! `planar-cluster`.

pub mod bench;
pub mod formats;
pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use planar_cluster::generators::{gen_fan_apex, gen_grid, gen_random_triangulation_with_flips};
use planar_cluster::pipeline::{
    lmst_three_colour, three_colour, two_colour, verify_assignment, Colouring, PipelineParams,
};
use planar_cluster::separators::{minimalize_q_separator, q_separator};
use planar_cluster::treewidth::{tw_upper_bound, Graph};
use planar_cluster::PlaneGraph;
use serde::Serialize;
use thiserror::Error;

use bench::{Algo, Family};
use formats::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Algorithm(#[from] planar_cluster::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Algorithm(_) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "planar-cluster", version, about = "Clustered colourings of plane graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a plane graph.
    Gen {
        family: Family,
        /// Side length of grids, fan count of fan-apex graphs.
        #[arg(long)]
        k: Option<usize>,
        /// Vertex count of random triangulations.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random edge flips after stacking (defaults to n).
        #[arg(long)]
        flips: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colour a plane graph.
    Colour {
        #[arg(long, value_enum, default_value_t = Algo::Main)]
        algo: Algo,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        /// Peel even when t is below the peeling threshold.
        #[arg(long)]
        allow_low_t: bool,
        /// Fail instead of raising p when the treewidth separator cannot meet it.
        #[arg(long)]
        no_raise_p: bool,
        /// Add wall-clock timings to the report.
        #[arg(long)]
        timings: bool,
    },
    /// Compute a q-separator.
    Separate {
        #[arg(long)]
        q: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop vertices that are not needed.
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write a heuristic tree decomposition of the graph.
        #[arg(long)]
        td: Option<PathBuf>,
    },
    /// Check a graph file and, optionally, a colouring of it.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
        /// Fail if any monochromatic component is larger.
        #[arg(long)]
        max_component: Option<f64>,
    },
    /// Run colourings over generated families and write a CSV table.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        family: Vec<Family>,
        /// k for grids and fans, n for triangulations.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algo::Main, Algo::Lmst3, Algo::Two])]
        algo: Vec<Algo>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Draw a graph with stored positions as SVG.
    Svg {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_graph(path: &Path) -> Result<PlaneGraph> {
    formats::parse_plan(&read(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn std::io::Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ColourReport<R: Serialize> {
    algo: Algo,
    n: usize,
    clustering: usize,
    report: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<f64>,
}

#[derive(Serialize)]
struct SeparateReport {
    n: usize,
    q: f64,
    size: usize,
    size_bound: f64,
    c_impl: f64,
    levels_ok: bool,
    minimal: bool,
    largest_component: usize,
}

fn run_command(cmd: Command, stdout: &mut dyn std::io::Write) -> Result<()> {
    match cmd {
        Command::Gen { family, k, n, seed, flips, out } => {
            let g = match (family, k, n) {
                (Family::Grid, Some(k), None) => gen_grid(k),
                (Family::Fan, Some(k), None) => gen_fan_apex(k),
                (Family::Tri, None, Some(n)) => gen_random_triangulation_with_flips(n, seed, flips.unwrap_or(n)),
                (Family::Tri, ..) => return Err(CliError::Usage("`gen tri` takes --n".into())),
                _ => return Err(CliError::Usage("`gen grid` and `gen fan` take --k".into())),
            };
            emit(out.as_deref(), &formats::write_plan(&g), stdout)
        }
        Command::Colour { algo, input, out, report, q, t, p, allow_low_t, no_raise_p, timings } => {
            let g = read_graph(&input)?;
            let n = g.vertex_count();
            let start = Instant::now();
            if algo != Algo::Main && (q.is_some() || t.is_some() || p.is_some()) {
                return Err(CliError::Usage("--q, --t and --p only apply to --algo main".into()));
            }
            let (col, json): (Colouring, String) = match algo {
                Algo::Main => {
                    let mut params = PipelineParams::defaults(n);
                    params.q = q.unwrap_or(params.q);
                    params.t = t.unwrap_or(params.t);
                    params.p = p.unwrap_or(params.p);
                    params.allow_low_t = allow_low_t;
                    params.raise_p = !no_raise_p;
                    let (col, r) = three_colour(&g, params)?;
                    let ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
                    let json = to_json(&ColourReport { algo, n, clustering: col.clustering, report: r, runtime_ms: ms });
                    (col, json)
                }
                Algo::Lmst3 | Algo::Two => {
                    let (col, r) = if algo == Algo::Two { two_colour(&g)? } else { lmst_three_colour(&g)? };
                    let ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
                    let json = to_json(&ColourReport { algo, n, clustering: col.clustering, report: r, runtime_ms: ms });
                    (col, json)
                }
            };
            if let Some(path) = report {
                emit(Some(&path), &json, stdout)?;
            }
            emit(out.as_deref(), &formats::write_colouring(&col), stdout)
        }
        Command::Separate { q, input, out, minimal, report, td } => {
            let g = read_graph(&input)?;
            let sep = q_separator(&g, q)?;
            let s = if minimal { minimalize_q_separator(&g, q, &sep.vertices)? } else { sep.vertices.clone() };
            let text: String = s.iter().map(|v| format!("{v}\n")).collect();
            if let Some(path) = report {
                let r = SeparateReport {
                    n: g.vertex_count(),
                    q,
                    size: s.len(),
                    size_bound: sep.size_bound(g.vertex_count()),
                    c_impl: sep.c_impl,
                    levels_ok: sep.levels_ok(),
                    minimal,
                    largest_component: planar_cluster::separators::max_component_without(&g, &s),
                };
                emit(Some(&path), &to_json(&r), stdout)?;
            }
            if let Some(path) = td {
                let (_, dec) = tw_upper_bound(&Graph::from_plane(&g));
                emit(Some(&path), &formats::write_td(&dec, g.vertex_count()), stdout)?;
            }
            emit(out.as_deref(), &text, stdout)
        }
        Command::Verify { graph, colouring, max_component } => {
            let g = read_graph(&graph)?;
            let mut text = format!("graph ok: {} vertices, {} edges, {} faces\n", g.vertex_count(), g.edge_count(), g.face_count());
            if let Some(path) = colouring {
                let assignment = formats::parse_colouring(&read(&path)?, g.vertex_count())
                    .map_err(|source| CliError::Parse { path: path.clone(), source })?;
                let maxima = verify_assignment(&g, &assignment).map_err(|e| CliError::Verification(e.to_string()))?;
                for (c, m) in &maxima {
                    text.push_str(&format!("{c} {m}\n"));
                }
                let worst = maxima.values().copied().max().unwrap_or(0);
                text.push_str(&format!("clustering {worst}\n"));
                if let Some(limit) = max_component {
                    if worst as f64 > limit {
                        emit(None, &text, stdout)?;
                        return Err(CliError::Verification(format!("clustering {worst} exceeds {limit}")));
                    }
                }
            } else if max_component.is_some() {
                return Err(CliError::Usage("--max-component needs --colouring".into()));
            }
            emit(None, &text, stdout)
        }
        Command::Bench { family, sizes, seeds, algo, csv, timings } => {
            let rows = bench::run_bench(&family, &sizes, &seeds, &algo, timings)?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf).map_err(|e| CliError::Io { path: "<csv>".into(), source: e.into() })?;
            emit(csv.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"), stdout)
        }
        Command::Svg { graph, colouring, out } => {
            let g = read_graph(&graph)?;
            let colours = match colouring {
                Some(path) => Some(
                    formats::parse_colouring(&read(&path)?, g.vertex_count())
                        .map_err(|source| CliError::Parse { path: path.clone(), source })?,
                ),
                None => None,
            };
            let svg = svg::render(&g, colours.as_deref())
                .ok_or_else(|| CliError::Usage(format!("{} has no coordinates to draw", graph.display())))?;
            emit(out.as_deref(), &svg, stdout)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run_command(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

