//! `dsg`: densest-subgraph solvers and benchmark harness.
//!
//! Subcommands: `dsg` (solve one instance), `decompose` (dense
//! decomposition), `bench` (compare algorithms on one input), and
//! `fixture` (emit catalog graphs as edge lists).

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dsg_core::area_convexity::{solve_with_binary_search, AcConfig, ShermanSolver};
use dsg_core::baselines::greedy_pp_pass;
use dsg_core::decomposition::{
    best_set_from_loads, fractional_peel, greedy_init, loads, PracticalSolver, RcdmSolver,
    SweepMode,
};
use dsg_core::fixtures;
use dsg_core::generate::{planted_clique, rmat};
use dsg_core::graph::{parse_edge_list, Graph, VertexSet};
use dsg_core::mwu::MwuSolver;
use dsg_core::primal::{charikar_sweep, construct_primal};

#[derive(Parser)]
#[command(
    name = "dsg",
    version,
    about = "Densest subgraph solvers and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the densest subgraph problem on one input
    Dsg(RunArgs),
    /// Compute an ordered dense decomposition
    Decompose(RunArgs),
    /// Run several algorithms on one input and merge their metrics
    Bench(BenchArgs),
    /// Write a catalog fixture as an edge list
    Fixture(FixtureArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Edge-list input file (whitespace-separated pairs, `#` comments)
    #[arg(long)]
    input: PathBuf,
    /// Algorithm: mwu | ac | acdm | rcdm | greedy | greedypp
    #[arg(long, default_value = "mwu")]
    algo: String,
    /// Approximation parameter for mwu/ac
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Pass budget for acdm/rcdm/greedypp
    #[arg(long, default_value_t = 10)]
    passes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Metrics CSV destination (header: iteration,wall_ms,best_density,load_norm)
    #[arg(long)]
    out_metrics: Option<PathBuf>,
    /// Summary JSON destination (stdout if omitted)
    #[arg(long)]
    out_summary: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated algorithm list, e.g. `acdm,rcdm,greedypp`
    #[arg(long)]
    algo: String,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 10)]
    passes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Merged CSV destination (stdout if omitted)
    #[arg(long)]
    out_metrics: Option<PathBuf>,
}

#[derive(Args)]
struct FixtureArgs {
    /// triangle | path3 | star3 | k4 | tri_plus_edge |
    /// planted_clique(n,k,p,seed) | rmat(scale,seed)
    name: String,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Algo {
    Mwu,
    Ac,
    Acdm,
    Rcdm,
    Greedy,
    Greedypp,
}

impl FromStr for Algo {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mwu" => Ok(Algo::Mwu),
            "ac" => Ok(Algo::Ac),
            "acdm" => Ok(Algo::Acdm),
            "rcdm" => Ok(Algo::Rcdm),
            "greedy" => Ok(Algo::Greedy),
            "greedypp" => Ok(Algo::Greedypp),
            other => {
                bail!("unknown algorithm {other:?}; expected mwu|ac|acdm|rcdm|greedy|greedypp")
            }
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Mwu => "mwu",
            Algo::Ac => "ac",
            Algo::Acdm => "acdm",
            Algo::Rcdm => "rcdm",
            Algo::Greedy => "greedy",
            Algo::Greedypp => "greedypp",
        })
    }
}

/// One trajectory sample; `iteration` counts budgets of m edge updates.
struct MetricRow {
    iteration: usize,
    wall_ms: f64,
    best_density: f64,
    load_norm: f64,
}

struct RunOutput {
    rows: Vec<MetricRow>,
    best_set: VertexSet,
    best_density: f64,
    solve_ms: f64,
    /// Final fractional iterate (coordinate-descent algorithms only).
    final_z: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct BlockOut {
    members: Vec<u64>,
    density: f64,
}

#[derive(Serialize)]
struct Summary {
    algorithm: String,
    input: String,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passes: Option<usize>,
    seed: u64,
    parse_ms: f64,
    solve_ms: f64,
    best_density: f64,
    best_set_size: usize,
    best_set: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Vec<BlockOut>>,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Dsg(args) => cmd_dsg(args),
        Cmd::Decompose(args) => cmd_decompose(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Fixture(args) => cmd_fixture(args),
    }
}

fn load_graph(path: &Path) -> Result<(Graph, f64)> {
    let start = Instant::now();
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read input file {}", path.display()))?;
    let g = parse_edge_list(&text)
        .with_context(|| format!("cannot parse edge list {}", path.display()))?;
    Ok((g, start.elapsed().as_secs_f64() * 1e3))
}

fn validate_eps(algo: Algo, eps: f64) -> Result<()> {
    let bound = if algo == Algo::Ac { 1.0 / 6.0 } else { 1.0 };
    if matches!(algo, Algo::Mwu | Algo::Ac) && !(eps > 0.0 && eps < bound) {
        bail!("invalid eps {eps}: {algo} requires eps in (0, {bound})");
    }
    Ok(())
}

/// Runs `algo` on `g`, collecting one metric row per m edge updates.
fn run_algo(g: &Graph, algo: Algo, eps: f64, passes: usize, seed: u64) -> Result<RunOutput> {
    validate_eps(algo, eps)?;
    if matches!(algo, Algo::Acdm | Algo::Rcdm | Algo::Greedypp) && passes == 0 {
        bail!("--passes must be at least 1 for {algo}");
    }
    let start = Instant::now();
    let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    let mut rows: Vec<MetricRow> = Vec::new();
    let mut final_z: Option<Vec<f64>> = None;
    let mut best_density = 0.0f64;
    let mut best_set = VertexSet::from_members(g.n(), [0]);
    let mut push =
        |iteration: usize, wall_ms: f64, load_norm: f64, candidate: Option<(VertexSet, f64)>| {
            if let Some((set, d)) = candidate {
                if d > best_density {
                    best_density = d;
                    best_set = set;
                }
            }
            rows.push(MetricRow {
                iteration,
                wall_ms,
                best_density,
                load_norm,
            });
        };

    match algo {
        Algo::Mwu => {
            let mut solver = MwuSolver::<f64>::new(g, eps)?;
            let mut best_d = f64::NEG_INFINITY;
            for t in 0..solver.planned_rounds() {
                let d = solver.round()?;
                // re-derive a subgraph only when the dual bound improves
                let candidate = if d > best_d {
                    best_d = d;
                    let (_, p, z) = solver.best_snapshot().unwrap();
                    construct_primal(g, p, z, d)
                        .ok()
                        .map(|sol| charikar_sweep(g, &sol.x))
                        .map(|(set, dens)| (set, dens.value()))
                } else {
                    None
                };
                let norm = l2_norm(&loads(g, &solver.zbar()));
                push(t + 1, ms(start), norm, candidate);
            }
        }
        Algo::Ac => {
            let cfg = AcConfig::default();
            let (_, d_tilde) = solve_with_binary_search::<f64>(g, eps, &cfg)?;
            let dbar = d_tilde * (1.0 - 2.0 * eps);
            let mut solver = ShermanSolver::new(g, dbar, eps, &cfg);
            for t in 0..solver.planned_rounds() {
                solver.round();
                let avg = solver.average();
                let candidate = dsg_core::area_convexity::recover_primal_ac(g, &avg.y, dbar)
                    .ok()
                    .map(|(set, dens)| (set, dens.value()));
                let norm = l2_norm(&loads(g, &avg.z));
                push(t + 1, ms(start), norm, candidate);
            }
        }
        Algo::Acdm => {
            let z0 = greedy_init::<f64>(g);
            let mut solver = PracticalSolver::new(g, &z0, seed);
            for t in 0..passes {
                let f = solver.pass();
                let b = loads(g, solver.z());
                let (set, dens) = best_set_from_loads(g, &b);
                push(t + 1, ms(start), f.sqrt(), Some((set, dens.value())));
            }
            final_z = Some(solver.z().to_vec());
        }
        Algo::Rcdm => {
            let z0 = greedy_init::<f64>(g);
            let mut solver = RcdmSolver::new(g, &z0, SweepMode::Permutation, seed);
            for t in 0..passes {
                let f = solver.pass();
                let (set, dens) = best_set_from_loads(g, solver.loads());
                push(t + 1, ms(start), f.sqrt(), Some((set, dens.value())));
            }
            final_z = Some(solver.z().to_vec());
        }
        Algo::Greedy | Algo::Greedypp => {
            let rounds = if algo == Algo::Greedy { 1 } else { passes };
            let mut carried = vec![0.0f64; g.n()];
            for t in 0..rounds {
                let trace = greedy_pp_pass(g, &mut carried);
                // the per-pass average of the carried loads estimates b
                let k = (t + 1) as f64;
                let norm = carried
                    .iter()
                    .map(|&v| (v / k) * (v / k))
                    .sum::<f64>()
                    .sqrt();
                push(
                    t + 1,
                    ms(start),
                    norm,
                    Some((trace.best_set, trace.best_density.value())),
                );
            }
        }
    }

    Ok(RunOutput {
        rows,
        best_set,
        best_density,
        solve_ms: ms(start),
        final_z,
    })
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|&x| x * x).sum::<f64>().sqrt()
}

fn write_metrics(path: &Path, rows: &[MetricRow]) -> Result<()> {
    let mut out = String::from("iteration,wall_ms,best_density,load_norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.3},{},{}\n",
            r.iteration, r.wall_ms, r.best_density, r.load_norm
        ));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write metrics to {}", path.display()))
}

fn emit_summary(summary: &Summary, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(summary)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("cannot write summary to {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn members_as_original_ids(g: &Graph, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut ids: Vec<u64> = members.into_iter().map(|u| g.original_id(u)).collect();
    ids.sort_unstable();
    ids
}

fn cmd_dsg(args: RunArgs) -> Result<()> {
    let algo: Algo = args.algo.parse()?;
    let (g, parse_ms) = load_graph(&args.input)?;
    let out = run_algo(&g, algo, args.eps, args.passes, args.seed)?;
    if let Some(path) = &args.out_metrics {
        write_metrics(path, &out.rows)?;
    }
    let summary = Summary {
        algorithm: algo.to_string(),
        input: args.input.display().to_string(),
        n: g.n(),
        m: g.m(),
        eps: matches!(algo, Algo::Mwu | Algo::Ac).then_some(args.eps),
        passes: matches!(algo, Algo::Acdm | Algo::Rcdm | Algo::Greedypp).then_some(args.passes),
        seed: args.seed,
        parse_ms,
        solve_ms: out.solve_ms,
        best_density: out.best_density,
        best_set_size: out.best_set.len(),
        best_set: members_as_original_ids(&g, out.best_set.members()),
        decomposition: None,
    };
    emit_summary(&summary, args.out_summary.as_deref())
}

fn cmd_decompose(args: RunArgs) -> Result<()> {
    let algo: Algo = args.algo.parse()?;
    if !matches!(algo, Algo::Acdm | Algo::Rcdm) {
        bail!("decompose supports --algo acdm or rcdm, got {algo}");
    }
    let (g, parse_ms) = load_graph(&args.input)?;
    let start = Instant::now();
    let out = run_algo(&g, algo, args.eps, args.passes, args.seed)?;
    let z = out
        .final_z
        .as_deref()
        .expect("coordinate run returns its iterate");
    let b = loads(&g, z);
    let dec = fractional_peel(&g, z, &b);
    let solve_ms = start.elapsed().as_secs_f64() * 1e3;

    if let Some(path) = &args.out_metrics {
        write_metrics(path, &out.rows)?;
    }
    let blocks: Vec<BlockOut> = dec
        .blocks
        .iter()
        .map(|blk| BlockOut {
            members: members_as_original_ids(&g, blk.members.iter().copied()),
            density: blk.density.value(),
        })
        .collect();
    let summary = Summary {
        algorithm: algo.to_string(),
        input: args.input.display().to_string(),
        n: g.n(),
        m: g.m(),
        eps: None,
        passes: Some(args.passes),
        seed: args.seed,
        parse_ms,
        solve_ms,
        best_density: out.best_density,
        best_set_size: out.best_set.len(),
        best_set: members_as_original_ids(&g, out.best_set.members()),
        decomposition: Some(blocks),
    };
    emit_summary(&summary, args.out_summary.as_deref())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let algos: Vec<Algo> = args
        .algo
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;
    if algos.is_empty() {
        bail!("--algo must name at least one algorithm");
    }
    let (g, _) = load_graph(&args.input)?;
    let runs: Vec<RunOutput> = algos
        .iter()
        .map(|&a| run_algo(&g, a, args.eps, args.passes, args.seed))
        .collect::<Result<_>>()?;

    let mut out = String::new();
    if algos.len() == 1 {
        out.push_str("iteration,wall_ms,best_density,load_norm\n");
        for r in &runs[0].rows {
            out.push_str(&format!(
                "{},{:.3},{},{}\n",
                r.iteration, r.wall_ms, r.best_density, r.load_norm
            ));
        }
    } else {
        // one column group per algorithm, aligned on the iteration index
        out.push_str("iteration");
        for a in &algos {
            out.push_str(&format!(",{a}_wall_ms,{a}_best_density,{a}_load_norm"));
        }
        out.push('\n');
        let longest = runs.iter().map(|r| r.rows.len()).max().unwrap_or(0);
        for i in 0..longest {
            out.push_str(&format!("{}", i + 1));
            for run in &runs {
                match run.rows.get(i) {
                    Some(r) => out.push_str(&format!(
                        ",{:.3},{},{}",
                        r.wall_ms, r.best_density, r.load_norm
                    )),
                    None => out.push_str(",,,"),
                }
            }
            out.push('\n');
        }
    }
    match &args.out_metrics {
        Some(path) => std::fs::write(path, out)
            .with_context(|| format!("cannot write metrics to {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(())
}

fn parse_fixture(name: &str) -> Result<Graph> {
    match name {
        "triangle" => return Ok(fixtures::triangle()),
        "path3" => return Ok(fixtures::path3()),
        "star3" => return Ok(fixtures::star3()),
        "k4" => return Ok(fixtures::complete(4)),
        "tri_plus_edge" => return Ok(fixtures::tri_plus_edge()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("planted_clique(") {
        let inner = rest
            .strip_suffix(')')
            .context("planted_clique needs the form planted_clique(n,k,p,seed)")?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            bail!(
                "planted_clique needs four arguments (n,k,p,seed), got {}",
                parts.len()
            );
        }
        let n: usize = parts[0].parse().context("planted_clique: bad n")?;
        let k: usize = parts[1].parse().context("planted_clique: bad k")?;
        let p: f64 = parts[2].parse().context("planted_clique: bad p")?;
        let seed: u64 = parts[3].parse().context("planted_clique: bad seed")?;
        return Ok(planted_clique(n, k, p, seed)?);
    }
    if let Some(rest) = name.strip_prefix("rmat(") {
        let inner = rest
            .strip_suffix(')')
            .context("rmat needs the form rmat(scale,seed)")?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            bail!("rmat needs two arguments (scale,seed), got {}", parts.len());
        }
        let scale: u32 = parts[0].parse().context("rmat: bad scale")?;
        let seed: u64 = parts[1].parse().context("rmat: bad seed")?;
        return Ok(rmat(scale, seed)?);
    }
    bail!(
        "unknown fixture {name:?}; catalog: triangle, path3, star3, k4, \
         tri_plus_edge, planted_clique(n,k,p,seed), rmat(scale,seed)"
    );
}

fn cmd_fixture(args: FixtureArgs) -> Result<()> {
    let g = parse_fixture(&args.name)?;
    let mut out = String::with_capacity(g.m() * 8);
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        out.push_str(&format!("{} {}\n", g.original_id(u), g.original_id(v)));
    }
    match &args.out {
        Some(path) => std::fs::write(path, out)
            .with_context(|| format!("cannot write fixture to {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(())
}
