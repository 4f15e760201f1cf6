//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a bound check reported `violated`, 2 usage,
//! validation or runtime error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{self, Verdict};
use crate::error::Result;
use crate::generators::{self, BlowupSpec, RandomKPartite};
use crate::hypergraph::{PartitionCertificate, WeightedHypergraph};
use crate::io::{self, GeneratorInfo, HypergraphJson};
use crate::oracle;
use crate::solver::{self, SolverConfig, SpectralEstimate, StepPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pspectral", version, about = "p-spectral extrema of weighted uniform hypergraphs")]
struct Cli {
    /// Base seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress text output (JSON output is unaffected).
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a hypergraph file (text, or JSON when the name ends in .json).
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Estimate the extrema of the polynomial form on the unit l^p sphere.
    Spectral(SpectralArgs),
    /// Grid-search bounds for tiny instances, compared with the solver.
    Oracle {
        #[command(flatten)]
        spectral: SpectralArgs,
        #[arg(long, default_value_t = 24)]
        resolution: usize,
    },
    /// Check the ratio bound for a k-partite instance and its certificate.
    Hoffman {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = analysis::DEFAULT_BOUND_TOL)]
        tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Ratio sweep over a hypergraph family.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Complete r-graph on k vertices.
    Complete {
        k: usize,
        r: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Complete regular k-partite r-graph with parts of size t.
    Blowup {
        k: usize,
        r: usize,
        t: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The 2-chromatic 4-graph on 2n vertices (certificate is its 2-coloring).
    Counterexample {
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Random weighted k-partite r-graph.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        weight_lo: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        weight_hi: f64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
struct OutArgs {
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    /// Also write the partition certificate as JSON.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Max,
    Min,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Counterexample,
}

#[derive(Debug, Args)]
struct SpectralArgs {
    #[arg(long)]
    input: PathBuf,
    /// Norm exponent; defaults to the uniformity r.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Kind::Both)]
    kind: Kind,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    grad_tol: f64,
}

impl SolverArgs {
    fn config(&self, p: f64, seed: u64) -> SolverConfig {
        SolverConfig {
            p,
            restarts: self.restarts,
            max_iters: self.max_iters,
            grad_tol: self.grad_tol,
            step: StepPolicy::default(),
            seed,
        }
    }
}

struct Ctx<'a> {
    json: bool,
    quiet: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn text(&mut self, s: &str) {
        if !self.json && !self.quiet {
            let _ = write!(self.out, "{s}");
        }
    }

    fn doc(&mut self, v: Value) {
        if self.json {
            let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_ERROR;
        }
    };
    let mut ctx = Ctx { json: cli.json, quiet: cli.quiet, out };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<i32> {
    match &cli.command {
        Command::Gen { family } => gen(family, cli.seed, ctx),
        Command::Spectral(args) => spectral(args, cli.seed, ctx),
        Command::Oracle { spectral, resolution } => oracle_cmd(spectral, *resolution, cli.seed, ctx),
        Command::Hoffman { input, cert, p, tol, solver } => {
            hoffman(input, cert, *p, *tol, solver, cli.seed, ctx)
        }
        Command::Sweep { family: Family::Counterexample, n_list, p, solver } => {
            sweep(n_list, *p, solver, cli.seed, ctx)
        }
    }
}

fn gen(family: &GenFamily, seed: u64, ctx: &mut Ctx) -> Result<i32> {
    let (h, cert, info, out, params): (_, _, Option<GeneratorInfo>, &OutArgs, Value) = match family {
        GenFamily::Complete { k, r, out } => {
            let (h, c) = generators::complete_rgraph(*k, *r)?;
            (h, c, None, out, json!({"family": "complete", "k": k, "r": r}))
        }
        GenFamily::Blowup { k, r, t, out } => {
            let (h, c) = generators::kpartite_blowup(BlowupSpec::new(*k, *r, *t)?)?;
            (h, c, None, out, json!({"family": "blowup", "k": k, "r": r, "t": t}))
        }
        GenFamily::Counterexample { n, out } => {
            let h = generators::counterexample_4graph(*n)?;
            let c = generators::counterexample_coloring(*n)?;
            (h, c, None, out, json!({"family": "counterexample", "n": n}))
        }
        GenFamily::Random { k, r, sizes, density, weight_lo, weight_hi, out } => {
            let spec = RandomKPartite {
                k: *k,
                r: *r,
                part_sizes: sizes.clone(),
                edge_density: *density,
                weight_range: (*weight_lo, *weight_hi),
                seed,
            };
            let (h, c) = generators::random_kpartite(&spec)?;
            let info = spec.generator_info();
            let params = json!({"family": "random", "generator": info});
            (h, c, Some(info), out, params)
        }
    };
    io::write_hypergraph(&out.output, &h, info)?;
    if let Some(path) = &out.cert {
        io::write_certificate(path, &cert)?;
    }
    ctx.text(&format!(
        "wrote {} (n = {}, r = {}, m = {})\n",
        out.output.display(),
        h.n(),
        h.r(),
        h.edges().len()
    ));
    ctx.doc(json!({
        "command": "gen",
        "seed": seed,
        "params": params,
        "output": out.output,
        "cert": out.cert,
        "n": h.n(),
        "r": h.r(),
        "m": h.edges().len(),
    }));
    Ok(EXIT_OK)
}

fn resolve_p(p: Option<f64>, h: &WeightedHypergraph) -> (f64, bool) {
    match p {
        Some(p) => (p, false),
        None => (h.r() as f64, true),
    }
}

fn estimate_json(est: &SpectralEstimate, r: usize) -> Value {
    let mut v = serde_json::to_value(est).unwrap();
    v["theorem_applicable"] = json!(solver::theorem_applicable(r, est.p));
    v
}

fn run_kinds(h: &WeightedHypergraph, cfg: &SolverConfig, kind: Kind) -> Result<Vec<SpectralEstimate>> {
    let mut out = Vec::new();
    if matches!(kind, Kind::Max | Kind::Both) {
        out.push(solver::solve_max(h, cfg)?);
    }
    if matches!(kind, Kind::Min | Kind::Both) {
        out.push(solver::solve_min(h, cfg)?);
    }
    Ok(out)
}

fn spectral(args: &SpectralArgs, seed: u64, ctx: &mut Ctx) -> Result<i32> {
    let h = io::read_hypergraph(&args.input)?;
    let (p, p_defaulted) = resolve_p(args.p, &h);
    let cfg = args.solver.config(p, seed);
    let estimates = run_kinds(&h, &cfg, args.kind)?;
    let applicable = solver::theorem_applicable(h.r(), p);

    let mut text = format!(
        "n = {}, r = {}, m = {}, p = {}{}\n",
        h.n(),
        h.r(),
        h.edges().len(),
        p,
        if p_defaulted { " (default: p = r)" } else { "" }
    );
    for est in &estimates {
        let name = if est.kind == solver::ExtremumKind::Max { "max" } else { "min" };
        text.push_str(&format!(
            "{name} {}  (restarts converged {}/{}, best restart {})\n",
            analysis::fmt(est.value),
            est.restarts_converged,
            cfg.restarts,
            est.best_restart_index
        ));
    }
    if !applicable {
        text.push_str("theorem_applicable: false (needs even r and p >= r)\n");
    }
    ctx.text(&text);
    ctx.doc(json!({
        "command": "spectral",
        "config": config_json(&cfg, p_defaulted, args.kind),
        "input": args.input,
        "hypergraph": HypergraphJson::from_hypergraph(&h),
        "theorem_applicable": applicable,
        "estimates": estimates.iter().map(|e| estimate_json(e, h.r())).collect::<Vec<_>>(),
    }));
    Ok(EXIT_OK)
}

fn config_json(cfg: &SolverConfig, p_defaulted: bool, kind: Kind) -> Value {
    let mut v = serde_json::to_value(cfg).unwrap();
    v["p_defaulted"] = json!(p_defaulted);
    v["kind"] = json!(match kind {
        Kind::Max => "max",
        Kind::Min => "min",
        Kind::Both => "both",
    });
    v
}

fn oracle_cmd(args: &SpectralArgs, resolution: usize, seed: u64, ctx: &mut Ctx) -> Result<i32> {
    let h = io::read_hypergraph(&args.input)?;
    let (p, p_defaulted) = resolve_p(args.p, &h);
    let cfg = args.solver.config(p, seed);
    let grid = oracle::grid_extrema(&h, p, resolution)?;
    let estimates = run_kinds(&h, &cfg, args.kind)?;

    let mut rows = vec![vec!["kind".to_string(), "grid".into(), "solver".into(), "difference".into()]];
    let mut comparisons = Vec::new();
    for est in &estimates {
        let (name, g) = match est.kind {
            solver::ExtremumKind::Max => ("max", grid.max_lb),
            solver::ExtremumKind::Min => ("min", grid.min_ub),
        };
        rows.push(vec![
            name.into(),
            analysis::fmt(g),
            analysis::fmt(est.value),
            format!("{:.3e}", est.value - g),
        ]);
        comparisons.push(json!({"kind": name, "grid": g, "solver": est.value, "difference": est.value - g}));
    }
    ctx.text(&format!(
        "{} compositions x {} sign patterns, resolution {resolution}, p = {p}\n",
        grid.grid_points,
        1u64 << h.n()
    ));
    ctx.text(&analysis::table(&rows));
    ctx.doc(json!({
        "command": "oracle",
        "config": config_json(&cfg, p_defaulted, args.kind),
        "resolution": resolution,
        "input": args.input,
        "hypergraph": HypergraphJson::from_hypergraph(&h),
        "grid": {
            "max_lb": grid.max_lb,
            "min_ub": grid.min_ub,
            "max_witness": grid.max_witness,
            "min_witness": grid.min_witness,
            "compositions": grid.grid_points,
        },
        "estimates": estimates.iter().map(|e| estimate_json(e, h.r())).collect::<Vec<_>>(),
        "comparisons": comparisons,
    }));
    Ok(EXIT_OK)
}

fn hoffman(
    input: &Path,
    cert_path: &Path,
    p: Option<f64>,
    tol: f64,
    solver_args: &SolverArgs,
    seed: u64,
    ctx: &mut Ctx,
) -> Result<i32> {
    let h = io::read_hypergraph(input)?;
    let cert: PartitionCertificate = io::read_certificate(cert_path)?;
    let (p, p_defaulted) = resolve_p(p, &h);
    let cfg = solver_args.config(p, seed);
    let report = analysis::hoffman_check(&h, &cert, p, &cfg, tol)?;
    ctx.text(&format!("p = {p}{}\n", if p_defaulted { " (default: p = r)" } else { "" }));
    ctx.text(&report.to_table());
    ctx.doc(json!({
        "command": "hoffman",
        "config": config_json(&cfg, p_defaulted, Kind::Both),
        "tol": tol,
        "input": input,
        "cert_file": cert_path,
        "hypergraph": HypergraphJson::from_hypergraph(&h),
        "certificate": io::CertificateJson::from(&cert),
        "report": report,
    }));
    Ok(if report.verdict == Some(Verdict::Violated) { EXIT_VIOLATION } else { EXIT_OK })
}

fn sweep(n_list: &[usize], p: f64, solver_args: &SolverArgs, seed: u64, ctx: &mut Ctx) -> Result<i32> {
    let cfg = solver_args.config(p, seed);
    let rows = analysis::ratio_sweep(n_list, p, &cfg)?;
    ctx.text(&analysis::sweep_table(&rows));
    ctx.doc(json!({
        "command": "sweep",
        "family": "counterexample",
        "n_list": n_list,
        "config": config_json(&cfg, false, Kind::Min),
        "rows": rows,
    }));
    Ok(EXIT_OK)
}
