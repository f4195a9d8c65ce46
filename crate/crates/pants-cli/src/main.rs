//! `pants`: holonomy reconstruction, trace functions, Hamiltonian flows,
//! fixed points, level sets and verification suites on the pair of pants.
//!
//! Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 verification failure,
//! 5 domain error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pants_core::coords::{casimirs, fuchsian_leaf, FGCoords, LeafPoint, LengthVector};
use pants_core::dynamics::{self, IntegratorConfig};
use pants_core::error::PantsError;
use pants_core::holonomy::{eigenvalue_ratio_report, peripheral_holonomies};
use pants_core::output::{fmt17, level_set_csv, svg_polylines};
use pants_core::poisson::hamiltonian_vf_leaf;
use pants_core::proj_linalg::Mat3;
use pants_core::traces::{trace_closed_form, trace_matrix_oracle, CurveId};
use pants_core::verify::{Suite, SuiteReport};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "pants", version, about = "Convex projective structures on the pair of pants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Peripheral holonomies A, B, C with their eigenvalues and ratios.
    Reconstruct(CoordsArgs),
    /// The six Casimirs and the leaf chart point of a coordinate tuple.
    Casimirs(CoordsArgs),
    /// Trace of a curve at a leaf point, by closed form and by matrix product.
    Trace(TraceArgs),
    /// Integrate the Hamiltonian flow of a trace function; writes CSV.
    Flow(FlowArgs),
    /// The unique minimum of a trace function on a leaf.
    FixedPoint(FixedPointArgs),
    /// A closed level curve of a trace function; writes CSV.
    LevelSet(LevelSetArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CoordsArgs {
    /// σ₁,…,σ₆,τ₁,τ₂ (eight positive numbers, comma separated).
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    coords: Nums,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LeafArgs {
    /// Casimirs ℓα₁,ℓα₂,ℓβ₁,ℓβ₂,ℓγ₁,ℓγ₂ (six positive numbers).
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true, conflicts_with = "fuchsian")]
    leaf: Option<Nums>,
    /// Leaf of the Fuchsian structure with boundary data ℓα,ℓβ,ℓγ.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    fuchsian: Option<Nums>,
    /// Curve: fig8, fig8_inv, fig8_sym, commutator, power:k, theta, or
    /// word:"a c^-1".
    #[arg(long)]
    curve: String,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    leaf: LeafArgs,
    /// Chart point σ₁,τ₁.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    point: Nums,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FlowArgs {
    #[command(flatten)]
    leaf: LeafArgs,
    /// Initial chart point σ₁,τ₁.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    point: Nums,
    /// Integration time (negative integrates backwards).
    #[arg(long, allow_hyphen_values = true)]
    tmax: f64,
    /// Relative tolerance of the integrator.
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    /// CSV output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot of the orbit in log coordinates.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FixedPointArgs {
    #[command(flatten)]
    leaf: LeafArgs,
    /// Starting chart point of the search.
    #[arg(long, value_parser = parse_list, default_value = "1,1")]
    start: Nums,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LevelSetArgs {
    #[command(flatten)]
    leaf: LeafArgs,
    /// Trace value of the level curve.
    #[arg(long, allow_hyphen_values = true)]
    level: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Emit a JSON summary on standard error.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed (default: $PANTS_SEED, else 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Random samples per suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Worker threads (default: number of cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<PantsError> for Failure {
    fn from(e: PantsError) -> Self {
        let code = if e.is_usage() {
            2
        } else if e.is_numerical() {
            3
        } else {
            match e {
                PantsError::BelowMinimum { .. }
                | PantsError::NotUnipotent
                | PantsError::ClosedFormUnavailable { .. }
                | PantsError::ComplexSpectrum { .. } => 5,
                _ => 3,
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

/// A comma-separated list of numbers.
#[derive(Clone, Debug)]
struct Nums(Vec<f64>);

fn parse_list(s: &str) -> Result<Nums, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
        .collect::<Result<_, _>>()
        .map(Nums)
}

fn require_len(name: &str, v: &[f64], n: usize) -> Result<(), Failure> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Failure::usage(format!("--{name} needs {n} values, got {}", v.len())))
    }
}

fn leaf_of(a: &LeafArgs) -> Result<LengthVector, Failure> {
    match (&a.leaf, &a.fuchsian) {
        (Some(Nums(l)), None) => {
            require_len("leaf", l, 6)?;
            Ok(LengthVector::from_slice(l)?)
        }
        (None, Some(Nums(f))) => {
            require_len("fuchsian", f, 3)?;
            Ok(fuchsian_leaf(f[0], f[1], f[2])?)
        }
        _ => Err(Failure::usage("give exactly one of --leaf and --fuchsian")),
    }
}

fn curve_of(a: &LeafArgs) -> Result<CurveId, Failure> {
    a.curve.parse::<CurveId>().map_err(|e| Failure::usage(e.to_string()))
}

fn point_of(name: &str, leaf: LengthVector, p: &[f64]) -> Result<LeafPoint, Failure> {
    require_len(name, p, 2)?;
    Ok(LeafPoint::new(leaf, p[0], p[1])?)
}

fn write_output(path: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn json_list(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(","))
}

fn json_matrix(m: &Mat3) -> String {
    format!("[{}]", m.0.iter().map(|r| json_list(r)).collect::<Vec<_>>().join(","))
}

fn text_matrix(name: &str, m: &Mat3) -> String {
    let mut s = String::new();
    for (i, row) in m.0.iter().enumerate() {
        let lead = if i == 1 { format!("{name} =") } else { " ".repeat(name.len() + 2) };
        let cells: Vec<String> = row.iter().map(|x| format!("{:>24}", fmt17(*x))).collect();
        let _ = writeln!(s, "{lead} [{} ]", cells.join(""));
    }
    s
}

fn cmd_reconstruct(a: &CoordsArgs) -> CmdResult {
    require_len("coords", &a.coords.0, 8)?;
    let c = FGCoords::from_slice(&a.coords.0)?;
    let mats = peripheral_holonomies(&c);
    let report = eigenvalue_ratio_report(&c)?;
    let names = ["A", "B", "C"];
    if a.json {
        let hol: Vec<String> = names.iter().zip(&mats).map(|(n, m)| format!("\"{n}\":{}", json_matrix(m))).collect();
        let eig: Vec<String> = names
            .iter()
            .zip(&report)
            .map(|(n, r)| {
                format!(
                    "\"{n}\":{{\"eigenvalues\":{},\"predicted_ratios\":{},\"ratio_errors\":{}}}",
                    json_list(&r.eigenvalues),
                    json_list(&r.predicted),
                    json_list(&r.errors)
                )
            })
            .collect();
        println!(
            "{{\"coords\":{},\"holonomy\":{{{}}},\"spectra\":{{{}}},\"casimirs\":{}}}",
            c.to_json(),
            hol.join(","),
            eig.join(","),
            json_list(&casimirs(&c).0)
        );
    } else {
        for ((n, m), r) in names.iter().zip(&mats).zip(&report) {
            print!("{}", text_matrix(n, m));
            println!("  eigenvalues      {}", r.eigenvalues.map(fmt17).join(" "));
            println!("  predicted ratios {}", r.predicted.map(fmt17).join(" "));
            println!("  ratio errors     {}", r.errors.map(fmt17).join(" "));
        }
    }
    Ok(0)
}

fn cmd_casimirs(a: &CoordsArgs) -> CmdResult {
    require_len("coords", &a.coords.0, 8)?;
    let c = FGCoords::from_slice(&a.coords.0)?;
    let l = casimirs(&c);
    if a.json {
        println!(
            "{{\"casimirs\":{},\"point\":{}}}",
            json_list(&l.0),
            json_list(&[c.sigma[0], c.tau[0]])
        );
    } else {
        let names = ["l_alpha1", "l_alpha2", "l_beta1", "l_beta2", "l_gamma1", "l_gamma2"];
        for (n, v) in names.iter().zip(l.0) {
            println!("{n:<9} {}", fmt17(v));
        }
        println!("point     {} {}", fmt17(c.sigma[0]), fmt17(c.tau[0]));
    }
    Ok(0)
}

fn cmd_trace(a: &TraceArgs) -> CmdResult {
    let leaf = leaf_of(&a.leaf)?;
    let curve = curve_of(&a.leaf)?;
    let p = point_of("point", leaf, &a.point.0)?;
    let closed = match trace_closed_form(&p, &curve) {
        Ok(v) => Some(v),
        Err(PantsError::ClosedFormUnavailable { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let oracle = trace_matrix_oracle(&p, &curve);
    let diff = closed.map(|v| v - oracle);
    if a.json {
        let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_else(|| "null".into());
        println!(
            "{{\"curve\":\"{curve}\",\"closed_form\":{},\"oracle\":{},\"difference\":{}}}",
            opt(closed),
            fmt17(oracle),
            opt(diff)
        );
    } else {
        match closed {
            Some(v) => println!("closed_form {}", fmt17(v)),
            None => println!("closed_form unavailable"),
        }
        println!("oracle      {}", fmt17(oracle));
        if let Some(d) = diff {
            println!("difference  {}", fmt17(d));
        }
    }
    Ok(0)
}

fn cmd_flow(a: &FlowArgs) -> CmdResult {
    let leaf = leaf_of(&a.leaf)?;
    let curve = curve_of(&a.leaf)?;
    let p = point_of("point", leaf, &a.point.0)?;
    if !a.tmax.is_finite() {
        return Err(Failure::usage("--tmax must be finite"));
    }
    let cfg = IntegratorConfig::with_rtol(a.rtol)?;
    let tr = dynamics::integrate_with(&p, &curve, a.tmax, &cfg)?;
    // a period is reported only for orbits that actually move
    let f = dynamics::trace_function(&leaf, &curve);
    let v = hamiltonian_vf_leaf(&p, &f);
    let period = if a.tmax != 0.0 && v[0].hypot(v[1]) > 1e-9 {
        dynamics::detect_period_fn(&f, p.sigma1, p.tau1, dynamics::DEFAULT_PERIOD_T_MAX, &cfg).ok()
    } else {
        None
    };
    let svg = a.svg.as_ref().map(|_| svg_polylines(&[tr.chart_points()], Some((p.sigma1, p.tau1))));
    write_output(&a.out, &tr.to_csv())?;
    if let (Some(path), Some(doc)) = (&a.svg, svg) {
        write_output(&Some(path.clone()), &doc)?;
    }
    match period {
        Some(per) => eprintln!(
            "steps {} drift {} period {}",
            tr.samples.len() - 1,
            fmt17(tr.drift),
            fmt17(per.period)
        ),
        None => eprintln!("steps {} drift {}", tr.samples.len() - 1, fmt17(tr.drift)),
    }
    Ok(0)
}

fn cmd_fixed_point(a: &FixedPointArgs) -> CmdResult {
    let leaf = leaf_of(&a.leaf)?;
    let curve = curve_of(&a.leaf)?;
    require_len("start", &a.start.0, 2)?;
    let m = dynamics::find_minimum_starting(&leaf, &curve, (a.start.0[0], a.start.0[1]))?;
    if a.json {
        println!(
            "{{\"curve\":\"{curve}\",\"point\":{},\"value\":{},\"gradient_norm\":{},\"iterations\":{}}}",
            json_list(&[m.sigma1, m.tau1]),
            fmt17(m.value),
            fmt17(m.gradient_norm),
            m.iterations
        );
    } else {
        println!("sigma1        {}", fmt17(m.sigma1));
        println!("tau1          {}", fmt17(m.tau1));
        println!("value         {}", fmt17(m.value));
        println!("gradient_norm {}", fmt17(m.gradient_norm));
    }
    Ok(0)
}

fn cmd_level_set(a: &LevelSetArgs) -> CmdResult {
    let leaf = leaf_of(&a.leaf)?;
    let curve = curve_of(&a.leaf)?;
    if !a.level.is_finite() {
        return Err(Failure::usage("--level must be finite"));
    }
    let ls = dynamics::level_set(&leaf, &curve, a.level)?;
    let svg = a
        .svg
        .as_ref()
        .map(|_| svg_polylines(std::slice::from_ref(&ls.points), Some((ls.minimum.sigma1, ls.minimum.tau1))));
    write_output(&a.out, &level_set_csv(&ls.points))?;
    if let (Some(path), Some(doc)) = (&a.svg, svg) {
        write_output(&Some(path.clone()), &doc)?;
    }
    if a.json {
        eprintln!(
            "{{\"level\":{},\"period\":{},\"closure_error\":{},\"max_level_error\":{},\"minimum\":{}}}",
            fmt17(ls.level),
            fmt17(ls.period),
            fmt17(ls.closure_error),
            fmt17(ls.max_level_error),
            json_list(&[ls.minimum.sigma1, ls.minimum.tau1, ls.minimum.value])
        );
    } else {
        eprintln!(
            "points {} period {} closure {}",
            ls.points.len(),
            fmt17(ls.period),
            fmt17(ls.closure_error)
        );
    }
    Ok(0)
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var("PANTS_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("PANTS_SEED `{s}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse::<Suite>().map_err(|e| Failure::usage(e.to_string()))?]
    };
    let seed = match a.seed {
        Some(s) => s,
        None => seed_from_env()?,
    };
    if let Some(n) = a.threads {
        if n == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let report = if a.samples == 0 {
        SuiteReport::default()
    } else {
        SuiteReport {
            reports: suites.iter().map(|s| s.run(seed, a.samples)).collect(),
        }
    };
    if a.json {
        println!("{}", report.to_json());
    } else {
        for r in &report.reports {
            println!(
                "{:<15} {} passed {:>6} failed {:>4} worst {}",
                r.suite,
                if r.ok() { "PASS" } else { "FAIL" },
                r.passed,
                r.failed,
                fmt17(r.worst_error)
            );
        }
        println!("seed {seed} samples {} failed {}", a.samples, report.failed());
    }
    Ok(if report.ok() { 0 } else { 4 })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Casimirs(a) => cmd_casimirs(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Flow(a) => cmd_flow(a),
        Command::FixedPoint(a) => cmd_fixed_point(a),
        Command::LevelSet(a) => cmd_level_set(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("pants: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
