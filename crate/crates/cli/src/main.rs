//! Command-line front end: minimize a mass vector's configuration, certify
//! a mass vector against the symmetry criterion, scan whole mass families,
//! or sweep the cyclic-polygon inequalities. Emits JSON (and CSV for the
//! tabular commands) with deterministic payloads.
//!
//! Exit codes: 0 success; 1 invalid input or I/O failure; 2 completed with a
//! qualified outcome (non-convergence, an inconclusive verdict, or inequality
//! violations).

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use cocirc_cli::{plot, report, suites};
use cocirc_core::certifier::{certify, Verdict};
use cocirc_core::minimizer::{find_minimizer, MinimizerOptions};
use cocirc_core::potential::{Alpha, MassVector};
use cocirc_core::scanner::{scan_family, FamilySpec, ScanRow, ScanSummary};

use report::Envelope;

#[derive(Parser)]
#[command(
    name = "cocirc",
    version,
    about = "Minimizing circular configurations of the power-law n-body potential,\n\
             symmetry-based exclusion certificates, and cyclic-polygon inequality sweeps."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the minimizing configuration for a mass vector.
    Minimize(MinimizeArgs),
    /// Minimize, then scan the symmetry criterion over the dihedral group.
    Certify(CertifyArgs),
    /// Enumerate a mass family up to symmetry and certify every arrangement.
    Scan(ScanArgs),
    /// Run randomized sweeps of the cyclic-polygon inequalities.
    Inequalities(InequalitiesArgs),
}

#[derive(Args)]
struct SolverArgs {
    /// Exponent of the power-law potential (> 0).
    #[arg(long)]
    alpha: f64,
    /// Comma-separated positive masses in circular order, e.g. 1,2,1,3.
    #[arg(long)]
    masses: String,
    /// Convergence tolerance on the max-abs angle gradient.
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
    /// Iteration budget for the descent.
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Report file (stdout when omitted). Written atomically.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct MinimizeArgs {
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Also write an SVG of the configuration to this path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Also write an SVG of the minimizing configuration to this path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Mass family to enumerate.
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Total number of bodies.
    #[arg(long)]
    n: usize,
    /// two-unequal only: the two marked mass values, e.g. 2,3.
    #[arg(long)]
    values: Option<String>,
    /// two-groups only: number of marked bodies.
    #[arg(long)]
    k: Option<usize>,
    /// two-groups only: common value of the marked bodies.
    #[arg(long)]
    value: Option<f64>,
    /// Exponent of the power-law potential (> 0).
    #[arg(long)]
    alpha: f64,
    /// Convergence tolerance on the max-abs angle gradient.
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
    /// Iteration budget per arrangement.
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct InequalitiesArgs {
    /// Sampled polygons per suite.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Base seed for the polygon sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest (even) vertex count to sweep.
    #[arg(long, default_value_t = 12)]
    max_vertices: usize,
    /// Comma-separated exponents to sweep, e.g. 0.5,1,2.
    #[arg(long, default_value = "0.25,0.5,1,1.5,2,3")]
    alphas: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// All masses 1 except two marked bodies with distinct given values.
    TwoUnequal,
    /// All masses 1 except k marked bodies sharing one given value.
    TwoGroups,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize, Deserialize)]
struct MinimizePayload {
    masses: Vec<f64>,
    alpha: f64,
    angles: Vec<f64>,
    converged: bool,
    iterations: usize,
    grad_norm: f64,
    objective: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScanPayload {
    #[serde(flatten)]
    family: FamilySpec,
    alpha: f64,
    rows: Vec<ScanRow>,
    summary: ScanSummary,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    if let Err(err) = configure_threads() {
        eprintln!("cocirc: {err:#}");
        return 1;
    }
    let outcome = match cli.command {
        Command::Minimize(args) => run_minimize(args),
        Command::Certify(args) => run_certify(args),
        Command::Scan(args) => run_scan(args),
        Command::Inequalities(args) => run_inequalities(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("cocirc: {err:#}");
            1
        }
    }
}

/// Applies the COCIRC_THREADS limit (0 or unset = automatic).
fn configure_threads() -> Result<()> {
    let raw = match std::env::var("COCIRC_THREADS") {
        Ok(raw) => raw,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(err) => bail!("reading COCIRC_THREADS: {err}"),
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("COCIRC_THREADS must be a nonnegative integer, got {raw:?}"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn parse_float_list(raw: &str, what: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .with_context(|| format!("invalid {what} entry {piece:?}"))
        })
        .collect()
}

fn solver_options(tol: f64, max_iterations: usize) -> MinimizerOptions {
    MinimizerOptions {
        tolerance: tol,
        max_iterations,
        ..MinimizerOptions::default()
    }
}

fn require_json(format: Format, command: &str) -> Result<()> {
    if format == Format::Csv {
        bail!("{command} reports are not tabular; CSV output is only available for scan and inequalities");
    }
    Ok(())
}

fn run_minimize(args: MinimizeArgs) -> Result<i32> {
    require_json(args.out.format, "minimize")?;
    let masses = MassVector::new(parse_float_list(&args.solver.masses, "mass")?)?;
    let alpha = Alpha::new(args.solver.alpha)?;
    let options = solver_options(args.solver.tol, args.solver.max_iterations);
    let result = find_minimizer(&masses, alpha, &options)?;

    let payload = MinimizePayload {
        masses: masses.as_slice().to_vec(),
        alpha: alpha.value(),
        angles: result.theta.as_slice().to_vec(),
        converged: result.converged,
        iterations: result.iterations,
        grad_norm: result.grad_norm,
        objective: result.objective,
    };
    let bytes = report::to_json_bytes(&Envelope::new(payload))?;
    report::write_output(args.out.output.as_deref(), &bytes)?;
    if let Some(path) = &args.plot {
        plot::write(path, result.theta.as_slice(), masses.as_slice());
    }
    Ok(if result.converged { 0 } else { 2 })
}

fn run_certify(args: CertifyArgs) -> Result<i32> {
    require_json(args.out.format, "certify")?;
    let masses = MassVector::new(parse_float_list(&args.solver.masses, "mass")?)?;
    let alpha = Alpha::new(args.solver.alpha)?;
    let options = solver_options(args.solver.tol, args.solver.max_iterations);
    let certificate = certify(&masses, alpha, &options)?;

    let verdict = certificate.verdict;
    let theta = certificate.theta.clone();
    let bytes = report::to_json_bytes(&Envelope::new(certificate))?;
    report::write_output(args.out.output.as_deref(), &bytes)?;
    if let Some(path) = &args.plot {
        plot::write(path, &theta, masses.as_slice());
    }
    Ok(if verdict == Verdict::Inconclusive { 2 } else { 0 })
}

fn build_family(args: &ScanArgs) -> Result<FamilySpec> {
    match args.family {
        FamilyKind::TwoUnequal => {
            if args.k.is_some() || args.value.is_some() {
                bail!("--k and --value apply to --family two-groups only");
            }
            let raw = args
                .values
                .as_deref()
                .context("--family two-unequal requires --values A,B")?;
            let list = parse_float_list(raw, "value")?;
            let [a, b] = list[..] else {
                bail!("--values takes exactly two comma-separated numbers, got {raw:?}");
            };
            Ok(FamilySpec::TwoUnequal {
                n_total: args.n,
                values: (a, b),
            })
        }
        FamilyKind::TwoGroups => {
            if args.values.is_some() {
                bail!("--values applies to --family two-unequal only");
            }
            let k = args.k.context("--family two-groups requires --k")?;
            let value = args.value.context("--family two-groups requires --value")?;
            Ok(FamilySpec::TwoGroups {
                n_total: args.n,
                k,
                value,
            })
        }
    }
}

fn run_scan(args: ScanArgs) -> Result<i32> {
    let family = build_family(&args)?;
    family.validate()?;
    let alpha = Alpha::new(args.alpha)?;
    let options = solver_options(args.tol, args.max_iterations);
    let outcome = scan_family(&family, alpha, &options)?;

    let inconclusive = outcome.summary.inconclusive;
    let payload = ScanPayload {
        family,
        alpha: alpha.value(),
        rows: outcome.rows,
        summary: outcome.summary,
    };
    let bytes = match args.out.format {
        Format::Json => report::to_json_bytes(&Envelope::new(payload))?,
        Format::Csv => scan_csv(&payload).into_bytes(),
    };
    report::write_output(args.out.output.as_deref(), &bytes)?;
    Ok(if inconclusive > 0 { 2 } else { 0 })
}

fn scan_csv(payload: &ScanPayload) -> String {
    let mut out = String::from("pattern,verdict,min_value,witness,moment_residual\n");
    for row in &payload.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            report::csv_field(&row.pattern),
            row.report.verdict,
            report::float_field(row.report.min_value),
            report::csv_field(row.report.witness.as_deref().unwrap_or("")),
            report::float_field(row.report.moment_residual),
        ));
    }
    out
}

fn run_inequalities(args: InequalitiesArgs) -> Result<i32> {
    if args.max_vertices < 4 || args.max_vertices % 2 != 0 {
        bail!(
            "--max-vertices must be an even number of at least 4, got {}",
            args.max_vertices
        );
    }
    let alphas = parse_float_list(&args.alphas, "alpha")?;
    if alphas.is_empty() {
        bail!("--alphas must list at least one exponent");
    }
    let payload = suites::run_suites(args.samples, args.seed, args.max_vertices, &alphas)?;

    let violations = payload.total_violations;
    let bytes = match args.out.format {
        Format::Json => report::to_json_bytes(&Envelope::new(payload))?,
        Format::Csv => inequalities_csv(&payload).into_bytes(),
    };
    report::write_output(args.out.output.as_deref(), &bytes)?;
    Ok(if violations > 0 { 2 } else { 0 })
}

fn inequalities_csv(payload: &suites::InequalitiesPayload) -> String {
    let mut out = String::from("suite,cases,violations,worst_value\n");
    for suite in &payload.suites {
        out.push_str(&format!(
            "{},{},{},{}\n",
            report::csv_field(&suite.name),
            suite.cases,
            suite.violations,
            report::float_field(suite.worst_value),
        ));
    }
    out
}
