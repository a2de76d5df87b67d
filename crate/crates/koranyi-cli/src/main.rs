//! `koranyi` — classify boundary behavior of holomorphic functions of
//! several complex variables: approach-region membership dumps, growth
//! fits of directional spherical derivatives, admissible-limit verdicts
//! and the library's property suites.

mod commands;
mod input;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 completed, 2 input error, 3 geometry/sampling failure,
/// 4 internal invariant breach.
#[derive(Parser)]
#[command(name = "koranyi", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full verdict: normal limit, admissible status, criterion flags,
    /// growth and boundedness reports.
    Classify(ClassifyArgs),
    /// Membership/sample dumps of approach regions as CSV.
    Region(RegionArgs),
    /// Growth fits of the directional spherical derivatives.
    Growth(GrowthArgs),
    /// Run the library's invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// Expression in z1..zn, e.g. "z2^2/(1-z1)".
    #[arg(long, conflicts_with = "catalog")]
    function: Option<String>,
    /// Catalog name: paper_counterexample, tangential_cubed, inv_normal,
    /// coordinate, disc_linear, constant(c).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct DomainArgs {
    /// `ball:<n>` or `graph:<n>:<psi>` with psi a real polynomial in
    /// z1..z_{2n-1} or a builtin (flat, paraboloid, ellipsoid:a1,a2,...).
    #[arg(long, default_value = "ball:2")]
    domain: String,
    /// Curvature bound for DSL graph domains.
    #[arg(long, default_value_t = 1.0)]
    curvature: f64,
    /// Boundary vertex, e.g. "(1,0)" or "(0.6,0.8)".
    #[arg(long, default_value = "(1,0)")]
    vertex: String,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    domain: DomainArgs,
    /// Comma-separated apertures.
    #[arg(long, default_value = "1.5,3,6")]
    alphas: String,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Growth-cap constant K for the refined-Lindelöf section.
    #[arg(long, default_value_t = 2.0)]
    k_cap: f64,
    /// Single probe aperture beta; adds the single-region section.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | text
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct RegionArgs {
    /// Region spec, repeatable: `koranyi:alpha=2@xi=(1,0)`,
    /// `stolz:alpha=2@xi=(1,0)`, `adapted:alpha=3@xi=(1,0)`, ...
    #[arg(long, required = true)]
    region: Vec<String>,
    #[arg(long, default_value = "ball:2")]
    domain: String,
    #[arg(long, default_value_t = 1.0)]
    curvature: f64,
    /// Grid resolution per axis for the cross-section dump.
    #[arg(long, conflicts_with = "sample")]
    grid: Option<usize>,
    /// `d_target,count` rejection sampling instead of a grid.
    #[arg(long)]
    sample: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | text | csv (csv dumps the per-path samples)
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Substring filter on suite names.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// text | json
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Classify(args) => commands::classify(args),
        Cmd::Region(args) => commands::region(args),
        Cmd::Growth(args) => commands::growth(args),
        Cmd::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(output::exit_code_for(&err))
        }
    }
}
