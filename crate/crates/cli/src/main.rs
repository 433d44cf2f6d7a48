//! `votesig` — solve, verify, generate, and benchmark persuasive signaling
//! schemes for voting instances.
//!
//! Exit codes: 0 success, 2 usage (from clap), 3 I/O, 4 JSON parse,
//! 5 invalid instance/scheme or failed verification, 6 size guard exceeded,
//! 7 solver failure.

mod bench;
mod commands;
mod report;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "votesig", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Solver {
    /// Polynomial-size private LP for k-voting rules.
    KvotingLp,
    /// Column generation with the plurality pricing oracle.
    ColgenPlurality,
    /// Column generation with the anonymous-utility pricing oracle.
    ColgenAnonymous,
    /// Full private LP over all recommendation profiles.
    ExactPrivate,
    /// Exact public-signaling solver.
    ExactPublic,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::KvotingLp => "kvoting-lp",
            Solver::ColgenPlurality => "colgen-plurality",
            Solver::ColgenAnonymous => "colgen-anonymous",
            Solver::ExactPrivate => "exact-private",
            Solver::ExactPublic => "exact-public",
        }
    }
}

#[derive(Args)]
pub struct SolveArgs {
    /// Instance JSON file.
    pub instance: std::path::PathBuf,
    #[arg(long, value_enum)]
    pub solver: Solver,
    /// k-voting threshold override (defaults to the instance rule).
    #[arg(long)]
    pub k: Option<usize>,
    /// Anonymous sender-utility JSON (colgen-anonymous only; defaults to the
    /// anonymous encoding of the instance rule).
    #[arg(long)]
    pub f: Option<std::path::PathBuf>,
    /// Persuasiveness re-verification tolerance.
    #[arg(long, default_value_t = votesig::DEFAULT_CHECK_TOL)]
    pub tol: f64,
    /// Dense-enumeration size guard (columns).
    #[arg(long, default_value_t = votesig::DEFAULT_COLUMN_GUARD)]
    pub guard: usize,
    /// Solve LPs in exact rational arithmetic (kvoting-lp, exact-private).
    #[arg(long)]
    pub exact_arith: bool,
    /// Scheme output path (default: alongside the instance).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Also write the report JSON here (it always goes to stdout).
    #[arg(long)]
    pub report: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    pub instance: std::path::PathBuf,
    pub scheme: std::path::PathBuf,
    #[arg(long, default_value_t = votesig::DEFAULT_CHECK_TOL)]
    pub tol: f64,
    /// Expected sender value (defaults to the value recorded in the scheme).
    #[arg(long)]
    pub claimed: Option<f64>,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    /// Generate an MSI instance instead of a persuasion instance.
    #[arg(long)]
    pub msi: bool,
    #[arg(long, default_value_t = 3)]
    pub states: usize,
    #[arg(long, default_value_t = 3)]
    pub receivers: usize,
    #[arg(long, default_value_t = 2)]
    pub candidates: usize,
    /// "kvoting:K" or "plurality".
    #[arg(long, default_value = "kvoting:2")]
    pub rule: String,
    /// "uniform" or "random".
    #[arg(long, default_value = "uniform")]
    pub prior: String,
    #[arg(long, default_value_t = 3)]
    pub elements: usize,
    #[arg(long, default_value_t = 3)]
    pub subsets: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Directory of instance JSON files.
    #[arg(long)]
    pub corpus: std::path::PathBuf,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = votesig::DEFAULT_COLUMN_GUARD)]
    pub guard: usize,
    #[arg(long, default_value_t = votesig::DEFAULT_CHECK_TOL)]
    pub tol: f64,
}

#[derive(Args)]
pub struct ReduceMsiArgs {
    pub msi: std::path::PathBuf,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct PadArgs {
    pub instance: std::path::PathBuf,
    /// Original k-voting threshold to emulate under plurality.
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file against every structural invariant.
    Validate { instance: std::path::PathBuf },
    /// Solve an instance and emit scheme + report JSON.
    Solve(SolveArgs),
    /// Re-verify a scheme file against an instance.
    Verify(VerifyArgs),
    /// Generate seeded random instances (same seed, same bytes).
    Gen(GenArgs),
    /// Run every applicable solver over a corpus and emit a CSV table.
    Bench(BenchArgs),
    /// Build the public-signaling instance of the subset-intersection
    /// reduction.
    ReduceMsi(ReduceMsiArgs),
    /// Pad a two-candidate k-voting instance into an equivalent plurality
    /// instance.
    Pad(PadArgs),
}

/// CLI failure carrying its exit code.
pub enum CliError {
    Io(String),
    Parse(String),
    Invalid(String),
    Guard(String),
    Solver(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Parse(_) => 4,
            CliError::Invalid(_) => 5,
            CliError::Guard(_) => 6,
            CliError::Solver(_) => 7,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m)
            | CliError::Parse(m)
            | CliError::Invalid(m)
            | CliError::Guard(m)
            | CliError::Solver(m) => m,
        }
    }
}

impl From<votesig::Error> for CliError {
    fn from(e: votesig::Error) -> Self {
        use votesig::Error::*;
        match &e {
            Json(_) => CliError::Parse(e.to_string()),
            InvalidInstance(_) | InvalidScheme(_) | Format(_) | DimensionMismatch(_)
            | BadParameter(_) => CliError::Invalid(e.to_string()),
            SizeGuard { .. } => CliError::Guard(e.to_string()),
            LpFailed(_) | NonConvergence { .. } | Infeasible(_) | DominanceViolated { .. } => {
                CliError::Solver(e.to_string())
            }
        }
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { instance } => commands::validate(&instance),
        Command::Solve(args) => commands::solve(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Gen(args) => commands::gen(&args),
        Command::Bench(args) => bench::run(&args),
        Command::ReduceMsi(args) => commands::reduce_msi(&args),
        Command::Pad(args) => commands::pad(&args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
