//! `pptfarm`: build, verify and audit members of the PPT state family from
//! the command line.
//!
//! Exit status: 0 on success (or when a report was produced), 1 when a
//! verification check fails, 2 on invalid input, 3 when the requested matrix
//! exceeds the dense-order limit.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pptfarm::Error;

#[derive(Debug, Parser)]
#[command(name = "pptfarm", version, about = "Construct and audit block-structured multipartite PPT states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Materialise ρ(q) and export it as a matrix file.
    Build(BuildArgs),
    /// Check trace, positivity, support orthogonality and ‖ρ − ρ⁽⁰⁾‖₁ = 2q.
    Verify(VerifyArgs),
    /// Minimum eigenvalues of ρ(q) and its partial transposes over all cuts.
    Audit(AuditArgs),
    /// Closed-form critical weight and distance bounds for one configuration.
    Bounds(BoundsArgs),
    /// Dimension scaling table over parties and target distances.
    Scan(ScanArgs),
    /// A-block occupancy grid of the construction.
    Layout(LayoutArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Number of parties.
    #[arg(short = 'n', long = "parties")]
    pub n: Option<usize>,
    /// Local dimension of each A factor.
    #[arg(long = "dA")]
    pub d_a: Option<usize>,
    /// Local dimension of each B factor.
    #[arg(long = "dB")]
    pub d_b: Option<usize>,
    /// Sub-block source: `canonical`, or `A_PATH,B_PATH` to two matrix files.
    #[arg(long, default_value = "canonical")]
    pub blocks: String,
    /// Family description file; replaces -n, --dA, --dB and --blocks.
    #[arg(long, conflicts_with_all = ["n", "d_a", "d_b"])]
    pub family: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Mixing weight.
    #[arg(short = 'q', long = "q")]
    pub q: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Mixing weights to check, comma separated.
    #[arg(short = 'q', long = "q-grid", value_delimiter = ',')]
    pub q_grid: Vec<f64>,
    /// Relative tolerance for trace and positivity checks.
    #[arg(long, default_value_t = pptfarm::tensor::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Mixing weights reported in full, comma separated.
    #[arg(short = 'q', long = "q-grid", value_delimiter = ',')]
    pub q_grid: Vec<f64>,
    /// Relative tolerance for the positivity threshold.
    #[arg(long, default_value_t = pptfarm::tensor::DEFAULT_TOL)]
    pub tol: f64,
    /// Also report transpositions of the A factors alone.
    #[arg(long)]
    pub a_side: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(short = 'n', long = "parties")]
    pub n: usize,
    #[arg(long = "dA")]
    pub d_a: usize,
    #[arg(long = "dB")]
    pub d_b: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Party counts, comma separated.
    #[arg(short = 'n', long = "parties", value_delimiter = ',', default_value = "2,3,4")]
    pub n: Vec<usize>,
    /// Target distances 1 − ε, given as ε, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001,0.0001")]
    pub epsilon: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    #[arg(short = 'n', long = "parties")]
    pub n: usize,
    #[arg(long = "dA")]
    pub d_a: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Checks(String),
    Input(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks(_) => 1,
            Failure::Input(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Checks(m) | Failure::Input(m) | Failure::Capacity(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::Numeric(_) => Failure::Checks(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("PPTFARM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Input(format!("PPTFARM_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Build(args) => commands::build(args),
        Command::Verify(args) => commands::verify(args),
        Command::Audit(args) => commands::audit(args),
        Command::Bounds(args) => commands::bounds(args),
        Command::Scan(args) => commands::scan(args),
        Command::Layout(args) => commands::layout(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pptfarm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
