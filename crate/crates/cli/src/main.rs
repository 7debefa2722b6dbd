mod commands;
mod io;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Failures, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("genericity failure: {0}")]
    Genericity(String),
    #[error("cross-check mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Genericity(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<tropcount_core::Error> for CliError {
    fn from(e: tropcount_core::Error) -> Self {
        use tropcount_core::Error as E;
        match e {
            E::GenericityFailure(_) | E::NonGenericInput(_) | E::NonGenericCrossing { .. } => {
                CliError::Genericity(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "tropcount", version, about = "Counts rational plane curves through points via tropical curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Source {
    /// Degree of a plane curve class; legs (-1,0), (0,-1), (1,1) each d times.
    #[arg(long, conflicts_with_all = ["delta", "curves"])]
    degree: Option<usize>,
    /// Explicit degree as `x,y:m;...`, e.g. `-1,0:2;0,-1:2;1,1:2`.
    #[arg(long, conflicts_with = "curves", allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, default_value_t = 0)]
    genus: usize,
    /// Points in Mikhalkin position drawn from this seed.
    #[arg(long, conflicts_with = "points")]
    mikhalkin_seed: Option<u64>,
    /// Points file: {"points": [["p/q","r/s"],...], "signs": ["++",...]}.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Curve set written by `enumerate`.
    #[arg(long, conflicts_with_all = ["points", "mikhalkin_seed"])]
    curves: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerates the curves through the points.
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Complex and real tropical counts with per-curve rows.
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        complex: bool,
        #[arg(long)]
        real: bool,
        /// `all-positive`, one sign pair for every point, or a comma-separated pair per point.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign_t: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Tropical Welschinger number with a per-curve node census check.
    Welschinger {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draws a curve set as SVG.
    Render {
        #[arg(long)]
        curves: PathBuf,
        /// Adds the dual subdivision next to each curve.
        #[arg(long)]
        dual: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, hide = true)]
        inject_snf_bug: bool,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TROPCOUNT_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("TROPCOUNT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate { source, output } => commands::enumerate(&source, output.as_deref()),
        Command::Count { source, complex, real, signs, sign_t, format, output } => {
            let job = commands::CountJob { complex, real, signs, sign_t, format };
            commands::count(&source, &job, output.as_deref())
        }
        Command::Welschinger { source, format, output } => commands::welschinger(&source, format, output.as_deref()),
        Command::Render { curves, dual, output } => commands::render(&curves, dual, output.as_deref()),
        Command::Selftest { seed, max_degree, inject_snf_bug } => commands::selftest(seed, max_degree, inject_snf_bug),
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tropcount: {e}");
            ExitCode::from(e.code())
        }
    }
}
