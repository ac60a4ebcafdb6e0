use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loopbank::cascade::DEFAULT_LEVELS;
use loopbank_cli::commands;
use loopbank_cli::{CliError, CliResult, Options};

/// Paraunitary filter banks, polynomial unitary loops and their Cuntz representations.
#[derive(Debug, Parser)]
#[command(name = "loopbank", version)]
struct Cli {
    /// Numerical tolerance for certification and checks.
    #[arg(long, global = true, env = "LOOPBANK_TOL", default_value_t = loopbank::polyloop::CERT_TOL)]
    tol: f64,

    /// Skip diagnostic checks (structural parsing still runs).
    #[arg(long, global = true)]
    no_verify: bool,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a loop document to a bank document or back. `-` reads stdin.
    Transform { input: String },
    /// Complete a low-pass filter to a full bank.
    Complete {
        input: String,
        /// Scale N, if the document has no "n" field.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Factor a loop into rank-one elementary factors.
    Factorize { input: String },
    /// McMillan degree (winding number of det).
    Degree { input: String },
    /// Spectrum, fixed points, Cuntz states and reduction data of the representation.
    AnalyzeRep {
        input: String,
        /// Second loop for the intertwiner report.
        #[arg(long)]
        against: Option<String>,
    },
    /// Cascade the scaling function and wavelets of a bank.
    Cascade {
        input: String,
        #[arg(long, default_value_t = DEFAULT_LEVELS)]
        iterations: usize,
        /// Write samples as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn read_input(path: &str) -> CliResult<String> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_string(), message: e.to_string() };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_to(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn run(cli: Cli) -> CliResult<()> {
    let opts = Options { tol: cli.tol, verify: !cli.no_verify };
    let output = match &cli.command {
        Command::Transform { input } => commands::transform(&read_input(input)?, opts)?,
        Command::Complete { input, n } => commands::complete(&read_input(input)?, *n, opts)?,
        Command::Factorize { input } => commands::factorize_cmd(&read_input(input)?, opts)?,
        Command::Degree { input } => commands::degree(&read_input(input)?, opts)?,
        Command::AnalyzeRep { input, against } => {
            let other = against.as_deref().map(read_input).transpose()?;
            commands::analyze_rep(&read_input(input)?, other.as_deref(), opts)?
        }
        Command::Cascade { input, iterations, csv } => {
            let (report, table) = commands::cascade(&read_input(input)?, *iterations, opts)?;
            if let Some(path) = csv {
                write_to(path, &table)?;
            }
            report
        }
    };
    match &cli.out {
        Some(path) => write_to(path, &output),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        let err = CliError::Schema(format!("--tol must be a positive number, got {}", cli.tol));
        eprintln!("{}", serde_json::to_string(&err.to_object()).expect("serializable"));
        return ExitCode::from(err.exit_code() as u8);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", serde_json::to_string(&err.to_object()).expect("serializable"));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
