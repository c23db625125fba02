use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use exhauster::tolerance::set_eps;
use exhauster_cli::commands::{self, Method, Output, Relation};
use exhauster_cli::CliError;

/// Evaluate, compare and reduce finite exhausters described in JSON files.
///
/// Exit codes: 0 success; 1 general failure or verify gap above tolerance;
/// 2 malformed input; 3 dimension mismatch; 4 missing cone or decomposition;
/// 5 unsupported operand pair; 6 other precondition violated.
/// EXH_TOLERANCE overrides the numerical tolerance (default 1e-9).
#[derive(Parser)]
#[command(name = "exh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print h(g) for one direction.
    Eval {
        file: PathBuf,
        /// Comma-separated coordinates, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Remove redundant members; prints a JSON report and writes the reduced problem.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Where to write the reduced problem (default: `<stem>.reduced.json`).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test whether member I precedes member J (0-based indices).
    Compare {
        file: PathBuf,
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = Relation::M1)]
        relation: Relation,
    },
    /// Check the optimality conditions against the file's decomposition.
    Optimality { file: PathBuf },
    /// Compare two problems on random directions of their common domain.
    Verify {
        original: PathBuf,
        reduced: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest acceptable gap (default: the numerical tolerance).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Write `g1,...,gn,h` rows for a grid of unit directions in the domain.
    Export {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
}

fn apply_tolerance_override() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("EXH_TOLERANCE") else {
        return Ok(());
    };
    let value: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Schema(format!("EXH_TOLERANCE is not a number: {raw:?}")))?;
    if !set_eps(value) {
        return Err(CliError::Schema(format!(
            "EXH_TOLERANCE must be positive and finite, got {raw}"
        )));
    }
    log::debug!("tolerance set to {value:e}");
    Ok(())
}

fn run(cli: Cli) -> Result<Output, CliError> {
    apply_tolerance_override()?;
    match cli.command {
        Command::Eval { file, direction } => commands::eval(&file, &direction),
        Command::Reduce {
            file,
            method,
            output,
        } => commands::reduce(&file, method, output.as_deref()),
        Command::Compare {
            file,
            i,
            j,
            relation,
        } => commands::compare(&file, i, j, relation),
        Command::Optimality { file } => commands::optimality(&file),
        Command::Verify {
            original,
            reduced,
            samples,
            seed,
            tolerance,
        } => commands::verify(&original, &reduced, samples, seed, tolerance),
        Command::Export { file, grid } => commands::export(&file, grid),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            let text = output.text.trim_end_matches('\n');
            println!("{text}");
            match output.failure {
                None => ExitCode::SUCCESS,
                Some(err) => {
                    eprintln!("exh: {err}");
                    ExitCode::from(err.exit_code() as u8)
                }
            }
        }
        Err(err) => {
            eprintln!("exh: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
