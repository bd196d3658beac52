//! `spinstar` — command-line front end for the spin-star refrigerator
//! library.
//!
//! Three subcommands cover the library's surface:
//!
//! * `sweep` evaluates one thermodynamic quantity over a parameter grid and
//!   writes a CSV dataset; `--figure` runs a built-in preset instead of an
//!   explicit grid (enumerate them with `--list-figures`).
//! * `collide` cools a two-qubit longitudinal Ising target with refrigerant
//!   qubit streams, writing the trajectory as CSV and a JSON summary to
//!   stdout.
//! * `selftest` replays the library's oracle-equivalence and invariant
//!   checks at pinned parameters.
//!
//! Exit codes: 0 success, 1 validation error, 2 resource ceiling exceeded,
//! 3 selftest or cross-check failure. Sweep grid points are evaluated on a
//! worker pool; set `SPINSTAR_WORKERS` to pin its size (output order is
//! deterministic either way).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::process::ExitCode;

mod collide;
mod figures;
mod selftest;
mod sweep;

#[derive(Parser)]
#[command(name = "spinstar", version, about = "Spin-star quantum refrigerator datasets")]
struct Cli {
    /// List the built-in figure presets and exit.
    #[arg(long)]
    list_figures: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a quantity over a parameter grid into a CSV dataset.
    Sweep(sweep::SweepArgs),
    /// Cool a two-qubit Ising target with spin-star refrigerant streams.
    Collide(collide::CollideArgs),
    /// Run the built-in oracle-equivalence and invariant checks.
    Selftest(selftest::SelftestArgs),
}

/// A command failure carrying the process exit code it maps to.
#[derive(Debug)]
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    /// Bad user input: exit code 1.
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    /// A check that should have passed did not: exit code 3.
    pub(crate) fn check(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<spinstar::Error> for Failure {
    fn from(err: spinstar::Error) -> Self {
        let code = match err {
            spinstar::Error::ResourceCeiling { .. } => 2,
            _ => 1,
        };
        Failure { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure { code: 1, message: format!("io error: {err}") }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit codes disagree with ours: keep 0 for --help
            // and --version, 1 for anything malformed.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    if cli.list_figures {
        figures::print_catalog();
        return ExitCode::SUCCESS;
    }

    let outcome = match cli.command {
        Some(Command::Sweep(args)) => sweep::run(&args),
        Some(Command::Collide(args)) => collide::run(&args),
        Some(Command::Selftest(args)) => selftest::run(&args),
        None => {
            eprintln!("error: expected a subcommand or --list-figures (try --help)");
            return ExitCode::from(1);
        }
    };

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
