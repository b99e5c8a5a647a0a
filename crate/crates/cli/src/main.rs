//! `torelli-lab`: batch verification of tangent-map ranks for hyperelliptic
//! curves, the characteristic-2 normal form, and Hirzebruch-surface counts.
//!
//! Exit codes: 0 when everything checked passes, 1 when a check fails or
//! the input curve is degenerate, 2 on invalid input.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use torelli_lab::Error;

#[derive(Parser, Debug)]
#[command(name = "torelli-lab", version, about = "Exact rank checks for the dual tangent maps of hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank reports for random curves over a field, for each genus and trial.
    Verify {
        /// Q, GF(p) or GF(p^k)
        #[arg(long)]
        field: String,
        /// A single genus or an inclusive range such as 2..6
        #[arg(long)]
        genus: String,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rank report for one explicit curve.
    Report {
        /// e.g. "char=7;f=x^5+3x+1" or "char=2^2;alpha0=1;terms=(0:1),(1:1)"
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reduce a·y² + b·y + c = 0 over a field of characteristic 2 to
    /// y² - y = α₀x + Σ αᵢ/(x - aᵢ).
    NormalForm {
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Move this root of b to infinity first
        #[arg(long)]
        mobius_root: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Intersection numbers and dimension counts on F_{g+1}.
    Hirzebruch {
        #[arg(long)]
        genus: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Failure modes that map to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or bad input data: exit 2.
    Usage(String),
    /// An engine error; the exit code depends on the kind.
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Errors that describe malformed or out-of-range input.
fn is_invalid_input(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::NotPrime(_)
            | Error::DegreeZero
            | Error::FieldTooLarge { .. }
            | Error::FieldTooSmall { .. }
            | Error::WrongCharacteristic { .. }
            | Error::WrongDegree { .. }
            | Error::NotSquarefree(_)
            | Error::DuplicateBranchPoint(_)
            | Error::ZeroResidue(_)
            | Error::ZeroAlpha0
            | Error::InvalidGenus(_)
            | Error::CtxMismatch { .. }
            | Error::InvalidSurface
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::thread_pool().and_then(|pool| {
        pool.install(|| match cli.command {
            Command::Verify {
                field,
                genus,
                trials,
                seed,
                format,
            } => commands::verify(&field, &genus, trials, seed, format),
            Command::Report { curve, seed, format } => commands::report(&curve, seed, format),
            Command::NormalForm {
                field,
                a,
                b,
                c,
                mobius_root,
                format,
            } => commands::normal_form(&field, &a, &b, &c, mobius_root.as_deref(), format),
            Command::Hirzebruch { genus, format } => commands::hirzebruch(&genus, format),
        })
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(if is_invalid_input(&e) { 2 } else { 1 })
        }
    }
}
