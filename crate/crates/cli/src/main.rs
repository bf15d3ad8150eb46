//! `planechar` — batch computations on numerical characters of plane points
//! and the resolutions of the a.C.M. space curves they classify.
//!
//! Subcommands: `analyze` a character, `enumerate` a window with verdicts,
//! `construct` the explicit matrix and ideal for Betti data, `resolve` an
//! explicit ideal with the linear-algebra oracle, and `selftest` the whole
//! calculus over a window. Output is JSON by default and deterministic
//! byte-for-byte for a fixed configuration and seed.

mod analyze;
mod construct;
mod enumerate;
mod inputs;
mod output;
mod resolve_cmd;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use planechar::field::{PrimeField, Rationals, DEFAULT_PRIME};

use output::Format;

/// Coefficient field selection: `prime[:p]` or `rational`.
#[derive(Debug, Clone)]
pub enum FieldChoice {
    Prime(u64),
    Rational,
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(FieldChoice::Rational);
        }
        if s == "prime" {
            return Ok(FieldChoice::Prime(DEFAULT_PRIME));
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p.parse().map_err(|_| format!("bad modulus in `{s}`"))?;
            return Ok(FieldChoice::Prime(p));
        }
        Err(format!("`{s}` is not `prime[:p]` or `rational`"))
    }
}

#[derive(Parser)]
#[command(
    name = "planechar",
    version,
    about = "Numerical characters, Betti numbers and explicit ideals of points in the projective plane"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Coefficient field: `prime[:p]` (odd prime p) or `rational`.
    #[arg(long, global = true, default_value = "prime:32003")]
    field: FieldChoice,

    /// Seed for the probabilistic rank probes.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Worker threads for enumeration and selftest sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report on one character: Hilbert table, connectedness,
    /// decomposition, Betti data and verdict.
    ///
    /// CHARACTER is a JSON array like '[4,2]', '@path' to read a file, or
    /// '-' to read stdin (one character per line for batch mode).
    Analyze { character: String },

    /// Every character with length <= S_MAX and degree <= D_MAX, one row
    /// per character with its verdict.
    Enumerate {
        s_max: usize,
        d_max: i64,
        /// Keep all rows, only connected, or only nonconnected ones.
        #[arg(value_enum, default_value_t = enumerate::Filter::All)]
        filter: enumerate::Filter,
    },

    /// Build the explicit matrix and generator set for realizable Betti
    /// data, with the rank probe report.
    Construct {
        /// Character as a JSON array; its ghost-free Betti data is used.
        #[arg(long, conflicts_with = "betti")]
        character: Option<String>,
        /// Betti data as JSON, e.g. '{"a":[2,2,4],"b":[3,5]}'.
        #[arg(long)]
        betti: Option<String>,
        /// Settle the rank claim symbolically instead of only probing.
        #[arg(long)]
        certify: bool,
    },

    /// Measure Hilbert function, minimal generators and syzygies of an
    /// explicit homogeneous ideal.
    ///
    /// GENERATORS is a comma-separated list of polynomials like
    /// 'x2^2, x1*x2, x1^4 - x0^3*x2', a JSON array of such strings,
    /// '@path', or '-' for stdin.
    Resolve { generators: String },

    /// Run every cross-check of the calculus over a character window and
    /// report pass/fail counts. Exits nonzero on any violation.
    Selftest { s_max: usize, d_max: i64 },
}

/// Command failure with its exit-code semantics:
/// 1 = property violation, 2 = invalid input.
pub enum Failure {
    Invalid(String),
    Violation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Violation(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Violation(m) => m,
        }
    }
}

pub type CmdResult = Result<String, Failure>;

enum FieldMode {
    Prime(PrimeField),
    Rational,
}

fn field_mode(choice: &FieldChoice) -> Result<FieldMode, Failure> {
    match choice {
        FieldChoice::Prime(p) => PrimeField::new(*p)
            .map(FieldMode::Prime)
            .map_err(|e| Failure::Invalid(e.to_string())),
        FieldChoice::Rational => Ok(FieldMode::Rational),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze { character } => analyze::run(character, cli.format),
        Command::Enumerate {
            s_max,
            d_max,
            filter,
        } => enumerate::run(*s_max, *d_max, *filter, cli.format),
        Command::Construct {
            character,
            betti,
            certify,
        } => match field_mode(&cli.field)? {
            FieldMode::Prime(f) => construct::run(
                &f,
                character.as_deref(),
                betti.as_deref(),
                *certify,
                cli.seed,
                cli.format,
            ),
            FieldMode::Rational => construct::run(
                &Rationals,
                character.as_deref(),
                betti.as_deref(),
                *certify,
                cli.seed,
                cli.format,
            ),
        },
        Command::Resolve { generators } => match field_mode(&cli.field)? {
            FieldMode::Prime(f) => resolve_cmd::run(&f, generators, cli.format),
            FieldMode::Rational => resolve_cmd::run(&Rationals, generators, cli.format),
        },
        Command::Selftest { s_max, d_max } => match field_mode(&cli.field)? {
            FieldMode::Prime(f) => selftest::run(&f, *s_max, *d_max, cli.seed, cli.format),
            FieldMode::Rational => selftest::run(&Rationals, *s_max, *d_max, cli.seed, cli.format),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("planechar: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("planechar: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }

    match run(&cli) {
        Ok(output) => {
            let payload = if output.ends_with('\n') {
                output
            } else {
                format!("{output}\n")
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("planechar: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{payload}"),
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("planechar: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
