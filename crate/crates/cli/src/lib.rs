//! Command-line frontend for `johnson-snf`.
//!
//! [`run`] parses the arguments, dispatches, and hands back the exit status
//! together with everything that would have been printed, so the whole
//! interface can be exercised in-process.

mod commands;
mod element;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use johnson_snf::oracle::DEFAULT_CAP;
use johnson_snf::Error;

use element::ElementArgs;

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "johnson-snf",
    version,
    about = "Smith groups of Johnson scheme matrices and subset intersection matrices"
)]
struct Cli {
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the `verify` and `conjecture` sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith group of Σ b_ℓ A_ℓ − λI assembled from the M_s blocks.
    SmithGroup(ElementArgs),
    /// Diagonal entries of a (possibly non-square) intersection matrix.
    DiagonalForm(ElementArgs),
    /// Print each M_s matrix with its multiplicity.
    Ms(ElementArgs),
    /// Eigenvalues with multiplicities.
    Eigenvalues(ElementArgs),
    /// Brute-force Smith group of the full matrix, compared with the blocks.
    Oracle {
        #[command(flatten)]
        element: ElementArgs,
        /// Largest matrix dimension the dense SNF will attempt.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Check closed-form tables against the structured and brute-force results.
    Verify(VerifyArgs),
    /// Sweep the super-standard unimodularity conjecture.
    Conjecture(ConjectureArgs),
    /// Write a matrix in the plain-text format.
    ExportMatrix(ExportArgs),
    /// Smith normal form of a matrix read from a plain-text file.
    Snf(SnfArgs),
    /// Time the structured pipeline against the brute-force SNF.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Theorem id, or `all` for the whole catalog.
    #[arg(long)]
    theorem: String,
    /// First n; defaults to the theorem's lower bound.
    #[arg(long)]
    n_from: Option<u32>,
    /// Last n; defaults to 13.
    #[arg(long)]
    n_to: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    /// Largest column size j; every i ≤ j is checked.
    #[arg(long)]
    k_max: u32,
    /// Append one JSON line per checked (n, i, j) to this file.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
enum Which {
    /// Σ b_ℓ A_ℓ − λI, or A_{n,k_r,k_c,ℓ}.
    A,
    /// Bier's matrix P_k.
    P,
    /// Standard inclusion matrix W_{i,j}.
    W,
    /// Basis matrix E_s.
    E,
    /// Super-standard matrix P̃_{i,j}.
    Ptilde,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long, ignore_case = true)]
    which: Which,
    #[command(flatten)]
    element: ElementArgs,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SnfArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also print unimodular E and F with E·M·F diagonal.
    #[arg(long)]
    transforms: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    element: ElementArgs,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

/// Anything that stops a command. Invariant violations exit with 1,
/// everything else with 2.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl CliError {
    fn status(&self) -> i32 {
        match self {
            CliError::Lib(Error::InvariantViolation { .. }) => 1,
            _ => 2,
        }
    }

    pub(crate) fn violation(theorem: &str, detail: impl Into<String>) -> Self {
        CliError::Lib(Error::InvariantViolation {
            theorem: theorem.to_string(),
            detail: detail.into(),
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            return Output {
                status: 2,
                stdout: String::new(),
                stderr: format!("error: cannot start {} threads: {e}\n", cli.threads),
            }
        }
    };
    let mut stdout = String::new();
    let result = pool.install(|| commands::dispatch(&cli.command, cli.json, &mut stdout));
    match result {
        Ok(()) => Output {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            status: e.status(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_statuses() {
        assert_eq!(CliError::violation("some theorem", "detail").status(), 1);
        assert_eq!(usage("bad flag").status(), 2);
        assert_eq!(CliError::Io("missing".into()).status(), 2);
        assert_eq!(CliError::Lib(Error::UnknownTheorem("x".into())).status(), 2);
        let msg = CliError::violation("block reduction", "groups differ").to_string();
        assert!(msg.contains("block reduction"));
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(
            "degree".parse::<element::Lambda>(),
            Ok(element::Lambda::Degree)
        );
        assert_eq!(
            "-12".parse::<element::Lambda>(),
            Ok(element::Lambda::Value(num_bigint::BigInt::from(-12)))
        );
        assert!("deg".parse::<element::Lambda>().is_err());
    }
}
