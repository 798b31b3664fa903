//! `qeei`: eigenvalues, eigenvectors, determinants and adjugates of
//! quaternion Hermitian matrices.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qeei_core::{Error, HermitianQMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use commands::Context;
use input::MatrixFile;
use report::{Report, Status};

const EXIT_PARSE: u8 = 2;
const EXIT_NOT_HERMITIAN: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;
const EXIT_DEGENERATE: u8 = 5;
const EXIT_COMPLEXITY: u8 = 6;
const EXIT_VIOLATION: u8 = 7;

#[derive(Parser)]
#[command(name = "qeei", version, about = "Quaternion Hermitian eigen-analysis via the quaternion adjugate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Right eigenvalues, ascending.
    Eig(Common),
    /// Unit eigenvector for the I-th eigenvalue.
    Vec {
        #[command(flatten)]
        common: Common,
        /// 1-based eigenvalue index (ascending order).
        #[arg(long)]
        index: usize,
        /// Component made real and positive; defaults to the largest one.
        #[arg(long)]
        pivot: Option<usize>,
    },
    /// Determinant of A, or of λE - A with --lambda.
    Det {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
    /// Quaternion adjugate of A, or of λE - A with --lambda.
    Qadj {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
    /// Run every identity check and report residuals.
    Verify(Common),
    /// Print a random Hermitian matrix file.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Matrix file (JSON with n, re, im_i, im_j, im_k).
    file: PathBuf,
    /// Base tolerance for residual checks.
    #[arg(long, env = "QEEI_TOL", default_value_t = 1e-8, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("tolerance must be positive and finite".into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotHermitian { .. } | Error::NotSquare { .. } => EXIT_NOT_HERMITIAN,
        Error::DegenerateEigenvalue { .. } => EXIT_DEGENERATE,
        Error::ComplexityLimit { .. } => EXIT_COMPLEXITY,
        Error::IdentityViolation { .. } => EXIT_VIOLATION,
        Error::IndexOutOfRange { .. }
        | Error::EqualIndices { .. }
        | Error::DimensionMismatch { .. }
        | Error::EmptyMatrix => EXIT_PARSE,
        Error::ZeroDivisor
        | Error::NotSymmetric { .. }
        | Error::NoConvergence { .. }
        | Error::GroupingFailure { .. }
        | Error::PivotFailure { .. }
        | Error::NoZeroEigenvalue { .. } => EXIT_NUMERICAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let arguments: Vec<String> = std::env::args().skip(1).collect();

    let (name, common) = match &cli.command {
        Command::Random { n, seed } => {
            if *n == 0 {
                eprintln!("error: n must be positive");
                return ExitCode::from(EXIT_PARSE);
            }
            let h = HermitianQMatrix::random(*n, &mut ChaCha8Rng::seed_from_u64(*seed));
            let file = MatrixFile::from_qmatrix(h.as_qmatrix());
            println!("{}", serde_json::to_string_pretty(&file).expect("matrix serializes"));
            return ExitCode::SUCCESS;
        }
        Command::Eig(c) => ("eig", c),
        Command::Vec { common, .. } => ("vec", common),
        Command::Det { common, .. } => ("det", common),
        Command::Qadj { common, .. } => ("qadj", common),
        Command::Verify(c) => ("verify", c),
    };

    let input = match input::load(&common.file) {
        Ok(i) => i,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let ctx = Context {
        command: name,
        arguments,
        input,
        tol: common.tol,
    };

    let result = match &cli.command {
        Command::Eig(_) => commands::eig(&ctx),
        Command::Vec { index, pivot, .. } => commands::vec(&ctx, *index, *pivot),
        Command::Det { lambda, .. } => commands::determinant(&ctx, *lambda),
        Command::Qadj { lambda, .. } => commands::adjugate(&ctx, *lambda),
        Command::Verify(_) => commands::verify(&ctx),
        Command::Random { .. } => unreachable!("handled above"),
    };

    match result {
        Ok(report) => emit(&report, common.format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Degenerate => ExitCode::from(EXIT_DEGENERATE),
        Status::Violation => ExitCode::from(EXIT_VIOLATION),
    }
}
