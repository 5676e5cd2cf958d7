//! `heron-rhombus` command-line front end.
//!
//! Exit codes: 0 success, 1 invariant or verification failure, 2 usage or
//! parse error.

#![allow(clippy::result_large_err)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heron_rhombus::oracle::TriangleFilter;
use heron_rhombus::Rational;

#[derive(Parser, Debug)]
#[command(
    name = "heron-rhombus",
    version,
    about = "Heron triangle / rational-angle rhombus pairs with a common area and perimeter"
)]
pub struct Cli {
    /// Worker threads for search and scan (defaults to available parallelism).
    #[arg(long, global = true, env = "HERON_RHOMBUS_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Format {
    /// Emit CSV instead of newline-delimited JSON.
    #[arg(long)]
    csv: bool,
    /// Add approximate decimal columns (not authoritative).
    #[arg(long)]
    decimal: bool,
    /// Write to this file instead of standard output; written only on success.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build family pairs for the given parameters.
    Generate {
        /// Family parameter u as "num/den"; repeatable.
        #[arg(long = "u", value_name = "U", required_unless_present = "max_height")]
        u: Vec<Rational>,
        /// Every u = m/n in lowest terms with 1 <= m, n <= H.
        #[arg(long, value_name = "H", value_parser = clap::value_parser!(u64).range(1..))]
        max_height: Option<u64>,
        /// Rescale each pair to its minimal integral witness.
        #[arg(long, conflicts_with = "scale")]
        integral: bool,
        /// Multiply every length by this positive factor instead.
        #[arg(long, value_name = "LAMBDA")]
        scale: Option<Rational>,
        #[command(flatten)]
        format: Format,
    },
    /// Re-check every record in a file ("-" for standard input).
    Verify { file: PathBuf },
    /// Exhaustive search over integer triangles.
    Search {
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(4..))]
        max_perimeter: u64,
        #[arg(long, value_enum, default_value_t = FilterArg::HeronOnly)]
        filter: FilterArg,
        /// Also consider perimeters not divisible by 4 (rational rhombus side).
        #[arg(long)]
        rational_side: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Search for rational points on W^2 = U^6 - 4U^4 + 8U^2 - 4 up to a height.
    SexticScan {
        #[arg(long, value_name = "H", value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that family witnesses appear in the exhaustive search.
    CrossValidate {
        #[arg(long = "u", value_name = "U")]
        u: Vec<Rational>,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(4..))]
        max_perimeter: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterArg {
    All,
    HeronOnly,
    IsoscelesOnly,
}

impl From<FilterArg> for TriangleFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => TriangleFilter::All,
            FilterArg::HeronOnly => TriangleFilter::HeronOnly,
            FilterArg::IsoscelesOnly => TriangleFilter::IsoscelesOnly,
        }
    }
}

/// A failed run and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.map(usize::from);
    match commands::run(cli.command, threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
