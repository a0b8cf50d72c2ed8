mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "arr", version, about = "Exact combinatorics of complex hyperplane arrangements")]
pub struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where the arrangement comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog family, e.g. `monomial:3:3`, `full-monomial:4:3`, `G31`, `hessian`.
    #[arg(long)]
    pub spec: Option<String>,
    /// Arrangement JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PrimeChoice {
    #[arg(long)]
    pub prime: Option<u64>,
    /// Every prime up to the number of hyperplanes.
    #[arg(long)]
    pub all_primes: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a catalog arrangement to a JSON file.
    Build {
        #[arg(long)]
        spec: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// List the rank-2 flats.
    Flats {
        #[command(flatten)]
        source: Source,
        /// Classify flats by type and compare with the closed-form census.
        #[arg(long)]
        census: bool,
    },
    /// Aomoto-Betti numbers.
    Betti {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        primes: PrimeChoice,
    },
    /// Vanishing criteria for one prime.
    Criteria {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        prime: u64,
    },
    /// Multinet verification and search.
    Multinet {
        #[command(subcommand)]
        action: MultinetCommand,
    },
    /// Bounds on the monodromy exponents and the characteristic polynomial.
    Monodromy {
        #[command(flatten)]
        source: Source,
        /// Multinet JSON files; catalog families add their known multinets.
        #[arg(long = "net")]
        nets: Vec<PathBuf>,
    },
    /// Recompute published tables and compare.
    Reproduce {
        #[arg(value_enum)]
        table: ReproduceTable,
        #[arg(long, default_value_t = 7)]
        m_max: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum MultinetCommand {
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        net: PathBuf,
    },
    Search {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        /// Largest number of hyperplanes searched.
        #[arg(long, default_value_t = refarr_core::search::DEFAULT_GUARD)]
        max_n: usize,
        #[arg(long)]
        max_results: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproduceTable {
    /// Aomoto-Betti numbers of the reflection arrangement catalog.
    #[value(name = "thm-b")]
    Betti,
    /// Characteristic polynomials of A(m,1,3) and A(m,1,4).
    #[value(name = "prop-full")]
    CharPoly,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<refarr_core::Error>() {
        Some(e) if e.is_internal() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
