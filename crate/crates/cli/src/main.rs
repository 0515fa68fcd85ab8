//! `qfca`: quantale-enriched concept analysis from the command line.
//!
//! Exit status: 0 on success, 1 on validation failures, 2 on parse or
//! structural errors, 3 when a resource cap is exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qfca_core::{Error, QuantaleTag};

#[derive(Debug, Parser)]
#[command(
    name = "qfca",
    version,
    about = "Quantale-enriched formal concept analysis"
)]
pub struct Cli {
    /// Truth values: bool, fuzzy, cost or powerset:<atom>,<atom>,...
    #[arg(long, global = true)]
    pub quantale: Option<QuantaleTag>,

    /// Close near-valid inputs to the least valid artifact instead of failing.
    #[arg(long, global = true)]
    pub repair: bool,

    /// Seed for randomized law checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Directory for output files; without it artifacts go to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check metric matrices, context bundles and scale files.
    Validate {
        paths: Vec<PathBuf>,
        /// Also check the quantale and relation laws on seeded random fixtures.
        #[arg(long)]
        laws: bool,
        /// Number of random instances for --laws.
        #[arg(long, default_value_t = 50)]
        instances: usize,
    },
    /// Derive a context from descriptions and scales (one pair per facet).
    Scale {
        #[arg(short, long = "description", required = true)]
        descriptions: Vec<PathBuf>,
        #[arg(short, long = "scale", required = true)]
        scales: Vec<PathBuf>,
        /// Combine facets through the tensor of their scales.
        #[arg(long)]
        tensor: bool,
    },
    /// Enumerate the concept lattice of a context bundle.
    Concepts {
        context: PathBuf,
        /// Extra grid values, separated by ';'.
        #[arg(long, value_delimiter = ';')]
        grid: Option<Vec<String>>,
        /// Emit the Hasse diagram as DOT.
        #[arg(long)]
        dot: bool,
        /// Emit the lattice as JSON (the default when --dot is absent).
        #[arg(long)]
        json: bool,
    },
    /// List attribute implications whose measure reaches a threshold.
    Implications {
        context: PathBuf,
        /// Threshold literal; defaults to the bottom value.
        #[arg(long)]
        threshold: Option<String>,
    },
    /// Lower and upper approximations of a predicate.
    Approx { space: PathBuf, predicate: PathBuf },
    /// Relation algebra over matrix files.
    Compose {
        #[arg(required = true)]
        relations: Vec<PathBuf>,
        /// Metric files for the spaces involved, in order; discrete by default.
        #[arg(long = "space")]
        spaces: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Op::Compose)]
        op: Op,
    },
    /// Constraint sum of two scales over the same data domain.
    Sum { left: PathBuf, right: PathBuf },
    /// Tensor of two scales.
    Tensor { left: PathBuf, right: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// r1 ∘ r2 ∘ ... over spaces X0, X1, ...
    Compose,
    /// s ⊸ r for s: X ⇀ Y and r: X ⇀ Z, over spaces X, Y, Z.
    ResiduateSource,
    /// r ⇐ t for r: X ⇀ Y and t: Z ⇀ Y, over spaces X, Y, Z.
    ResiduateTarget,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Validation(_)) => 1,
        Some(Error::Resource { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            if let Some(Error::Validation(report)) = err.downcast_ref::<Error>() {
                eprint!("{report}");
            }
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
