use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "clk", version, about = "SL(2,C) Casson-Lin invariants of two-bridge knots and their connected sums")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for trace sampling and gluing parameters.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Number of sampled traces per sweep.
    #[arg(long, default_value_t = 50, global = true)]
    pub samples: usize,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// χ_CL of a knot or connected sum, e.g. "3_1 # 4_1" or "2b(7,3)".
    Invariant { knot: String },
    /// Generic sweep of a prime knot, or the single slice at --tau.
    Sweep {
        knot: String,
        /// Exact trace as a Gaussian rational, e.g. "1/2+3/4i".
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
    /// Exceptional traces with provenance.
    BadSet { knot: String },
    /// Character polynomial P(x, y) of a prime knot.
    Charpoly { knot: String },
    /// Alexander polynomial and the traces it excludes.
    Alexander { knot: String },
    /// Monodromy of the slice roots around a loop in the trace plane.
    /// Without --center, loops around every branch candidate are tracked.
    Monodromy {
        knot: String,
        /// Loop center "a+bi" (floats accepted).
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
        #[arg(long, default_value_t = 256)]
        steps: usize,
        /// Traverse the loop clockwise.
        #[arg(long)]
        reverse: bool,
    },
    /// Freeness of the Z/n subgroup of the C* gluing action on a connected sum.
    VerifyCstar {
        knot: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// χ_CL for every descriptor in FILE (one per line), or a built-in corpus.
    Corpus { file: Option<PathBuf> },
}
