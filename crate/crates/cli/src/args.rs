use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfactor::DEFAULT_NODE_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "hyperfactor",
    version,
    about = "Exact 1-factor, 1-factorization and permanent counting"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Maximum number of search nodes before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Input path; absent or `-` reads standard input.
#[derive(Debug, Clone, Args)]
pub struct Input {
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permanent of a tensor file, with the upper bounds along one axis.
    Permanent {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        /// Read a hypergraph and use its adjacency tensor.
        #[arg(long, conflicts_with = "matrix")]
        hypergraph: bool,
        /// Read a non-negative integer matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Number of 1-factors of a hypergraph.
    Factors {
        #[command(flatten)]
        input: Input,
        /// Also print every 1-factor.
        #[arg(long)]
        list: bool,
    },
    /// Number of 1-factorizations of a hypergraph.
    Factorizations {
        #[command(flatten)]
        input: Input,
        /// Count unordered partitions instead of ordered sequences.
        #[arg(long)]
        unordered: bool,
    },
    /// Number of proper orientations of a hypergraph.
    Orientations {
        #[command(flatten)]
        input: Input,
    },
    /// Latin squares of order n: all of them, and those with a fixed first column.
    Latin {
        #[arg(short = 'n')]
        n: usize,
    },
    /// The tensor with ones at all-distinct indices.
    UTensor {
        #[arg(short = 'd')]
        d: usize,
        /// Report its permanent instead of printing it.
        #[arg(long)]
        permanent: bool,
    },
    /// Write an instance to standard output.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exact verification of one inequality or identity.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Main terms of the asymptotic 1-factorization estimates (not certified).
    Bounds {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'd')]
        d: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Complete d-uniform hypergraph.
    Complete {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: usize,
    },
    /// Random balanced d-partite hypergraph with parts of size k.
    Partite {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'd')]
        d: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random simple d-uniform hypergraph.
    Random {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Random 1-factors added on top.
        #[arg(long, default_value_t = 1)]
        planted: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random connected d-regular bipartite graph on n + n vertices.
    Bipartite {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random (0,1) tensor.
    Tensor {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random k-regular non-negative integer matrix.
    Matrix {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Theorem4,
    Theorem5,
    Lemma4,
    Identities,
    Corollary3,
    Schrijver,
    DowGibson,
    Trivial,
    ConjectureD3,
}
