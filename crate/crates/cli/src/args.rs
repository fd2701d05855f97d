use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qwsearch",
    version,
    about = "Quantum walk search on graphs, full and reduced"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coarsest equitable partition with the marked vertex as a singleton
    Partition {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continuous-time search: P(marked) over a time grid
    Ctqw {
        #[command(flatten)]
        graph: GraphArgs,
        /// Hopping rate; defaults to 1/d on families where d is known
        #[arg(long)]
        gamma: Option<f64>,
        /// End of the time grid (default π√N)
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Discrete-time search with Grover coins: P(marked) per step
    Dtqw {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal search time and success probability for a range of sizes
    Scan {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated vertex counts (rows for torus)
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Walk::Ctqw)]
        walk: Walk,
        #[arg(long, default_value_t = 0)]
        marked: usize,
        /// Hopping rate for every size; defaults to 1/d per instance
        #[arg(long)]
        gamma: Option<f64>,
        /// CTQW horizon (default π√N per instance)
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        /// DTQW step horizon (default ⌈2π√N⌉ per instance)
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distance between the Hadamard walk's X_n/n and its limit law
    KonnoDemo {
        #[arg(long, value_delimiter = ',', default_value = "100,300,1000")]
        steps: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge-list file: "n m" header, then one "u v" pair per line
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub edge_list: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Vertex count (torus: rows; hypercube: 2^dimension)
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree for random-regular and apex-regular
    #[arg(long)]
    pub d: Option<usize>,
    /// Torus columns (default: square)
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub marked: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Cycle,
    Hypercube,
    Torus,
    RandomRegular,
    ApexRegular,
    ApexCycle,
    PaperExample,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Reduced,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Walk {
    Ctqw,
    Dtqw,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}
