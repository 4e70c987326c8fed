use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "slugger", version, about = "Lossless hierarchical graph summarization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize an edge list and write the summary file.
    Summarize(SummarizeArgs),
    /// Check that a summary reproduces an edge list exactly.
    Verify {
        summary: PathBuf,
        graph: PathBuf,
    },
    /// Size, composition and tree statistics of a summary.
    Stats {
        summary: PathBuf,
        /// Original edge list, to report the relative size.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Sorted neighbors of one node, read from the summary.
    Neighbors {
        summary: PathBuf,
        #[arg(long)]
        node: i64,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// PageRank computed on the summary.
    Pagerank {
        summary: PathBuf,
        #[arg(long, default_value_t = 0.85)]
        damping: f64,
        #[arg(long, default_value_t = 30)]
        iters: usize,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Depth-first visit order from a node.
    Dfs {
        summary: PathBuf,
        #[arg(long)]
        start: i64,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Breadth-first hop distances from a node.
    Bfs {
        summary: PathBuf,
        #[arg(long)]
        start: i64,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Write the full edge list a summary represents.
    Decode {
        summary: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Mean neighbor-query latency over sampled nodes.
    QueryBench {
        summary: PathBuf,
        #[arg(long, default_value_t = 1000)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summarize induced samples of a graph and compare runtime per edge.
    BenchScaling(BenchArgs),
    /// Generate a synthetic edge list.
    #[command(subcommand)]
    Gen(GenCommand),
}

/// Summaries number nodes densely in order of first appearance in the
/// input file. Passing that file maps node ids to and from its labels.
#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Edge list the summary was built from; node ids are then its labels.
    #[arg(long = "graph")]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 20)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum height of any supernode tree.
    #[arg(long)]
    pub height_bound: Option<usize>,
    #[arg(long)]
    pub no_prune: bool,
    #[arg(long, default_value_t = 500)]
    pub max_candidate_size: usize,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
    /// Write the key=value report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Run this many times (seeds seed, seed+1, ...) and report each run and the mean.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    /// Suppress per-iteration lines on stderr.
    #[arg(short, long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [0.125, 0.25, 0.5, 1.0])]
    pub fractions: Vec<f64>,
    /// Seed for the node samples.
    #[arg(long, default_value_t = 0)]
    pub sample_seed: u64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// n groups of k nodes on a ring, each node adjacent to all but the
    /// nodes of the two neighbouring groups.
    Theorem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cliques joined in a chain by single edges.
    Caveman {
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}
