use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hpref", version, about = "Hierarchical partitioning of sets of clusterings")]
pub struct Cli {
    /// Worker threads for parallel stages (default: available processors).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a clustering grid and write a clustering-set file.
    Generate(GenerateArgs),
    /// Build a dendrogram from a clustering-set file.
    Hpref(HprefArgs),
    /// Cut a dendrogram into classes, optionally with per-class statistics.
    Cut(CutArgs),
    /// Re-run HPREF on resampled pairs and report the leaf partitions.
    Stability(StabilityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// DBSCAN grid over the bundled Iris data (200 clusterings).
    Iris,
    /// Three uniform-start and three k-means++ runs (k = 3) on the bundled
    /// toy data.
    Toy,
    /// Planted two-regime set of 40 clusterings over 10,000 points.
    Surrogate,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Numeric CSV dataset (used with --grid).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// TOML grid specification; replaces the preset's grid.
    #[arg(long)]
    pub grid: Option<PathBuf>,

    #[arg(long)]
    pub output: PathBuf,

    /// Base seed for k-means runs and synthetic data.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// `full` or a number of sampled pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairsArg {
    Full,
    Count(usize),
}

impl FromStr for PairsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(PairsArg::Full);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected 'full' or a positive count, got '{s}'")),
            Ok(n) => Ok(PairsArg::Count(n)),
        }
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Pairs indexing the matrix columns: `full` or a sample size.
    #[arg(long, default_value = "full")]
    pub pairs: PairsArg,

    /// Seed for pair sampling; one is chosen and printed if omitted.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Include the pairs (x, x), which record noise (default).
    #[arg(long, overrides_with = "no_diagonal")]
    pub include_diagonal: bool,

    #[arg(long = "no-diagonal", overrides_with = "include_diagonal")]
    pub no_diagonal: bool,
}

impl PairArgs {
    pub fn diagonal(&self) -> bool {
        !self.no_diagonal
    }
}

#[derive(Debug, Args)]
pub struct HprefArgs {
    /// Clustering-set file.
    #[arg(long)]
    pub input: PathBuf,

    /// Dendrogram JSON output.
    #[arg(long)]
    pub output: PathBuf,

    /// SVG rendering (default: the output path with an .svg extension).
    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Newick export.
    #[arg(long)]
    pub newick: Option<PathBuf>,

    #[arg(long, default_value_t = 7)]
    pub max_leaves: usize,

    /// Color the SVG by the cut with this many classes.
    #[arg(long)]
    pub cut: Option<usize>,

    #[command(flatten)]
    pub pairs: PairArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseArg {
    /// Every noise point is its own cluster.
    Singletons,
    /// All noise points of a clustering form one cluster.
    Shared,
}

#[derive(Debug, Args)]
pub struct CutArgs {
    /// Dendrogram JSON file.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long)]
    pub cut: usize,

    /// Partition CSV output (stdout summary only if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Clustering-set file the dendrogram was built from; echoes
    /// provenance and enables statistics.
    #[arg(long)]
    pub clusterings: Option<PathBuf>,

    /// Ground-truth labels, one per line, for adjusted Rand statistics.
    #[arg(long, conflicts_with = "preset")]
    pub labels: Option<PathBuf>,

    /// Use a bundled dataset's labels.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    #[arg(long, value_enum, default_value = "singletons")]
    pub noise: NoiseArg,

    /// Per-class statistics CSV output.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Clustering-set file.
    #[arg(long)]
    pub input: PathBuf,

    /// Report CSV output.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, default_value_t = 7)]
    pub max_leaves: usize,

    /// Pairs per resample.
    #[arg(long)]
    pub pairs: usize,

    #[arg(long, default_value_t = 100)]
    pub resamples: usize,

    /// Seed of the resample stream; one is chosen and printed if omitted.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Fraction of runs the most frequent partition must reach.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,

    #[arg(long, overrides_with = "no_diagonal")]
    pub include_diagonal: bool,

    #[arg(long = "no-diagonal", overrides_with = "include_diagonal")]
    pub no_diagonal: bool,
}

impl StabilityArgs {
    pub fn diagonal(&self) -> bool {
        !self.no_diagonal
    }
}
