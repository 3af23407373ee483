use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hardcol",
    version,
    about = "List colouring of locally sparse graphs by flaw resampling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph in the `p n m` / `e u v` text format.
    Generate(GenerateArgs),
    /// Run both phases and write a verified colouring.
    Colour(ColourArgs),
    /// Print the derived parameters and the hypothesis checklist.
    Params(ParamsArgs),
    /// Occupancy fractions against the certified lower bound.
    Occupancy(OccupancyArgs),
    /// Check a colouring against a graph and its lists.
    Verify(VerifyArgs),
    /// Estimate how often a B flaw survives its own resampling step.
    ExploreB(ExploreArgs),
    /// Seeded batch of generated instances, run in parallel.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Theorem,
    Manual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    RandomRegular,
    Binomial,
    Cycle,
    Complete,
}

#[derive(Clone, Debug, Args)]
pub struct GraphSpec {
    #[arg(long, value_enum)]
    pub kind: GraphKind,
    #[arg(long)]
    pub n: usize,
    /// Degree for random-regular graphs.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Edge probability for binomial graphs.
    #[arg(long)]
    pub p: Option<f64>,
    /// Delete one edge per triangle until none is left.
    #[arg(long)]
    pub triangle_free: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report per-vertex counts of `F_k` fans for this `k`.
    #[arg(long)]
    pub fan_k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write lists of this size.
    #[arg(long, requires = "lists_out")]
    pub q: Option<usize>,
    /// Draw each list from `1..=palette` instead of using `1..=q`.
    #[arg(long, requires = "q")]
    pub palette: Option<u64>,
    #[arg(long)]
    pub lists_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct AlgoArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Manual)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Required in theorem mode.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Fugacity (manual mode).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Target list length (manual mode).
    #[arg(long)]
    pub ell: Option<f64>,
    /// Degree bound used for the parameters; defaults to the graph's, at least 2.
    #[arg(long)]
    pub delta: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// JSON object mapping each vertex to its list of naturals.
    #[arg(long)]
    pub lists: Option<PathBuf>,
    /// List size when no list file is given.
    #[arg(long)]
    pub q: Option<usize>,
    /// Draw each generated list from `1..=palette` instead of using `1..=q`.
    #[arg(long, requires = "q")]
    pub palette: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ColourArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub lists: ListArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Phase-one step budget per attempt.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Phase-two resampling budget.
    #[arg(long)]
    pub phase2_budget: Option<u64>,
    #[arg(long, default_value_t = 5)]
    pub max_attempts: u32,
    /// Colouring output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run report output; stderr when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Write the lists actually used.
    #[arg(long)]
    pub lists_out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub delta: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub eps: f64,
    /// Vertex count for the step bound.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OccupancyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.5, 1.0, 2.0])]
    pub lambda: Vec<f64>,
    /// Neighbourhood sparsity parameter of the certificate.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Estimate from this many exact samples instead of enumerating.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Path order for the sampler in estimate mode.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub lists: ListArgs,
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub lists: ListArgs,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub runs: u64,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[command(flatten)]
    pub algo: AlgoArgs,
    /// List size; defaults to the instance's maximum degree plus one.
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub runs: u64,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
