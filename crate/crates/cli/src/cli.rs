use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hyperturan", version, about = "Turán numbers of disjoint cycles in uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate closed-form Turán numbers over a parameter grid.
    Formula(FormulaArgs),
    /// Write an extremal construction as an edge-list file.
    Construct(ConstructArgs),
    /// Look for a family of disjoint patterns in an edge-list file.
    Check(CheckArgs),
    /// Extract disjoint cycles with a step-by-step trace.
    Extract(ExtractArgs),
    /// Compute a true Turán number by exhaustive search.
    Search(SearchArgs),
    /// Run the acceptance suite and report pass/fail per criterion.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit the timestamp and timings so that output is byte-for-byte repeatable.
    #[arg(long)]
    pub reproducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaVariant {
    /// Disjoint minimal cycles.
    Minimal,
    /// Disjoint linear cycles.
    Linear,
    /// A single linear path (one length).
    Path,
    /// No two edges meeting in exactly one vertex (ignores --lengths).
    Kmw,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[arg(long, value_enum)]
    pub variant: FormulaVariant,
    /// Vertex counts: comma-separated values and inclusive ranges, e.g. `8-20` or `10,12`.
    #[arg(long)]
    pub n: String,
    /// Uniformities, same syntax as --n.
    #[arg(long)]
    pub k: String,
    /// One length tuple, e.g. `3,4`; repeat the flag for several tuples.
    #[arg(long)]
    pub lengths: Vec<String>,
    /// Evaluate `r` copies of a single length.
    #[arg(long)]
    pub copies: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructVariant {
    Minimal,
    Linear,
    Path,
    /// All k-sets meeting --set.
    Meeting,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub variant: ConstructVariant,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Cycle lengths, e.g. `3,3`, or the path length.
    #[arg(long)]
    pub lengths: Option<String>,
    /// The fixed set S (default `0..t-1`).
    #[arg(long)]
    pub set: Option<String>,
    /// Even-case correction: the extra edge (minimal) or the two fixed
    /// elements (linear, path). Default: the first free vertices after S.
    #[arg(long)]
    pub extra: Option<String>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Edge-list file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Family, e.g. `minimal:3+linear:4`. Kinds: minimal, linear,
    /// linear-path, berge-path, berge-cycle.
    #[arg(long)]
    pub spec: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CycleChoice {
    Minimal,
    Linear,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Edge-list file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Cycle lengths, e.g. `3,4`.
    #[arg(long)]
    pub lengths: String,
    #[arg(long, value_enum, default_value_t = CycleChoice::Minimal)]
    pub variant: CycleChoice,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Forbidden family, e.g. `minimal:3`.
    #[arg(long)]
    pub spec: String,
    /// Stop after this many search nodes.
    #[arg(long, default_value_t = 50_000_000)]
    pub max_nodes: u64,
    /// Stop after this many seconds.
    #[arg(long, default_value_t = 60.0)]
    pub max_seconds: f64,
    /// Do not fix the first edge at the root.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Seed for saturation sampling.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also estimate the saturation fraction of the result from this many
    /// sampled non-edges.
    #[arg(long, default_value_t = 0)]
    pub saturation_samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridChoice {
    Small,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = GridChoice::Small)]
    pub grid: GridChoice,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Only these criteria, e.g. `1,2,5`.
    #[arg(long)]
    pub criteria: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}
