use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "lightspan", version, about = "Build and verify light near-additive spanners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it to `<output-dir>/graph.edges`.
    Gen(GenArgs),
    /// Build a near-additive spanner.
    Build(BuildArgs),
    /// Build the spanner for graphs whose heaviest edge is at least sqrt(w(MST)).
    BuildWmax(BuildWmaxArgs),
    /// Check stretch and lightness of a spanner against its graph.
    Verify(VerifyArgs),
    /// Dump the net hierarchy of a graph as JSON.
    Inspect(InspectArgs),
    /// Build and verify over a grid of sizes, levels, eps values and seeds.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum FamilyArg {
    Path,
    Star,
    Grid,
    ErdosRenyi,
    Geometric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum WeightsArg {
    Unit,
    Uniform,
    Euclidean,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum ModeArg {
    AllPairs,
    Sampled,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum FormatArg {
    Json,
    Csv,
    EdgeList,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum GraphFormatArg {
    EdgeList,
    Dimacs,
}

#[derive(Args, Debug, Clone)]
struct FamilyOpts {
    #[arg(long, value_enum, default_value = "geometric")]
    family: FamilyArg,
    /// Vertex count; for grids, the number of columns is `n / rows`.
    #[arg(long, default_value_t = 256)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    rows: usize,
    /// Edge probability for erdos-renyi; defaults to 3 ln(n) / n.
    #[arg(long)]
    p: Option<f64>,
    /// Connection radius for geometric; defaults to sqrt(2.5 ln(n) / (pi n)).
    #[arg(long)]
    radius: Option<f64>,
    /// Defaults to euclidean for geometric graphs and uniform otherwise.
    #[arg(long, value_enum)]
    weights: Option<WeightsArg>,
    #[arg(long, default_value_t = 1.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    #[arg(long, value_enum, default_value = "edge_list")]
    graph_format: GraphFormatArg,
}

#[derive(Args, Debug)]
struct InputOpts {
    /// Graph file; `.gr` and `.dimacs` files are read as DIMACS.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    graph_format: Option<GraphFormatArg>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    input: InputOpts,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Allow eps >= 0.1; the stretch guarantees no longer apply.
    #[arg(long)]
    unsafe_eps: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args, Debug)]
struct BuildWmaxArgs {
    #[command(flatten)]
    input: InputOpts,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputOpts,
    /// Spanner JSON; defaults to `<output-dir>/spanner.json`.
    #[arg(long)]
    spanner: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all_pairs")]
    mode: ModeArg,
    #[arg(long, default_value_t = 64)]
    sample_size: usize,
    /// Seed for source sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args, Debug)]
struct InspectArgs {
    #[command(flatten)]
    input: InputOpts,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long)]
    unsafe_eps: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyOpts,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [256, 1024, 4096])]
    ns: Vec<usize>,
    #[arg(long = "ks", value_delimiter = ',', default_values_t = [2, 3])]
    ks: Vec<usize>,
    #[arg(long = "eps-values", value_delimiter = ',', default_values_t = [0.05])]
    eps_values: Vec<f64>,
    /// Number of seeds per cell, starting at `--seed`.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "sampled")]
    mode: ModeArg,
    #[arg(long, default_value_t = 32)]
    sample_size: usize,
    #[arg(long)]
    unsafe_eps: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested check passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(a) => commands::gen(&a).map(|_| true),
        Command::Build(a) => commands::build(&a).map(|_| true),
        Command::BuildWmax(a) => commands::build_wmax(&a).map(|_| true),
        Command::Verify(a) => commands::verify(&a),
        Command::Inspect(a) => commands::inspect(&a).map(|_| true),
        Command::Sweep(a) => commands::sweep(&a),
    }
}
