use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use treesplit::{run, Algorithm, Command, ExperimentConfig, GraphKind};

/// Balanced graph partitions under the spanning-tree weight: splittability
/// sweeps, exact counts and sampler diagnostics.
#[derive(Parser)]
#[command(name = "treesplit", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probability that a uniform spanning tree is k-splittable, per N.
    SplittabilityScan(Args),
    /// Total weight of each (i, N - i) split size of the complete graph.
    Figure2(Args),
    /// Balanced versus slack-1 weights on the slack gadget.
    SlackGadget(Args),
    /// Distance to stationarity of the up-down walk and recombination.
    ChainValidate(Args),
    /// Rejection and acceptance counts of the samplers.
    AlgorithmCompare(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Complete,
    Gnm,
    Gnp,
    Grid,
    Cycle,
    Path,
    Gadget,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    All,
    UpDown,
    Recom,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct Args {
    /// Graph family (default depends on the subcommand).
    #[arg(long, value_enum)]
    graph: Option<GraphArg>,
    /// Comma-separated vertex counts, or gadget sizes for the gadget.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Edge probability for gnp, or edge density for gnm without --m.
    #[arg(long)]
    p: Option<f64>,
    /// Edge count for gnm.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    /// Edge-list file for --graph file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    slack: usize,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    steps: Option<u64>,
    /// Independent chains for chain-validate.
    #[arg(long)]
    chains: Option<u64>,
    #[arg(long)]
    max_trees: Option<u64>,
    #[arg(long)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Draw one random graph per N instead of a fresh graph per trial.
    #[arg(long)]
    fixed_graph: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Add wall-clock columns (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Add the mean spanning-tree diameter to splittability-scan.
    #[arg(long)]
    diameter: bool,
    /// Largest gadget size verified by exhaustive enumeration.
    #[arg(long)]
    exhaustive_max: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    algorithm: AlgorithmArg,
}

fn config(command: Command, a: &Args) -> ExperimentConfig {
    let d = ExperimentConfig::defaults(command, a.seed);
    ExperimentConfig {
        graph: match a.graph {
            None => d.graph,
            Some(GraphArg::Complete) => GraphKind::Complete,
            Some(GraphArg::Gnm) => GraphKind::Gnm,
            Some(GraphArg::Gnp) => GraphKind::Gnp,
            Some(GraphArg::Grid) => GraphKind::Grid,
            Some(GraphArg::Cycle) => GraphKind::Cycle,
            Some(GraphArg::Path) => GraphKind::Path,
            Some(GraphArg::Gadget) => GraphKind::Gadget,
            Some(GraphArg::File) => GraphKind::File,
        },
        n_list: a.n_list.clone().unwrap_or(d.n_list),
        k: a.k,
        p: a.p,
        m: a.m,
        width: a.width,
        height: a.height,
        input: a.input.clone(),
        slack: a.slack,
        trials: a.trials.unwrap_or(d.trials),
        steps: a.steps.unwrap_or(d.steps),
        chains: a.chains.unwrap_or(d.chains),
        max_trees: a.max_trees.unwrap_or(d.max_trees),
        seed: a.seed,
        fixed_graph: a.fixed_graph,
        threads: a.threads,
        timing: a.timing,
        diameter: a.diameter,
        exhaustive_max: a.exhaustive_max.unwrap_or(d.exhaustive_max),
        algorithm: match a.algorithm {
            AlgorithmArg::All => Algorithm::All,
            AlgorithmArg::UpDown => Algorithm::UpDown,
            AlgorithmArg::Recom => Algorithm::Recom,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Cmd::SplittabilityScan(a) => (Command::SplittabilityScan, a),
        Cmd::Figure2(a) => (Command::Figure2, a),
        Cmd::SlackGadget(a) => (Command::SlackGadget, a),
        Cmd::ChainValidate(a) => (Command::ChainValidate, a),
        Cmd::AlgorithmCompare(a) => (Command::AlgorithmCompare, a),
    };
    let cfg = config(command, args);
    let report = match run(command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
