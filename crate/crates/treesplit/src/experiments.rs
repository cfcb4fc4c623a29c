//! The five experiments behind the command-line tool. Each takes an
//! [`ExperimentConfig`] and returns a [`Report`]; nothing here prints.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use treesplit_core::graph::{
    gen_gnm, gen_gnp, make_complete, make_cycle, make_grid, make_path, DEFAULT_REJECTION_BUDGET,
};
use treesplit_core::oracle::{
    enumerate_balanced_partitions, enumerate_connected_partitions, enumerate_forests,
    gadget_balanced_partitions, recom_alternatives, split_size_weight_histogram,
    verify_gadget_exhaustively,
};
use treesplit_core::{
    find_balanced_split, initial_forest, is_slack_balanced, partition_weight, recom_move,
    split_tree_once, up_down_step, BigCount, Graph, GraphFamily, Partition, RecomMove,
    RejectionStage, RngStream, UpDownVariant,
};

use crate::io::{read_edge_list, FormatError};
use crate::report::{Cell, Report};
use crate::stats::{total_variation, Estimate, ScalingFit};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(treesplit_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<treesplit_core::Error> for ExperimentError {
    fn from(e: treesplit_core::Error) -> Self {
        match e {
            treesplit_core::Error::BudgetExhausted { .. }
            | treesplit_core::Error::GuardExceeded { .. } => ExperimentError::Budget(e.to_string()),
            other => ExperimentError::Core(other),
        }
    }
}

impl ExperimentError {
    /// 2 for configuration problems, 3 for exhausted budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) | ExperimentError::Core(_) | ExperimentError::Format(_) => 2,
            ExperimentError::Budget(_) => 3,
            ExperimentError::Io(_) => 1,
        }
    }
}

pub type Result<T, E = ExperimentError> = std::result::Result<T, E>;

fn config_error<T>(msg: impl Into<String>) -> Result<T> {
    Err(ExperimentError::Config(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SplittabilityScan,
    Figure2,
    SlackGadget,
    ChainValidate,
    AlgorithmCompare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SplittabilityScan => "splittability-scan",
            Command::Figure2 => "figure2",
            Command::SlackGadget => "slack-gadget",
            Command::ChainValidate => "chain-validate",
            Command::AlgorithmCompare => "algorithm-compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Complete,
    Gnm,
    Gnp,
    Grid,
    Cycle,
    Path,
    Gadget,
    File,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Complete => "complete",
            GraphKind::Gnm => "gnm",
            GraphKind::Gnp => "gnp",
            GraphKind::Grid => "grid",
            GraphKind::Cycle => "cycle",
            GraphKind::Path => "path",
            GraphKind::Gadget => "gadget",
            GraphKind::File => "file",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    All,
    UpDown,
    Recom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphKind,
    /// Vertex counts to sweep; gadget sizes `n` for the gadget.
    pub n_list: Vec<usize>,
    pub k: usize,
    pub p: Option<f64>,
    pub m: Option<usize>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub input: Option<PathBuf>,
    pub slack: usize,
    pub trials: u64,
    pub steps: u64,
    pub chains: u64,
    pub max_trees: u64,
    pub seed: u64,
    pub fixed_graph: bool,
    pub threads: Option<usize>,
    pub timing: bool,
    pub diameter: bool,
    /// Largest gadget size checked by exhaustive enumeration.
    pub exhaustive_max: usize,
    pub algorithm: Algorithm,
}

impl ExperimentConfig {
    /// Defaults for `command` with the given seed.
    pub fn defaults(command: Command, seed: u64) -> Self {
        let base = ExperimentConfig {
            graph: GraphKind::Complete,
            n_list: Vec::new(),
            k: 2,
            p: None,
            m: None,
            width: None,
            height: None,
            input: None,
            slack: 0,
            trials: 100_000,
            steps: 1_000,
            chains: 10_000,
            max_trees: 10_000_000,
            seed,
            fixed_graph: false,
            threads: None,
            timing: false,
            diameter: false,
            exhaustive_max: 14,
            algorithm: Algorithm::All,
        };
        match command {
            Command::SplittabilityScan => ExperimentConfig {
                n_list: vec![100, 200, 400, 800, 1600, 3200, 6400],
                ..base
            },
            Command::Figure2 => ExperimentConfig {
                n_list: vec![8, 16],
                ..base
            },
            Command::SlackGadget => ExperimentConfig {
                graph: GraphKind::Gadget,
                n_list: vec![8, 10, 12, 14],
                ..base
            },
            Command::ChainValidate => ExperimentConfig {
                graph: GraphKind::Cycle,
                n_list: vec![6],
                ..base
            },
            Command::AlgorithmCompare => ExperimentConfig {
                n_list: vec![4, 6],
                steps: 10_000,
                ..base
            },
        }
    }

    fn echo(&self) -> Vec<(&'static str, String)> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let algorithm = match self.algorithm {
            Algorithm::All => "all",
            Algorithm::UpDown => "up-down",
            Algorithm::Recom => "recom",
        };
        vec![
            ("graph", self.graph.name().into()),
            (
                "n_list",
                self.n_list
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("k", self.k.to_string()),
            ("p", opt(self.p.map(|p| p.to_string()))),
            ("m", opt(self.m.map(|m| m.to_string()))),
            ("width", opt(self.width.map(|w| w.to_string()))),
            ("height", opt(self.height.map(|h| h.to_string()))),
            (
                "input",
                opt(self.input.as_ref().map(|p| p.display().to_string())),
            ),
            ("slack", self.slack.to_string()),
            ("trials", self.trials.to_string()),
            ("steps", self.steps.to_string()),
            ("chains", self.chains.to_string()),
            ("max_trees", self.max_trees.to_string()),
            ("fixed_graph", self.fixed_graph.to_string()),
            ("algorithm", algorithm.into()),
        ]
    }

    fn validate_common(&self) -> Result<()> {
        if self.k == 0 {
            return config_error("--k must be at least 1");
        }
        if let Some(p) = self.p {
            if !(0.0..=1.0).contains(&p) {
                return config_error("--p must lie in [0, 1]");
            }
        }
        if self.threads == Some(0) {
            return config_error("--threads must be at least 1");
        }
        Ok(())
    }
}

/// Runs `command` with `cfg`, inside a dedicated thread pool when a thread
/// count is given.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate_common()?;
    let go = || match command {
        Command::SplittabilityScan => cmd_splittability_scan(cfg),
        Command::Figure2 => cmd_figure2(cfg),
        Command::SlackGadget => cmd_slack_gadget(cfg),
        Command::ChainValidate => cmd_chain_validate(cfg),
        Command::AlgorithmCompare => cmd_algorithm_compare(cfg),
    };
    let mut report = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ExperimentError::Config(e.to_string()))?
            .install(go)?,
        None => go()?,
    };
    report.config = cfg.echo();
    Ok(report)
}

fn read_input(cfg: &ExperimentConfig) -> Result<Graph> {
    let Some(path) = &cfg.input else {
        return config_error("--graph file needs --input");
    };
    Ok(read_edge_list(BufReader::new(File::open(path)?))?)
}

fn gnm_edges(cfg: &ExperimentConfig, n: usize) -> Result<usize> {
    match (cfg.m, cfg.p) {
        (Some(m), _) => Ok(m),
        (None, Some(p)) => Ok((p * (n * (n - 1) / 2) as f64).round() as usize),
        (None, None) => config_error("--graph gnm needs --m or --p"),
    }
}

/// A concrete graph with `n` vertices (gadget size `n` for the gadget).
fn build_graph(cfg: &ExperimentConfig, n: usize, rng: &mut RngStream) -> Result<Graph> {
    Ok(match cfg.graph {
        GraphKind::Complete => make_complete(n),
        GraphKind::Cycle if n >= 3 => make_cycle(n),
        GraphKind::Cycle => return config_error("cycles need at least 3 vertices"),
        GraphKind::Path => make_path(n),
        GraphKind::Grid => match (cfg.width, cfg.height) {
            (Some(w), Some(h)) => make_grid(w, h),
            _ => return config_error("--graph grid needs --width and --height"),
        },
        GraphKind::Gadget => gadget_graph(n)?,
        GraphKind::File => read_input(cfg)?,
        GraphKind::Gnm => gen_gnm(n, gnm_edges(cfg, n)?, true, DEFAULT_REJECTION_BUDGET, rng)?,
        GraphKind::Gnp => {
            let p = cfg
                .p
                .ok_or_else(|| ExperimentError::Config("--graph gnp needs --p".into()))?;
            gen_gnp(n, p, true, DEFAULT_REJECTION_BUDGET, rng)?
        }
    })
}

fn gadget_graph(n: usize) -> Result<Graph> {
    match treesplit_core::make_slack_gadget(n) {
        Ok(g) => Ok(g.graph),
        Err(treesplit_core::Error::InvalidGadget(_)) => {
            config_error(format!("gadget size {n} must be even and >= 8"))
        }
        Err(e) => Err(e.into()),
    }
}

/// The `n_list` entries, or the single vertex count of a size-free graph.
fn sizes(cfg: &ExperimentConfig) -> Result<Vec<usize>> {
    match cfg.graph {
        GraphKind::File | GraphKind::Grid => {
            let g = build_graph(cfg, 0, &mut RngStream::new(cfg.seed))?;
            Ok(vec![g.num_vertices()])
        }
        _ if cfg.n_list.is_empty() => config_error("--n-list is empty"),
        _ => Ok(cfg.n_list.clone()),
    }
}

fn check_divisible(n: usize, k: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(k) {
        return config_error(format!("N = {n} is not divisible by k = {k}"));
    }
    Ok(())
}

/// Sums `f(i)` over `0..trials` in parallel. The result does not depend on
/// scheduling because each trial uses its own derived stream.
fn par_sum<const W: usize, F>(trials: u64, f: F) -> Result<[u64; W]>
where
    F: Fn(u64) -> Result<[u64; W]> + Send + Sync,
{
    (0..trials).into_par_iter().map(f).try_reduce(
        || [0; W],
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            Ok(a)
        },
    )
}

fn seconds_since(start: Instant) -> Cell {
    Cell::Real(start.elapsed().as_secs_f64())
}

/// Probability that a uniform spanning tree is `k`-splittable, per graph
/// size, with a log-log slope fit over the sweep.
pub fn cmd_splittability_scan(cfg: &ExperimentConfig) -> Result<Report> {
    let mut columns = vec![
        "N",
        "k",
        "n",
        "trials",
        "successes",
        "point",
        "ci_low",
        "ci_high",
    ];
    if cfg.diameter {
        columns.push("mean_diameter");
    }
    if cfg.timing {
        columns.push("seconds");
    }
    let mut report = Report::new(Command::SplittabilityScan.name(), cfg.seed, columns);
    if cfg.trials == 0 {
        return config_error("--trials must be at least 1");
    }
    let sizes = sizes(cfg)?;
    for &n_total in &sizes {
        check_divisible(n_total, cfg.k)?;
    }
    let master = RngStream::new(cfg.seed);
    let mut points = Vec::new();
    for &n_total in &sizes {
        let start = Instant::now();
        let stream = master.derive(n_total as u64);
        let family = match cfg.graph {
            GraphKind::Complete => GraphFamily::Complete { vertices: n_total },
            GraphKind::Gnm if !cfg.fixed_graph => GraphFamily::Gnm {
                vertices: n_total,
                edges: gnm_edges(cfg, n_total)?,
            },
            GraphKind::Gnp if !cfg.fixed_graph => GraphFamily::Gnp {
                vertices: n_total,
                p: cfg
                    .p
                    .ok_or_else(|| ExperimentError::Config("--graph gnp needs --p".into()))?,
            },
            _ => GraphFamily::Fixed(build_graph(cfg, n_total, &mut stream.derive(u64::MAX))?),
        };
        let [successes, diameters] = par_sum(cfg.trials, |i| {
            let mut rng = stream.derive(i);
            let tree = family.draw_tree(&mut rng)?;
            let hit = find_balanced_split(&tree, cfg.k)?.is_some();
            let d = if cfg.diameter {
                tree.diameter() as u64
            } else {
                0
            };
            Ok([hit as u64, d])
        })?;
        let est = Estimate::new(successes, cfg.trials);
        let n = n_total / cfg.k;
        let mut row = vec![
            Cell::count(n_total),
            Cell::count(cfg.k),
            Cell::count(n),
            Cell::count(cfg.trials),
            Cell::count(successes),
            Cell::Real(est.point),
            Cell::Real(est.ci_low),
            Cell::Real(est.ci_high),
        ];
        if cfg.diameter {
            row.push(Cell::Real(diameters as f64 / cfg.trials as f64));
        }
        if cfg.timing {
            row.push(seconds_since(start));
        }
        report.push(row);
        points.push((n as f64, est.point));
    }
    if let Some(fit) = ScalingFit::log_log(points) {
        report.fits.push(("ln_point_vs_ln_n".into(), fit));
    }
    Ok(report)
}

/// Total spanning-forest weight of each `(i, N - i)` split size of `K_N`,
/// with enumeration cross-checks where feasible.
pub fn cmd_figure2(cfg: &ExperimentConfig) -> Result<Report> {
    const ORACLE_MAX: usize = 9;
    let mut report = Report::new(
        Command::Figure2.name(),
        cfg.seed,
        vec!["N", "i", "weight", "ln_weight", "argmin", "oracle_weight"],
    );
    if cfg.n_list.is_empty() {
        return config_error("--n-list is empty");
    }
    for &n in &cfg.n_list {
        if n < 2 || n % 2 != 0 {
            return config_error(format!("figure2 needs even N >= 2, got {n}"));
        }
        let hist = split_size_weight_histogram(n)?;
        let argmin = hist
            .iter()
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0))
            .map(|(i, _)| *i)
            .unwrap_or(1);
        let g = (n <= ORACLE_MAX).then(|| make_complete(n));
        for (i, w) in &hist {
            let oracle = match &g {
                Some(g) => {
                    let total: BigCount = enumerate_connected_partitions(g, &[*i, n - i])?
                        .iter()
                        .map(|p| partition_weight(g, p))
                        .sum::<treesplit_core::Result<BigCount>>()?;
                    Cell::count(total)
                }
                None => Cell::Empty,
            };
            report.push(vec![
                Cell::count(n),
                Cell::count(i),
                Cell::count(w),
                Cell::Real(w.ln()),
                Cell::Flag(*i == argmin),
                oracle,
            ]);
        }
        report.note(format!("argmin N={n}"), argmin);
    }
    Ok(report)
}

/// Exact weights on the slack gadget: every balanced partition against the
/// slack-1 witness, plus a check that slack-free recombination cannot move.
pub fn cmd_slack_gadget(cfg: &ExperimentConfig) -> Result<Report> {
    let mut report = Report::new(
        Command::SlackGadget.name(),
        cfg.seed,
        vec![
            "n",
            "vertices",
            "balanced_partitions",
            "max_balanced_weight",
            "total_balanced_weight",
            "witness_weight",
            "witness_slack1",
            "log_ratio_max",
            "log_ratio_total",
            "frozen",
            "verification",
        ],
    );
    if cfg.n_list.is_empty() {
        return config_error("--n-list is empty");
    }
    let mut points = Vec::new();
    for &n in &cfg.n_list {
        let (gadget, parts) = match gadget_balanced_partitions(n) {
            Err(treesplit_core::Error::InvalidGadget(_)) => {
                return config_error(format!("gadget size {n} must be even and >= 8"))
            }
            other => other?,
        };
        let verification = if n <= cfg.exhaustive_max {
            verify_gadget_exhaustively(&gadget)?;
            "exhaustive"
        } else {
            "structural"
        };
        let g = &gadget.graph;
        let weights: Vec<BigCount> = parts
            .iter()
            .map(|p| partition_weight(g, p))
            .collect::<treesplit_core::Result<_>>()?;
        let max = weights
            .iter()
            .max_by(|a, b| a.0.cmp(&b.0))
            .cloned()
            .unwrap_or_else(BigCount::zero);
        let total: BigCount = weights.iter().sum();
        let witness = gadget.witness_partition();
        let witness_weight = partition_weight(g, &witness)?;
        let frozen = parts.iter().try_fold(true, |acc, p| {
            Ok::<_, ExperimentError>(acc && recom_alternatives(g, p)?.is_empty())
        })?;
        let log_ratio_max = witness_weight.ln() - max.ln();
        report.push(vec![
            Cell::count(n),
            Cell::count(g.num_vertices()),
            Cell::count(parts.len()),
            Cell::count(&max),
            Cell::count(&total),
            Cell::count(&witness_weight),
            Cell::Flag(is_slack_balanced(&witness, n, 1)),
            Cell::Real(log_ratio_max),
            Cell::Real(witness_weight.ln() - total.ln()),
            Cell::Flag(frozen),
            Cell::text(verification),
        ]);
        points.push((n as f64, log_ratio_max));
    }
    if let Some(fit) = ScalingFit::fit(points) {
        report.fits.push(("log_ratio_max_vs_n".into(), fit));
    }
    Ok(report)
}

/// Checkpoints `0, 1, 2, 5, 10, 20, 50, ...` up to and including `steps`.
fn checkpoints(steps: u64) -> Vec<u64> {
    let mut out = vec![0];
    let mut scale = 1;
    'outer: loop {
        for mult in [1, 2, 5] {
            let s = mult * scale;
            if s >= steps {
                break 'outer;
            }
            out.push(s);
        }
        scale *= 10;
    }
    if steps > 0 {
        out.push(steps);
    }
    out
}

/// For each checkpoint, how many of the chains were in each state.
fn chain_census<K, F>(chains: u64, steps: u64, run_chain: F) -> Result<Vec<BTreeMap<K, u64>>>
where
    K: Ord + Send,
    F: Fn(u64, &[u64]) -> Result<Vec<K>> + Send + Sync,
{
    let marks = checkpoints(steps);
    let per_chain: Vec<Vec<K>> = (0..chains)
        .into_par_iter()
        .map(|c| run_chain(c, &marks))
        .collect::<Result<_>>()?;
    let mut census: Vec<BTreeMap<K, u64>> = marks.iter().map(|_| BTreeMap::new()).collect();
    for states in per_chain {
        for (slot, key) in census.iter_mut().zip(states) {
            *slot.entry(key).or_insert(0) += 1;
        }
    }
    Ok(census)
}

/// All block-size multisets of `k` parts within `[n - s, n + s]` summing
/// to `total`, as non-increasing lists.
fn slack_size_lists(total: usize, k: usize, n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(
        left: usize,
        parts: usize,
        lo: usize,
        hi: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for size in (lo..=hi.min(left)).rev() {
            cur.push(size);
            rec(left - size, parts - 1, lo, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        total,
        k,
        n.saturating_sub(s).max(1),
        n + s,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Empirical distance to stationarity of the up-down walk and of
/// recombination on graphs small enough to enumerate.
pub fn cmd_chain_validate(cfg: &ExperimentConfig) -> Result<Report> {
    let mut report = Report::new(
        Command::ChainValidate.name(),
        cfg.seed,
        vec!["algorithm", "N", "k", "step", "chains", "states", "tv"],
    );
    let sizes = sizes(cfg)?;
    let [size] = sizes[..] else {
        return config_error("chain-validate takes a single graph size");
    };
    if cfg.chains == 0 {
        return config_error("--chains must be at least 1");
    }
    let master = RngStream::new(cfg.seed);
    let g = build_graph(cfg, size, &mut master.derive(u64::MAX))?;
    let n_total = g.num_vertices();
    check_divisible(n_total, cfg.k)?;
    let k = cfg.k;
    let n = n_total / k;
    let marks = checkpoints(cfg.steps);
    let push_rows = |report: &mut Report, name: &str, tvs: Vec<f64>, states: usize| {
        for (step, tv) in marks.iter().zip(&tvs) {
            report.push(vec![
                Cell::text(name),
                Cell::count(n_total),
                Cell::count(k),
                Cell::count(step),
                Cell::count(cfg.chains),
                Cell::count(states),
                Cell::Real(*tv),
            ]);
        }
        if let Some(last) = tvs.last() {
            report.note(format!("final tv {name}"), last);
        }
    };
    if matches!(cfg.algorithm, Algorithm::All | Algorithm::UpDown) {
        if k < 2 {
            return config_error("the up-down walk needs k >= 2");
        }
        let forests = enumerate_forests(&g, k)?;
        let target: BTreeMap<Vec<usize>, f64> = forests
            .iter()
            .map(|f| (f.clone(), 1.0 / forests.len() as f64))
            .collect();
        let stream = master.derive(0);
        let census = chain_census(cfg.chains, cfg.steps, |c, marks| {
            let mut rng = stream.derive(c);
            let mut f = initial_forest(&g, k)?;
            let mut out = Vec::with_capacity(marks.len());
            let mut done = 0;
            for &m in marks {
                while done < m {
                    up_down_step(&mut f, &mut rng, UpDownVariant::Symmetric)?;
                    done += 1;
                }
                out.push(f.edges());
            }
            Ok(out)
        })?;
        let tvs = census.iter().map(|c| total_variation(c, &target)).collect();
        push_rows(&mut report, "up-down", tvs, forests.len());
    }
    if matches!(cfg.algorithm, Algorithm::All | Algorithm::Recom) {
        if k < 2 {
            return config_error("recombination needs k >= 2");
        }
        let mut states = Vec::new();
        for sizes in slack_size_lists(n_total, k, n, cfg.slack) {
            states.extend(enumerate_connected_partitions(&g, &sizes)?);
        }
        let start = if cfg.graph == GraphKind::Gadget {
            gadget_balanced_partitions(size)?.1.remove(0)
        } else {
            states
                .iter()
                .find(|p| p.blocks().iter().all(|b| b.len() == n))
                .cloned()
                .ok_or_else(|| {
                    ExperimentError::Config("graph has no balanced connected partition".into())
                })?
        };
        let weights: Vec<f64> = states
            .iter()
            .map(|p| partition_weight(&g, p).map(|w| w.to_f64()))
            .collect::<treesplit_core::Result<_>>()?;
        let total: f64 = weights.iter().sum();
        let target: BTreeMap<Partition, f64> = states
            .iter()
            .cloned()
            .zip(weights.iter().map(|w| w / total))
            .collect();
        let stream = master.derive(1);
        let census = chain_census(cfg.chains, cfg.steps, |c, marks| {
            let mut rng = stream.derive(c);
            let mut p = start.clone();
            let mut out = Vec::with_capacity(marks.len());
            let mut done = 0;
            for &m in marks {
                while done < m {
                    if let RecomMove::Accepted(q) = recom_move(&g, &p, n, cfg.slack, &mut rng)? {
                        p = q;
                    }
                    done += 1;
                }
                out.push(p.clone());
            }
            Ok(out)
        })?;
        let tvs = census.iter().map(|c| total_variation(c, &target)).collect();
        push_rows(&mut report, "recom", tvs, states.len());
    }
    Ok(report)
}

/// A balanced partition to start recombination from.
fn recom_start(
    g: &Graph,
    cfg: &ExperimentConfig,
    k: usize,
    rng: &mut RngStream,
) -> Result<Partition> {
    let n_total = g.num_vertices();
    if cfg.graph == GraphKind::Complete {
        let labels: Vec<usize> = (0..n_total).map(|v| v / (n_total / k)).collect();
        return Ok(Partition::from_labels(&labels));
    }
    treesplit_core::sample_balanced_partition(g, k, rng, cfg.max_trees as usize)?.ok_or_else(|| {
        ExperimentError::Budget(format!(
            "no balanced partition within {} trees",
            cfg.max_trees
        ))
    })
}

/// Rejection and acceptance counts of the three samplers.
pub fn cmd_algorithm_compare(cfg: &ExperimentConfig) -> Result<Report> {
    let mut columns = vec![
        "algorithm",
        "N",
        "k",
        "attempts",
        "stage1_rejections",
        "stage2_rejections",
        "accepted",
        "stage2_rate",
        "stage2_ci_low",
        "stage2_ci_high",
        "expected_stage2_rate",
        "overall_rate",
    ];
    if cfg.timing {
        columns.extend(["seconds", "accepted_per_second"]);
    }
    let mut report = Report::new(Command::AlgorithmCompare.name(), cfg.seed, columns);
    let master = RngStream::new(cfg.seed);
    let k = cfg.k;
    for n_total in sizes(cfg)? {
        check_divisible(n_total, k)?;
        let stream = master.derive(n_total as u64);
        let g = build_graph(cfg, n_total, &mut stream.derive(u64::MAX))?;
        if !g.is_connected() {
            return config_error("graph is disconnected");
        }
        let n = n_total / k;
        let expected = if cfg.graph == GraphKind::Complete {
            let t = (k as f64).powi(k as i32 - 2) * (n as f64).powi(2 * k as i32 - 2);
            Cell::Real(if k == 1 { 1.0 } else { 1.0 / t })
        } else if g.num_edges() + 1 == n_total {
            Cell::Real(1.0)
        } else {
            Cell::Empty
        };
        let emit =
            |report: &mut Report, name: &str, counts: [u64; 4], expected: Cell, start: Instant| {
                let [attempts, s1, s2, acc] = counts;
                let mut row = vec![
                    Cell::text(name),
                    Cell::count(n_total),
                    Cell::count(k),
                    Cell::count(attempts),
                    Cell::count(s1),
                    Cell::count(s2),
                    Cell::count(acc),
                ];
                if acc + s2 > 0 && name != "up-down" {
                    let e = Estimate::new(acc, acc + s2);
                    row.extend([
                        Cell::Real(e.point),
                        Cell::Real(e.ci_low),
                        Cell::Real(e.ci_high),
                    ]);
                } else {
                    row.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
                }
                row.push(expected);
                row.push(Cell::Real(if attempts > 0 {
                    acc as f64 / attempts as f64
                } else {
                    0.0
                }));
                if cfg.timing {
                    let secs = start.elapsed().as_secs_f64();
                    row.extend([Cell::Real(secs), Cell::Real(acc as f64 / secs.max(1e-9))]);
                }
                report.push(row);
            };

        let start = Instant::now();
        let splits = stream.derive(0);
        let [s1, s2, acc] = par_sum(cfg.trials, |i| {
            let out = split_tree_once(&g, k, &mut splits.derive(i))?;
            Ok(match out.stage {
                RejectionStage::NotSplittable => [1, 0, 0],
                RejectionStage::TreeWeightRejected => [0, 1, 0],
                RejectionStage::Accepted => [0, 0, 1],
            })
        })?;
        emit(
            &mut report,
            "tree-splitting",
            [cfg.trials, s1, s2, acc],
            expected,
            start,
        );

        if k >= 2 && cfg.steps > 0 {
            let start = Instant::now();
            let mut rng = stream.derive(1);
            let mut f = initial_forest(&g, k)?;
            let mut hits = 0;
            for _ in 0..cfg.steps {
                up_down_step(&mut f, &mut rng, UpDownVariant::Symmetric)?;
                hits += f.is_balanced(n) as u64;
            }
            emit(
                &mut report,
                "up-down",
                [cfg.steps, cfg.steps - hits, 0, hits],
                Cell::Empty,
                start,
            );

            let start = Instant::now();
            let mut rng = stream.derive(2);
            let mut p = recom_start(&g, cfg, k, &mut rng)?;
            let (mut s1, mut s2, mut acc) = (0, 0, 0);
            for _ in 0..cfg.steps {
                match recom_move(&g, &p, n, 0, &mut rng)? {
                    RecomMove::NonAdjacent | RecomMove::Unsplittable => s1 += 1,
                    RecomMove::Rejected => s2 += 1,
                    RecomMove::Accepted(q) => {
                        p = q;
                        acc += 1;
                    }
                }
            }
            emit(
                &mut report,
                "recom",
                [cfg.steps, s1, s2, acc],
                Cell::Empty,
                start,
            );
        }
    }
    Ok(report)
}

/// Weight-proportional probabilities of the balanced partitions of `g`.
pub fn balanced_weight_distribution(g: &Graph, k: usize) -> Result<BTreeMap<Partition, f64>> {
    let parts = enumerate_balanced_partitions(g, k)?;
    let weights: Vec<f64> = parts
        .iter()
        .map(|p| partition_weight(g, p).map(|w| w.to_f64()))
        .collect::<treesplit_core::Result<_>>()?;
    let total: f64 = weights.iter().sum();
    Ok(parts
        .into_iter()
        .zip(weights.into_iter().map(|w| w / total))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoint_spacing() {
        assert_eq!(
            checkpoints(1000),
            vec![0, 1, 2, 5, 10, 20, 50, 100, 200, 500, 1000]
        );
        assert_eq!(checkpoints(7), vec![0, 1, 2, 5, 7]);
        assert_eq!(checkpoints(0), vec![0]);
    }

    #[test]
    fn slack_size_lists_cover_window() {
        assert_eq!(slack_size_lists(8, 2, 4, 1), vec![vec![5, 3], vec![4, 4]]);
        assert_eq!(slack_size_lists(9, 3, 3, 0), vec![vec![3, 3, 3]]);
    }

    #[test]
    fn figure2_small() {
        let cfg = ExperimentConfig {
            n_list: vec![4],
            ..ExperimentConfig::defaults(Command::Figure2, 1)
        };
        let r = run(Command::Figure2, &cfg).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.get(0, "weight"), &Cell::count(12));
        assert_eq!(r.get(1, "weight"), &Cell::count(3));
        assert_eq!(r.get(1, "oracle_weight"), &Cell::count(3));
        assert_eq!(r.get(1, "argmin"), &Cell::Flag(true));
    }

    #[test]
    fn odd_figure2_size_is_config_error() {
        let cfg = ExperimentConfig {
            n_list: vec![7],
            ..ExperimentConfig::defaults(Command::Figure2, 1)
        };
        assert_eq!(run(Command::Figure2, &cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn path_graph_always_accepts_stage_two() {
        let cfg = ExperimentConfig {
            graph: GraphKind::Path,
            n_list: vec![6],
            k: 3,
            trials: 200,
            steps: 100,
            ..ExperimentConfig::defaults(Command::AlgorithmCompare, 3)
        };
        let r = run(Command::AlgorithmCompare, &cfg).unwrap();
        assert_eq!(r.get(0, "accepted"), &Cell::count(200));
        assert_eq!(r.get(0, "stage2_rate"), &Cell::Real(1.0));
    }
}
