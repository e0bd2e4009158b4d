//! Command implementations behind the `acqsched` binary.

pub mod report;

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use acqsched_core::runner::files::{read_aggregate, read_trajectories, write_aggregate, write_trajectories};
use acqsched_core::runner::log_regret;
use acqsched_core::{aggregate, run_grid, ExperimentConfig, FunctionId, Schedule, TrialTrajectory};

#[derive(Debug, Parser)]
#[command(name = "acqsched", version, about = "Bayesian optimization with acquisition-function schedules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a grid of trials and write their trajectories.
    Run(RunArgs),
    /// Normalize and summarize the trajectories in a directory.
    Aggregate {
        /// Directory holding `*.jsonl` trajectory files.
        input: PathBuf,
        /// Directory for `curves.csv`, `finals.csv` and `bounds.csv`.
        output: PathBuf,
    },
    /// Emit per-function plot data from an aggregate.
    Report {
        /// Directory written by `aggregate`.
        aggregate: PathBuf,
        /// Directory for the plot-data files.
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML experiment configuration; replaces the grid flags.
    #[arg(long, conflicts_with_all = ["dim", "doe", "evals", "functions", "schedules", "seeds", "gp_restarts"])]
    pub config: Option<PathBuf>,
    /// Problem dimension.
    #[arg(long, required_unless_present = "config")]
    pub dim: Option<usize>,
    /// Initial design size [default: 3 * dim].
    #[arg(long)]
    pub doe: Option<usize>,
    /// Surrogate-based evaluations [default: 20 * dim].
    #[arg(long)]
    pub evals: Option<usize>,
    /// Comma-separated function ids, e.g. `f1,f16`.
    #[arg(long, required_unless_present = "config")]
    pub functions: Option<String>,
    /// Comma-separated schedules: ei|pi|random|round_robin|ee25|ee50|ee75.
    #[arg(long, required_unless_present = "config")]
    pub schedules: Option<String>,
    /// Seeds as a half-open range `a..b`, or a comma-separated list.
    #[arg(long, required_unless_present = "config")]
    pub seeds: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads; the output does not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Hyperparameter restarts per GP fit.
    #[arg(long)]
    pub gp_restarts: Option<usize>,
}

fn parse_list<T, E>(s: &str) -> std::result::Result<Vec<T>, E>
where
    T: std::str::FromStr<Err = E>,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// `a..b` (half-open), a single seed, or a comma-separated list.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = s.split_once("..") {
        let range: Range<u64> = a.trim().parse().context("bad seed range start")?
            ..b.trim().parse().context("bad seed range end")?;
        if range.is_empty() {
            bail!("seed range `{s}` is empty");
        }
        return Ok(range.collect());
    }
    let seeds: Vec<u64> = parse_list(s).with_context(|| format!("bad seed list `{s}`"))?;
    if seeds.is_empty() {
        bail!("no seeds given");
    }
    Ok(seeds)
}

impl RunArgs {
    pub fn to_config(&self) -> Result<ExperimentConfig> {
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            let config: ExperimentConfig =
                toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
            config.validate()?;
            return Ok(config);
        }
        let dim = self.dim.context("--dim is required")?;
        let mut config = ExperimentConfig::protocol(dim);
        if let Some(doe) = self.doe {
            config.doe_size = doe;
        }
        if let Some(evals) = self.evals {
            config.bo_evals = evals;
        }
        if let Some(r) = self.gp_restarts {
            config.gp_restarts = r;
        }
        config.functions = parse_list::<FunctionId, _>(self.functions.as_deref().unwrap_or_default())?;
        config.schedules = parse_list::<Schedule, _>(self.schedules.as_deref().unwrap_or_default())?;
        config.seeds = parse_seeds(self.seeds.as_deref().unwrap_or_default())?;
        config.validate()?;
        Ok(config)
    }
}

/// Outcome of `run`.
#[derive(Debug)]
pub struct RunSummary {
    pub trajectories: Vec<TrialTrajectory>,
    pub path: PathBuf,
}

impl RunSummary {
    pub fn failed(&self) -> usize {
        self.trajectories.iter().filter(|t| !t.is_complete()).count()
    }
}

pub fn summary_line(t: &TrialTrajectory) -> String {
    let head = format!("{} {} seed={}", t.function, t.schedule, t.seed);
    match &t.failure {
        Some(f) => format!("{head} FAILED at step {}: {}", f.step, f.message),
        None => {
            let lr = log_regret(t, acqsched_core::runner::REGRET_CLAMP);
            format!(
                "{head} evals={}+{} final={:.6e} log10_regret={:.3}",
                t.doe_size,
                t.bo_evals,
                t.final_incumbent,
                lr.last().copied().unwrap_or(f64::NAN)
            )
        }
    }
}

pub fn cmd_run(args: &RunArgs) -> Result<RunSummary> {
    let config = args.to_config()?;
    let trajectories = run_grid(&config, args.workers)?;
    let path = write_trajectories(&args.out, &trajectories)?;
    Ok(RunSummary { trajectories, path })
}

pub fn cmd_aggregate(input: &Path, output: &Path) -> Result<acqsched_core::AggregateReport> {
    let trajectories = read_trajectories(input)?;
    let report = aggregate(&trajectories)?;
    write_aggregate(output, &report)?;
    Ok(report)
}

pub fn cmd_report(aggregate_dir: &Path, output: &Path) -> Result<Vec<PathBuf>> {
    let agg = read_aggregate(aggregate_dir)?;
    report::write_plot_data(&agg, output)
}
