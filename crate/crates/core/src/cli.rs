//! The `epco` command line: `generate`, `profile`, `transform`, `evaluate`.
//!
//! Parsing and execution live here so the binary stays a thin wrapper and
//! tests can drive commands in-process.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::data_model::{EpcoConfig, Level, TargetProfile, TaskKind};
use crate::error::{Error, Result};
use crate::evaluation::{self, CvScheme, Learner};
use crate::evolution::Epco;
use crate::generators::{self, ClassificationGenSpec, RegressionGenSpec};
use crate::io;
use crate::measures;

/// Environment variable capping fitness-evaluation threads.
pub const THREADS_ENV: &str = "EPCO_THREADS";

#[derive(Debug, Parser)]
#[command(name = "epco", version, about = "Transform datasets toward a requested complexity profile")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic source dataset and print its complexity profile.
    Generate(GenerateArgs),
    /// Print the complexity profile of a dataset CSV.
    Profile(ProfileArgs),
    /// Evolve projections toward a target profile and write the leaders.
    Transform(TransformArgs),
    /// 5x2 cross-validation of the baseline learners.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_task)]
    pub task: TaskKind,
    #[arg(long, default_value_t = 350)]
    pub samples: usize,
    #[arg(long, default_value_t = 20)]
    pub features: usize,
    /// Defaults to 2 for classification and 10 for regression.
    #[arg(long)]
    pub informative: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub redundant: usize,
    #[arg(long, default_value_t = 1.0)]
    pub class_sep: f64,
    #[arg(long, default_value_t = 0.01)]
    pub label_noise: f64,
    #[arg(long, default_value_t = 1.0)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, value_parser = parse_task)]
    pub task: TaskKind,
    /// Seeds the stochastic N4 measure.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_parser = parse_task)]
    pub task: TaskKind,
    /// easy, m-easy, medium, m-complex or complex.
    #[arg(long, value_parser = parse_level, conflicts_with = "targets", required_unless_present = "targets")]
    pub level: Option<Level>,
    /// JSON object mapping every measure id of the task to its target.
    #[arg(long)]
    pub targets: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    #[arg(long, default_value_t = 0.25)]
    pub cx: f64,
    #[arg(long = "mut", default_value_t = 0.10)]
    pub mutation: f64,
    #[arg(long, default_value_t = 0.007)]
    pub decay: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[arg(long)]
    pub force: bool,
    /// Add wall time to the manifest (makes it run-dependent).
    #[arg(long)]
    pub record_wall_time: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_parser = parse_task)]
    pub task: TaskKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated learner ids; all learners of the task by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_learner)]
    pub learners: Vec<Learner>,
    pub input: PathBuf,
}

fn parse_task(s: &str) -> std::result::Result<TaskKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_level(s: &str) -> std::result::Result<Level, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_learner(s: &str) -> std::result::Result<Learner, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `EPCO_THREADS` as a positive count; unset or invalid means "default".
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Profile(a) => profile(a, out),
        Command::Transform(a) => transform(a, out),
        Command::Evaluate(a) => evaluate(a, out),
    }
}

/// Parses `args` (including the program name) and executes.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    execute(cli, out)
}

fn print_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<()> {
    if !a.force && a.out.exists() {
        return Err(Error::WouldOverwrite(a.out));
    }
    let dataset = match a.task {
        TaskKind::Classification => generators::gen_classification(&ClassificationGenSpec {
            samples: a.samples,
            features: a.features,
            informative: a.informative.unwrap_or(2),
            redundant: a.redundant,
            class_sep: a.class_sep,
            label_noise: a.label_noise,
            seed: a.seed,
        })?,
        TaskKind::Regression => generators::gen_regression(&RegressionGenSpec {
            samples: a.samples,
            features: a.features,
            informative: a.informative.unwrap_or(10),
            noise_sigma: a.noise_sigma,
            seed: a.seed,
        })?,
    };
    let profile = measures::profile(&dataset, a.seed)?;
    io::write_dataset(&a.out, &dataset, a.force)?;
    print_json(out, &profile)
}

fn profile(a: ProfileArgs, out: &mut dyn Write) -> Result<()> {
    let dataset = io::read_dataset(&a.input, a.task)?;
    print_json(out, &measures::profile(&dataset, a.seed)?)
}

fn transform(a: TransformArgs, out: &mut dyn Write) -> Result<()> {
    let targets = match (&a.level, &a.targets) {
        (Some(level), _) => TargetProfile::preset(a.task, *level),
        (None, Some(path)) => TargetProfile::from_json(a.task, &std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::Config("pass --level or --targets".into())),
    };
    let config = EpcoConfig {
        population: a.pop,
        iterations: a.iters,
        crossover_ratio: a.cx,
        mutation_ratio: a.mutation,
        decay: a.decay,
        seed: a.seed,
        ..EpcoConfig::default()
    };
    config.validate(a.task)?;
    let source = io::read_dataset(&a.input, a.task)?;
    let mut epco = Epco::new(config);
    if let Some(n) = threads_from_env() {
        epco = epco.with_threads(n);
    }
    let output = epco.run(&source, &targets)?;
    let source_name = a
        .input
        .file_name()
        .map(|s| s.to_string_lossy().into_owned());
    let files = io::write_run(&a.output, &output, source_name, a.record_wall_time, a.force)?;

    let best = output.report.sum_leader();
    let summary = serde_json::json!({
        "manifest": files.manifest,
        "default_output": files.datasets.last(),
        "fitness_sum": best.fitness_sum.is_finite().then_some(best.fitness_sum),
        "achieved": best.achieved,
    });
    print_json(out, &summary)
}

fn evaluate(a: EvaluateArgs, out: &mut dyn Write) -> Result<()> {
    let learners: Vec<Learner> = if a.learners.is_empty() {
        Learner::for_task(a.task).to_vec()
    } else {
        a.learners
    };
    if let Some(l) = learners.iter().find(|l| l.task() != a.task) {
        return Err(Error::Config(format!(
            "learner {l} does not apply to {} data",
            a.task
        )));
    }
    let dataset = io::read_dataset(&a.input, a.task)?;
    let scheme = CvScheme::five_by_two(a.seed);
    let results = learners
        .into_iter()
        .map(|l| evaluation::cross_validate(&dataset, l, &scheme))
        .collect::<Result<Vec<_>>>()?;
    print_json(out, &results)
}
