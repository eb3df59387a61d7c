//! Dataset CSV files, run manifests and optimization traces.
//!
//! Datasets are written as `f0,…,f{d−1},target` with every float in its
//! shortest exactly-parsing decimal form, so `read(write(ds)) == ds`.
//! All writers go through a temp file in the destination directory and an
//! atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data_model::{ComplexityProfile, Dataset, EpcoConfig, Target, TaskKind};
use crate::error::{Error, Result};
use crate::evolution::{EvolutionOutput, EvolutionReport, RunSeeds};
use crate::matrix::Matrix;

/// Writes `bytes` to `path` via a sibling temp file and rename.
pub fn write_atomic(path: &Path, bytes: &[u8], overwrite: bool) -> Result<()> {
    if !overwrite && path.exists() {
        return Err(Error::WouldOverwrite(path.to_path_buf()));
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    // Display already yields the shortest round-tripping digits; the
    // exponent form keeps extreme magnitudes compact.
    let plain = v.to_string();
    let sci = format!("{v:e}");
    if sci.len() < plain.len() {
        sci
    } else {
        plain
    }
}

pub fn dataset_to_csv(dataset: &Dataset) -> Result<Vec<u8>> {
    let d = dataset.n_features();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..d).map(|j| format!("f{j}")).collect();
    header.push("target".into());
    w.write_record(&header)?;
    let mut record = Vec::with_capacity(d + 1);
    for (i, row) in dataset.features().row_iter().enumerate() {
        record.clear();
        record.extend(row.iter().map(|&v| format_float(v)));
        record.push(match dataset.target() {
            Target::Labels(l) => l[i].to_string(),
            Target::Values(v) => format_float(v[i]),
        });
        w.write_record(&record)?;
    }
    w.into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

pub fn write_dataset(path: &Path, dataset: &Dataset, overwrite: bool) -> Result<()> {
    write_atomic(path, &dataset_to_csv(dataset)?, overwrite)
}

/// Parses CSV text. `origin` only labels error messages.
pub fn dataset_from_csv(text: &str, task: TaskKind, origin: &Path) -> Result<Dataset> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let width = header.len();
    if width < 2 || header.get(width - 1) != Some("target") {
        return Err(parse_err(1, "header must be f0,...,f{d-1},target".into()));
    }
    let d = width - 1;
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (row_no, record) in rdr.records().enumerate() {
        let line = row_no as u64 + 2;
        let record = record.map_err(|e| {
            let line = e.position().map_or(line, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        if record.len() != width {
            return Err(parse_err(
                line,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        for (j, field) in record.iter().take(d).enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(line, format!("f{j}: '{field}' is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("f{j}: non-finite value")));
            }
            features.push(v);
        }
        let raw = &record[d];
        match task {
            TaskKind::Classification => labels.push(raw.parse::<i64>().map_err(|_| {
                parse_err(line, format!("target '{raw}' is not an integer label"))
            })?),
            TaskKind::Regression => values.push(
                raw.parse::<f64>()
                    .map_err(|_| parse_err(line, format!("target '{raw}' is not a number")))?,
            ),
        }
    }
    let n = features.len() / d.max(1);
    let x = Matrix::new(n, d, features);
    match task {
        TaskKind::Classification => Dataset::classification(x, &labels),
        TaskKind::Regression => Dataset::regression(x, values),
    }
}

pub fn read_dataset(path: &Path, task: TaskKind) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    dataset_from_csv(&text, task, path)
}

pub const TRACE_HEADER: &str = "iteration,leader,criterion,fitness";

/// One row per (iteration, leader slot, criterion).
pub fn trace_to_csv(report: &EvolutionReport) -> String {
    let criteria = report.criteria();
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for it in &report.trace {
        for (leader, fitness) in it.leaders.iter().enumerate() {
            for (id, f) in criteria.iter().zip(fitness) {
                out.push_str(&format!("{},{leader},{id},{}\n", it.iteration, format_float(*f)));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeaderEntry {
    pub position: usize,
    pub role: String,
    pub file: String,
    /// Per-criterion fitness; `null` where infinite.
    pub fitness: Vec<Option<f64>>,
    pub fitness_sum: Option<f64>,
    pub achieved: Option<ComplexityProfile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub task: TaskKind,
    pub level: String,
    pub config: EpcoConfig,
    pub seeds: RunSeeds,
    pub targets: ComplexityProfile,
    pub source: Option<String>,
    pub leaders: Vec<LeaderEntry>,
    pub default_output: String,
    pub trace_file: String,
    pub evaluations: usize,
    /// Only present when explicitly requested; it breaks byte-identity
    /// between otherwise identical runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

pub fn leader_file_name(position: usize) -> String {
    format!("leader_{position}.csv")
}

pub const MANIFEST_FILE: &str = "manifest.json";
pub const TRACE_FILE: &str = "trace.csv";

impl RunManifest {
    pub fn from_report(report: &EvolutionReport, source: Option<String>, record_time: bool) -> Self {
        let finite = |v: f64| v.is_finite().then_some(v);
        let leaders: Vec<LeaderEntry> = report
            .leaders
            .iter()
            .map(|l| LeaderEntry {
                position: l.position,
                role: l.role(),
                file: leader_file_name(l.position),
                fitness: l.fitness.iter().map(|&f| finite(f)).collect(),
                fitness_sum: finite(l.fitness_sum),
                achieved: l.achieved.clone(),
            })
            .collect();
        Self {
            task: report.task,
            level: report.targets.level_name().to_string(),
            config: report.config.clone(),
            seeds: report.seeds,
            targets: report.targets.profile().clone(),
            source,
            default_output: leaders.last().expect("leaders").file.clone(),
            leaders,
            trace_file: TRACE_FILE.into(),
            evaluations: report.evaluations,
            wall_time_seconds: record_time.then_some(report.wall_time.as_secs_f64()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Files produced by [`write_run`].
#[derive(Clone, Debug)]
pub struct RunFiles {
    pub datasets: Vec<PathBuf>,
    pub manifest: PathBuf,
    pub trace: PathBuf,
}

/// Writes `leader_*.csv`, `trace.csv` and `manifest.json` into `dir`.
///
/// Everything is serialized in memory first; nothing touches the disk
/// unless every file can be produced, and the manifest is renamed into
/// place last.
pub fn write_run(
    dir: &Path,
    output: &EvolutionOutput,
    source: Option<String>,
    record_time: bool,
    overwrite: bool,
) -> Result<RunFiles> {
    fs::create_dir_all(dir)?;
    let mut planned: Vec<(PathBuf, Vec<u8>)> = output
        .datasets
        .iter()
        .enumerate()
        .map(|(k, ds)| Ok((dir.join(leader_file_name(k)), dataset_to_csv(ds)?)))
        .collect::<Result<_>>()?;
    planned.push((dir.join(TRACE_FILE), trace_to_csv(&output.report).into_bytes()));
    let manifest = RunManifest::from_report(&output.report, source, record_time);
    planned.push((dir.join(MANIFEST_FILE), manifest.to_json()?.into_bytes()));
    if !overwrite {
        if let Some((p, _)) = planned.iter().find(|(p, _)| p.exists()) {
            return Err(Error::WouldOverwrite(p.clone()));
        }
    }
    for (path, bytes) in &planned {
        write_atomic(path, bytes, true)?;
    }
    let count = output.datasets.len();
    Ok(RunFiles {
        datasets: planned[..count].iter().map(|(p, _)| p.clone()).collect(),
        trace: planned[count].0.clone(),
        manifest: planned[count + 1].0.clone(),
    })
}
