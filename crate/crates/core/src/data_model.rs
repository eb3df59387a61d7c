//! Core value types: datasets, measure identifiers, profiles, targets and
//! the optimizer configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Classification,
    Regression,
}

impl TaskKind {
    /// The optimized measure set, in canonical order.
    pub fn measures(self) -> &'static [MeasureId] {
        match self {
            TaskKind::Classification => &MeasureId::CLASSIFICATION,
            TaskKind::Regression => &MeasureId::REGRESSION,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Classification => "classification",
            TaskKind::Regression => "regression",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classification" | "clf" => Ok(TaskKind::Classification),
            "regression" | "reg" => Ok(TaskKind::Regression),
            other => Err(Error::Config(format!("unknown task '{other}'"))),
        }
    }
}

/// Complexity measure identifiers. Higher values mean a harder problem for
/// every measure except regression `C1`/`C2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MeasureId {
    F1,
    F3,
    F4,
    L2,
    N1,
    N3,
    N4,
    T1,
    ClsCoef,
    T4,
    C1,
    C2,
    S1,
    S2,
}

impl MeasureId {
    pub const CLASSIFICATION: [MeasureId; 10] = [
        MeasureId::F1,
        MeasureId::F3,
        MeasureId::F4,
        MeasureId::L2,
        MeasureId::N1,
        MeasureId::N3,
        MeasureId::N4,
        MeasureId::T1,
        MeasureId::ClsCoef,
        MeasureId::T4,
    ];

    pub const REGRESSION: [MeasureId; 4] =
        [MeasureId::C1, MeasureId::C2, MeasureId::S1, MeasureId::S2];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::F1 => "F1",
            MeasureId::F3 => "F3",
            MeasureId::F4 => "F4",
            MeasureId::L2 => "L2",
            MeasureId::N1 => "N1",
            MeasureId::N3 => "N3",
            MeasureId::N4 => "N4",
            MeasureId::T1 => "T1",
            MeasureId::ClsCoef => "ClsCoef",
            MeasureId::T4 => "T4",
            MeasureId::C1 => "C1",
            MeasureId::C2 => "C2",
            MeasureId::S1 => "S1",
            MeasureId::S2 => "S2",
        }
    }

    pub fn task(self) -> TaskKind {
        match self {
            MeasureId::C1 | MeasureId::C2 | MeasureId::S1 | MeasureId::S2 => TaskKind::Regression,
            _ => TaskKind::Classification,
        }
    }

    /// Position in the task's canonical order.
    pub fn canonical_index(self) -> usize {
        self.task()
            .measures()
            .iter()
            .position(|&m| m == self)
            .expect("measure belongs to its task")
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = MeasureId::CLASSIFICATION
            .iter()
            .chain(MeasureId::REGRESSION.iter());
        for &m in all {
            if m.name().eq_ignore_ascii_case(s) {
                return Ok(m);
            }
        }
        // Table headers abbreviate the clustering coefficient.
        if s.eq_ignore_ascii_case("ClsC") {
            return Ok(MeasureId::ClsCoef);
        }
        Err(Error::Config(format!("unknown measure '{s}'")))
    }
}

/// Dataset targets: canonical class labels or real outputs.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    /// Labels in `0..k`, every class present.
    Labels(Vec<usize>),
    Values(Vec<f64>),
}

impl Target {
    pub fn len(&self) -> usize {
        match self {
            Target::Labels(l) => l.len(),
            Target::Values(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn task(&self) -> TaskKind {
        match self {
            Target::Labels(_) => TaskKind::Classification,
            Target::Values(_) => TaskKind::Regression,
        }
    }

    pub fn select(&self, idx: &[usize]) -> Target {
        match self {
            Target::Labels(l) => Target::Labels(idx.iter().map(|&i| l[i]).collect()),
            Target::Values(v) => Target::Values(idx.iter().map(|&i| v[i]).collect()),
        }
    }
}

/// Feature matrix plus targets. Validated on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    features: Matrix,
    target: Target,
}

impl Dataset {
    /// Classification dataset. Arbitrary integer labels are mapped onto
    /// `0..k` in ascending order of the original values.
    pub fn classification(features: Matrix, labels: &[i64]) -> Result<Self> {
        let distinct: BTreeSet<i64> = labels.iter().copied().collect();
        let lookup: Vec<i64> = distinct.into_iter().collect();
        let canonical = labels
            .iter()
            .map(|l| lookup.binary_search(l).expect("label present"))
            .collect();
        Self::new(features, Target::Labels(canonical))
    }

    pub fn regression(features: Matrix, values: Vec<f64>) -> Result<Self> {
        Self::new(features, Target::Values(values))
    }

    pub fn new(features: Matrix, target: Target) -> Result<Self> {
        let (n, d) = features.shape();
        if n < 2 {
            return Err(Error::InvalidDataset(format!("need at least 2 samples, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidDataset("need at least 1 feature".into()));
        }
        if target.len() != n {
            return Err(Error::InvalidDataset(format!(
                "{n} feature rows but {} targets",
                target.len()
            )));
        }
        if !features.is_finite() {
            return Err(Error::InvalidDataset("non-finite feature value".into()));
        }
        match &target {
            Target::Labels(labels) => {
                let k = labels.iter().max().map_or(0, |m| m + 1);
                let mut seen = vec![false; k];
                for &l in labels {
                    seen[l] = true;
                }
                if k < 2 {
                    return Err(Error::InvalidDataset("need at least 2 classes".into()));
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::InvalidDataset(
                        "labels must be contiguous integers starting at 0".into(),
                    ));
                }
            }
            Target::Values(values) => {
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidDataset("non-finite target value".into()));
                }
            }
        }
        Ok(Self { features, target })
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn task(&self) -> TaskKind {
        self.target.task()
    }

    pub fn n_samples(&self) -> usize {
        self.features.rows()
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    /// Labels for classification data, `None` otherwise.
    pub fn labels(&self) -> Option<&[usize]> {
        match &self.target {
            Target::Labels(l) => Some(l),
            Target::Values(_) => None,
        }
    }

    pub fn values(&self) -> Option<&[f64]> {
        match &self.target {
            Target::Values(v) => Some(v),
            Target::Labels(_) => None,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.labels()
            .map_or(0, |l| l.iter().max().map_or(0, |m| m + 1))
    }

    /// Same targets, new features. Used for projected outputs.
    pub fn with_features(&self, features: Matrix) -> Result<Self> {
        Self::new(features, self.target.clone())
    }

    pub fn into_parts(self) -> (Matrix, Target) {
        (self.features, self.target)
    }
}

/// Measure values in canonical task order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityProfile {
    entries: Vec<(MeasureId, f64)>,
}

impl ComplexityProfile {
    /// Accepts entries in any order; they are stored canonically. The ids
    /// must be exactly one task's measure set.
    pub fn new(entries: Vec<(MeasureId, f64)>) -> Result<Self> {
        let Some(&(first, _)) = entries.first() else {
            return Err(Error::Config("empty complexity profile".into()));
        };
        let task = first.task();
        let canonical = task.measures();
        if entries.len() != canonical.len() {
            return Err(Error::Config(format!(
                "{task} profile needs {} measures, got {}",
                canonical.len(),
                entries.len()
            )));
        }
        let mut ordered = Vec::with_capacity(canonical.len());
        for &id in canonical {
            let mut found = entries.iter().filter(|(m, _)| *m == id);
            match (found.next(), found.next()) {
                (Some(&(_, v)), None) => {
                    if !v.is_finite() {
                        return Err(Error::Config(format!("{id} value {v} is not finite")));
                    }
                    ordered.push((id, v));
                }
                (None, _) => {
                    return Err(Error::Config(format!("{task} profile is missing {id}")))
                }
                (Some(_), Some(_)) => {
                    return Err(Error::Config(format!("duplicate measure {id}")))
                }
            }
        }
        Ok(Self { entries: ordered })
    }

    pub fn task(&self) -> TaskKind {
        self.entries[0].0.task()
    }

    pub fn get(&self, id: MeasureId) -> Option<f64> {
        self.entries.iter().find(|(m, _)| *m == id).map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(MeasureId, f64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Serialize for ComplexityProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (id, v) in &self.entries {
            map.serialize_entry(id.name(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ComplexityProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = serde_json::Map::<String, serde_json::Value>::deserialize(d)?;
        let entries = parse_measure_map(&raw).map_err(serde::de::Error::custom)?;
        ComplexityProfile::new(entries).map_err(serde::de::Error::custom)
    }
}

fn parse_measure_map(raw: &serde_json::Map<String, serde_json::Value>) -> Result<Vec<(MeasureId, f64)>> {
    raw.iter()
        .map(|(k, v)| {
            let id: MeasureId = k.parse()?;
            let value = v
                .as_f64()
                .ok_or_else(|| Error::Config(format!("{k}: expected a number")))?;
            Ok((id, value))
        })
        .collect()
}

/// Named difficulty levels, easiest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Easy,
    MEasy,
    Medium,
    MComplex,
    Complex,
}

impl Level {
    pub const ALL: [Level; 5] = [
        Level::Easy,
        Level::MEasy,
        Level::Medium,
        Level::MComplex,
        Level::Complex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Level::Easy => "easy",
            Level::MEasy => "m-easy",
            Level::Medium => "medium",
            Level::MComplex => "m-complex",
            Level::Complex => "complex",
        }
    }

    fn row(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['/', '_'], "-").as_str() {
            "easy" => Ok(Level::Easy),
            "m-easy" => Ok(Level::MEasy),
            "medium" => Ok(Level::Medium),
            "m-complex" => Ok(Level::MComplex),
            "complex" => Ok(Level::Complex),
            other => Err(Error::Config(format!(
                "unknown level '{other}' (expected easy, m-easy, medium, m-complex, complex)"
            ))),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

// Rows: easy, m-easy, medium, m-complex, complex.
// Columns follow MeasureId::CLASSIFICATION.
const CLASSIFICATION_TARGETS: [[f64; 10]; 5] = [
    [0.20, 0.45, 0.00, 0.05, 0.05, 0.10, 0.05, 0.60, 0.45, 0.50],
    [0.38, 0.59, 0.21, 0.10, 0.11, 0.20, 0.11, 0.70, 0.59, 0.54],
    [0.55, 0.73, 0.43, 0.15, 0.18, 0.30, 0.18, 0.80, 0.73, 0.58],
    [0.73, 0.87, 0.64, 0.20, 0.24, 0.40, 0.24, 0.90, 0.86, 0.61],
    [0.90, 1.00, 0.85, 0.25, 0.30, 0.50, 0.30, 1.00, 1.00, 0.65],
];

// Columns follow MeasureId::REGRESSION. C1/C2 fall as difficulty rises.
const REGRESSION_TARGETS: [[f64; 4]; 5] = [
    [0.90, 0.40, 0.10, 0.90],
    [0.70, 0.30, 0.14, 0.93],
    [0.50, 0.20, 0.18, 0.95],
    [0.30, 0.10, 0.21, 0.98],
    [0.10, 0.00, 0.25, 1.00],
];

/// Requested measure values for one task.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetProfile {
    level: Option<Level>,
    targets: ComplexityProfile,
}

impl TargetProfile {
    pub fn preset(task: TaskKind, level: Level) -> Self {
        let values: &[f64] = match task {
            TaskKind::Classification => &CLASSIFICATION_TARGETS[level.row()],
            TaskKind::Regression => &REGRESSION_TARGETS[level.row()],
        };
        let entries = task
            .measures()
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect();
        Self {
            level: Some(level),
            targets: ComplexityProfile::new(entries).expect("preset tables are complete"),
        }
    }

    /// User-supplied targets; the ids must be exactly `task`'s measure set.
    pub fn custom(task: TaskKind, entries: Vec<(MeasureId, f64)>) -> Result<Self> {
        let targets = ComplexityProfile::new(entries)?;
        if targets.task() != task {
            return Err(Error::Config(format!(
                "targets name {} measures but the task is {task}",
                targets.task()
            )));
        }
        Ok(Self {
            level: None,
            targets,
        })
    }

    /// Parses a JSON object `{"F1": 0.5, ...}`.
    pub fn from_json(task: TaskKind, json: &str) -> Result<Self> {
        let raw: serde_json::Map<String, serde_json::Value> = serde_json::from_str(json)?;
        Self::custom(task, parse_measure_map(&raw)?)
    }

    pub fn task(&self) -> TaskKind {
        self.targets.task()
    }

    pub fn level(&self) -> Option<Level> {
        self.level
    }

    /// `"custom"` when no preset level applies.
    pub fn level_name(&self) -> &'static str {
        self.level.map_or("custom", Level::name)
    }

    pub fn profile(&self) -> &ComplexityProfile {
        &self.targets
    }

    pub fn values(&self) -> Vec<f64> {
        self.targets.values()
    }

    pub fn measures(&self) -> Vec<MeasureId> {
        self.targets.entries().iter().map(|(m, _)| *m).collect()
    }
}

/// Preset lookup by level name.
pub fn preset_targets(task: TaskKind, level: &str) -> Result<TargetProfile> {
    Ok(TargetProfile::preset(task, level.parse()?))
}

/// Optimizer hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpcoConfig {
    pub population: usize,
    pub iterations: usize,
    pub crossover_ratio: f64,
    pub mutation_ratio: f64,
    pub decay: f64,
    pub init_sigma: f64,
    pub mutation_sigma: f64,
    pub seed: u64,
}

impl Default for EpcoConfig {
    fn default() -> Self {
        Self {
            population: 100,
            iterations: 100,
            crossover_ratio: 0.25,
            mutation_ratio: 0.10,
            decay: 0.007,
            init_sigma: 3.0,
            mutation_sigma: 0.1,
            seed: 0,
        }
    }
}

impl EpcoConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self, task: TaskKind) -> Result<()> {
        let criteria = task.measures().len();
        if self.population < criteria + 1 {
            return Err(Error::Config(format!(
                "population {} is smaller than one ordering block ({} criteria + 1)",
                self.population, criteria
            )));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be positive".into()));
        }
        for (name, v) in [
            ("crossover ratio", self.crossover_ratio),
            ("mutation ratio", self.mutation_ratio),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} {v} outside [0, 1]")));
            }
        }
        if !(0.0..1.0).contains(&self.decay) {
            return Err(Error::Config(format!("decay {} outside [0, 1)", self.decay)));
        }
        for (name, v) in [
            ("init sigma", self.init_sigma),
            ("mutation sigma", self.mutation_sigma),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Crossover ratio in effect during iteration `t` (0-based).
    pub fn crossover_ratio_at(&self, t: usize) -> f64 {
        self.crossover_ratio * self.decay_factor(t)
    }

    pub fn mutation_ratio_at(&self, t: usize) -> f64 {
        self.mutation_ratio * self.decay_factor(t)
    }

    fn decay_factor(&self, t: usize) -> f64 {
        (1.0 - self.decay).powi(t as i32)
    }
}
