//! Evolutionary projection-based complexity optimization.
//!
//! Each individual is a `d×d` matrix `P`. Its fitness on criterion `i` is
//! `|T_i − C_i(X·P, y)|`. The population is kept in block order: within
//! each block of `|C|+1` slots, slot `k < |C|` holds the best remaining
//! individual on criterion `k` and slot `|C|` the best remaining by fitness
//! sum. Crossover blends head individuals into the tail, mutation adds
//! small Gaussian noise anywhere, and both rates decay geometrically.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data_model::{
    ComplexityProfile, Dataset, EpcoConfig, MeasureId, Target, TargetProfile, TaskKind,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measures;
use crate::numeric;
use crate::seed::SeedPolicy;

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub projection: Matrix,
    pub fitness: Vec<f64>,
    pub fitness_sum: f64,
}

impl Individual {
    pub fn new(projection: Matrix, fitness: Vec<f64>) -> Self {
        let fitness_sum = fitness.iter().sum();
        Self {
            projection,
            fitness,
            fitness_sum,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.fitness_sum.is_finite()
    }
}

/// Scores projections against a fixed source dataset and target profile.
pub struct FitnessEvaluator<'a> {
    x: &'a Matrix,
    target: &'a Target,
    goals: Vec<f64>,
    measure_seed: u64,
}

impl<'a> FitnessEvaluator<'a> {
    pub fn new(dataset: &'a Dataset, targets: &TargetProfile, measure_seed: u64) -> Result<Self> {
        if dataset.task() != targets.task() {
            return Err(Error::Config(format!(
                "{} targets for a {} dataset",
                targets.task(),
                dataset.task()
            )));
        }
        Ok(Self {
            x: dataset.features(),
            target: dataset.target(),
            goals: targets.values(),
            measure_seed,
        })
    }

    pub fn criteria(&self) -> usize {
        self.goals.len()
    }

    /// Achieved profile of `X·P`, or the reason it is undefined.
    pub fn achieved(&self, projection: &Matrix) -> Result<ComplexityProfile> {
        let projected = numeric::project(self.x, projection)?;
        measures::profile_parts(&projected, self.target, self.measure_seed)
    }

    /// `|T_i − C_i|` per criterion; all `+∞` when the projection overflows
    /// or any measure is undefined on the projected data.
    pub fn fitness(&self, projection: &Matrix) -> Vec<f64> {
        match self.achieved(projection) {
            Ok(profile) => profile
                .values()
                .iter()
                .zip(&self.goals)
                .map(|(c, t)| (t - c).abs())
                .collect(),
            Err(_) => vec![f64::INFINITY; self.goals.len()],
        }
    }

    pub fn evaluate(&self, projection: Matrix) -> Individual {
        let fitness = self.fitness(&projection);
        Individual::new(projection, fitness)
    }
}

/// `m` matrices with i.i.d. `N(0, sigma²)` entries, drawn row-major one
/// matrix at a time.
pub fn init_population(d: usize, m: usize, sigma: f64, rng: &mut ChaCha8Rng) -> Vec<Matrix> {
    let normal = Normal::new(0.0, sigma).expect("sigma validated positive");
    (0..m)
        .map(|_| Matrix::from_fn(d, d, |_, _| normal.sample(rng)))
        .collect()
}

/// Block ordering as a permutation: `order[slot]` is the index of the
/// individual placed there.
///
/// Greedy without replacement. Criterion slots break ties by fitness sum,
/// then original index; the sum slot breaks ties by original index.
pub fn order_indices(fitness: &[Vec<f64>], sums: &[f64]) -> Vec<usize> {
    let m = sums.len();
    let criteria = fitness.first().map_or(0, Vec::len);
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    'blocks: loop {
        for slot in 0..=criteria {
            if order.len() == m {
                break 'blocks;
            }
            let mut best: Option<usize> = None;
            for i in (0..m).filter(|&i| !placed[i]) {
                let wins = match best {
                    None => true,
                    Some(b) if slot < criteria => fitness[i][slot]
                        .total_cmp(&fitness[b][slot])
                        .then(sums[i].total_cmp(&sums[b]))
                        .is_lt(),
                    Some(b) => sums[i].total_cmp(&sums[b]).is_lt(),
                };
                if wins {
                    best = Some(i);
                }
            }
            let pick = best.expect("an unplaced individual remains");
            placed[pick] = true;
            order.push(pick);
        }
    }
    order
}

/// Reorders the population in place according to [`order_indices`].
pub fn order_population(population: &mut Vec<Individual>) {
    let fitness: Vec<Vec<f64>> = population.iter().map(|i| i.fitness.clone()).collect();
    let sums: Vec<f64> = population.iter().map(|i| i.fitness_sum).collect();
    let order = order_indices(&fitness, &sums);
    let mut slots: Vec<Option<Individual>> = population.drain(..).map(Some).collect();
    population.extend(order.into_iter().map(|i| slots[i].take().expect("permutation")));
}

/// One crossover draw: the head parent index, the random partner and the
/// head parent's weight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossoverDraw {
    pub head: usize,
    pub partner: usize,
    pub weight: f64,
    pub replaces: usize,
}

pub fn crossover_count(m: usize, ratio: f64) -> usize {
    ((m as f64 * ratio).floor() as usize).max(1)
}

pub fn mutation_count(m: usize, ratio: f64) -> usize {
    (m as f64 * ratio).floor() as usize
}

/// Writes `n_c` children into the tail of `projections` and returns the
/// draws in order. Children are `w·head + (1−w)·partner`, `w ~ U(0.5, 1)`;
/// child `i` replaces slot `m−1−i`.
pub fn crossover_step(
    projections: &mut [Matrix],
    ratio: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<CrossoverDraw> {
    let m = projections.len();
    (0..crossover_count(m, ratio))
        .map(|i| {
            let partner = rng.random_range(0..m);
            let weight = rng.random_range(0.5..1.0);
            let child = projections[i].weighted_sum(weight, &projections[partner], 1.0 - weight);
            let replaces = m - 1 - i;
            projections[replaces] = child;
            CrossoverDraw {
                head: i,
                partner,
                weight,
                replaces,
            }
        })
        .collect()
}

/// Adds `N(0, sigma²)` noise to `n_m` randomly chosen projections in
/// place. Returns the touched positions in draw order (repeats possible).
pub fn mutation_step(
    projections: &mut [Matrix],
    ratio: f64,
    sigma: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let m = projections.len();
    let normal = Normal::new(0.0, sigma).expect("sigma validated positive");
    (0..mutation_count(m, ratio))
        .map(|_| {
            let s = rng.random_range(0..m);
            for v in projections[s].as_mut_slice() {
                *v += normal.sample(rng);
            }
            s
        })
        .collect()
}

/// Fitness of the leaders after ordering, one row per leader slot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    pub iteration: usize,
    pub crossover_ratio: f64,
    pub mutation_ratio: f64,
    pub crossovers: usize,
    pub mutations: usize,
    pub leaders: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Leader {
    pub position: usize,
    /// Criterion this slot optimizes, or `None` for the fitness-sum slot.
    pub criterion: Option<MeasureId>,
    pub projection: Matrix,
    pub fitness: Vec<f64>,
    pub fitness_sum: f64,
    /// `None` when the leader's projection is degenerate.
    pub achieved: Option<ComplexityProfile>,
}

impl Leader {
    pub fn role(&self) -> String {
        self.criterion
            .map_or_else(|| "sum".to_string(), |c| c.name().to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSeeds {
    pub master: u64,
    pub init: u64,
    pub evolution: u64,
    /// Seed handed to the measure suite (only `N4` is stochastic).
    pub measures: u64,
}

#[derive(Clone, Debug)]
pub struct EvolutionReport {
    pub task: TaskKind,
    pub config: EpcoConfig,
    pub targets: TargetProfile,
    pub seeds: RunSeeds,
    pub trace: Vec<IterationTrace>,
    pub leaders: Vec<Leader>,
    pub evaluations: usize,
    pub wall_time: Duration,
}

impl EvolutionReport {
    /// The fitness-sum leader, the default result.
    pub fn sum_leader(&self) -> &Leader {
        self.leaders.last().expect("at least one leader")
    }

    pub fn criteria(&self) -> &'static [MeasureId] {
        self.task.measures()
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionOutput {
    /// `X·P` for leader slots `0..=|C|`; the last one is the sum leader.
    pub datasets: Vec<Dataset>,
    pub report: EvolutionReport,
}

impl EvolutionOutput {
    pub fn best(&self) -> &Dataset {
        self.datasets.last().expect("at least one output")
    }
}

/// Optimizer entry point.
///
/// ```no_run
/// use epco::generators::{gen_classification, ClassificationGenSpec};
/// use epco::{Epco, EpcoConfig, Level, TargetProfile, TaskKind};
///
/// let source = gen_classification(&ClassificationGenSpec::with_seed(1)).unwrap();
/// let targets = TargetProfile::preset(TaskKind::Classification, Level::Medium);
/// let out = Epco::new(EpcoConfig::with_seed(1)).run(&source, &targets).unwrap();
/// println!("{:?}", out.report.sum_leader().achieved);
/// ```
#[derive(Clone, Debug)]
pub struct Epco {
    config: EpcoConfig,
    initial: Vec<Matrix>,
    threads: Option<usize>,
}

impl Epco {
    pub fn new(config: EpcoConfig) -> Self {
        Self {
            config,
            initial: Vec::new(),
            threads: None,
        }
    }

    pub fn config(&self) -> &EpcoConfig {
        &self.config
    }

    /// Overwrites the first individuals of the random initial population.
    /// The random draws are made regardless, so the rest of the run's
    /// stream is unchanged.
    pub fn with_initial_projections(mut self, projections: Vec<Matrix>) -> Self {
        self.initial = projections;
        self
    }

    /// Caps fitness-evaluation parallelism. Results do not depend on it.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads.max(1));
        self
    }

    pub fn run(&self, dataset: &Dataset, targets: &TargetProfile) -> Result<EvolutionOutput> {
        match self.threads {
            None => self.run_inner(dataset, targets),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?
                .install(|| self.run_inner(dataset, targets)),
        }
    }

    fn run_inner(&self, dataset: &Dataset, targets: &TargetProfile) -> Result<EvolutionOutput> {
        let started = Instant::now();
        let cfg = &self.config;
        let task = dataset.task();
        cfg.validate(task)?;
        let d = dataset.n_features();
        let m = cfg.population;
        let criteria = task.measures();
        let c = criteria.len();
        if self.initial.len() > m {
            return Err(Error::Config("more initial projections than individuals".into()));
        }
        if let Some(p) = self.initial.iter().find(|p| p.shape() != (d, d)) {
            return Err(Error::Config(format!(
                "initial projection is {}x{}, expected {d}x{d}",
                p.rows(),
                p.cols()
            )));
        }

        let policy = SeedPolicy::new(cfg.seed);
        let seeds = RunSeeds {
            master: cfg.seed,
            init: policy.child("ga-init", 0),
            evolution: policy.child("ga-loop", 0),
            measures: cfg.seed,
        };
        let evaluator = FitnessEvaluator::new(dataset, targets, seeds.measures)?;

        let mut projections =
            init_population(d, m, cfg.init_sigma, &mut crate::seed::rng_from_seed(seeds.init));
        for (slot, p) in projections.iter_mut().zip(&self.initial) {
            *slot = p.clone();
        }
        let mut population: Vec<Individual> = projections
            .into_par_iter()
            .map(|p| evaluator.evaluate(p))
            .collect();
        let mut evaluations = m;
        if population.iter().all(Individual::is_degenerate) {
            return Err(Error::DegenerateSource);
        }

        let mut rng = crate::seed::rng_from_seed(seeds.evolution);
        let mut trace = Vec::with_capacity(cfg.iterations);
        for t in 0..cfg.iterations {
            order_population(&mut population);
            let crossover_ratio = cfg.crossover_ratio_at(t);
            let mutation_ratio = cfg.mutation_ratio_at(t);
            let leaders = population[..=c].iter().map(|i| i.fitness.clone()).collect();

            let mut projections: Vec<Matrix> =
                population.iter().map(|i| i.projection.clone()).collect();
            let draws = crossover_step(&mut projections, crossover_ratio, &mut rng);
            let mutated =
                mutation_step(&mut projections, mutation_ratio, cfg.mutation_sigma, &mut rng);

            let mut dirty: Vec<usize> = draws
                .iter()
                .map(|dr| dr.replaces)
                .chain(mutated.iter().copied())
                .collect();
            dirty.sort_unstable();
            dirty.dedup();
            let rescored: Vec<(usize, Individual)> = dirty
                .par_iter()
                .map(|&i| (i, evaluator.evaluate(projections[i].clone())))
                .collect();
            evaluations += rescored.len();
            for (i, ind) in rescored {
                population[i] = ind;
            }

            trace.push(IterationTrace {
                iteration: t,
                crossover_ratio,
                mutation_ratio,
                crossovers: draws.len(),
                mutations: mutated.len(),
                leaders,
            });
        }
        order_population(&mut population);

        let leaders: Vec<Leader> = population[..=c]
            .iter()
            .enumerate()
            .map(|(position, ind)| Leader {
                position,
                criterion: criteria.get(position).copied(),
                projection: ind.projection.clone(),
                fitness: ind.fitness.clone(),
                fitness_sum: ind.fitness_sum,
                achieved: evaluator.achieved(&ind.projection).ok(),
            })
            .collect();
        let datasets = leaders
            .iter()
            .map(|l| {
                let x = numeric::project(dataset.features(), &l.projection)?;
                dataset.with_features(x)
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(EvolutionOutput {
            datasets,
            report: EvolutionReport {
                task,
                config: cfg.clone(),
                targets: targets.clone(),
                seeds,
                trace,
                leaders,
                evaluations,
                wall_time: started.elapsed(),
            },
        })
    }
}
