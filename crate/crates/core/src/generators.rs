//! Synthetic source datasets: a Madelon-style hypercube generator for
//! binary classification and a sparse linear law for regression.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::data_model::{Dataset, Target};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::seed::SeedPolicy;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationGenSpec {
    pub samples: usize,
    pub features: usize,
    pub informative: usize,
    pub redundant: usize,
    /// Per-coordinate offset of each class centre from the origin.
    pub class_sep: f64,
    pub label_noise: f64,
    pub seed: u64,
}

impl Default for ClassificationGenSpec {
    fn default() -> Self {
        Self {
            samples: 350,
            features: 20,
            informative: 2,
            redundant: 0,
            class_sep: 1.0,
            label_noise: 0.01,
            seed: 0,
        }
    }
}

impl ClassificationGenSpec {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.informative == 0 {
            return Err(Error::Config("need at least one informative feature".into()));
        }
        if self.informative + self.redundant > self.features {
            return Err(Error::Config(format!(
                "{} informative + {} redundant features exceed {} features",
                self.informative, self.redundant, self.features
            )));
        }
        if !(self.class_sep > 0.0 && self.class_sep.is_finite()) {
            return Err(Error::Config("class separation must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.label_noise) {
            return Err(Error::Config("label noise must lie in [0, 1]".into()));
        }
        if self.samples / 2 < 2 {
            return Err(Error::Generation(format!(
                "{} samples leave fewer than 2 per class",
                self.samples
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegressionGenSpec {
    pub samples: usize,
    pub features: usize,
    pub informative: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for RegressionGenSpec {
    fn default() -> Self {
        Self {
            samples: 350,
            features: 20,
            informative: 10,
            noise_sigma: 1.0,
            seed: 0,
        }
    }
}

impl RegressionGenSpec {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.informative > self.features {
            return Err(Error::Config(format!(
                "{} informative features exceed {} features",
                self.informative, self.features
            )));
        }
        if self.features == 0 {
            return Err(Error::Config("need at least one feature".into()));
        }
        if self.samples < 2 {
            return Err(Error::Generation("need at least 2 samples".into()));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::Config("noise sigma must be non-negative".into()));
        }
        Ok(())
    }
}

fn normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Orthonormal `k×k` matrix from the QR factorization of a Gaussian draw.
fn random_rotation<R: Rng>(k: usize, rng: &mut R) -> Matrix {
    let g = nalgebra::DMatrix::<f64>::from_fn(k, k, |_, _| normal(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // sign-fix so the draw is Haar-distributed
    Matrix::from_fn(k, k, |i, j| {
        let s = if r[(j, j)] < 0.0 { -1.0 } else { 1.0 };
        q[(i, j)] * s
    })
}

/// Two Gaussian clusters at opposite hypercube vertices.
///
/// Column layout: informative, then redundant, then pure noise. Rows are
/// shuffled; class sizes are `⌊n/2⌋` (label 0) and `⌈n/2⌉` (label 1)
/// before label noise flips each label independently.
pub fn gen_classification(spec: &ClassificationGenSpec) -> Result<Dataset> {
    spec.validate()?;
    let seeds = SeedPolicy::new(spec.seed);
    let mut rng = seeds.rng("gen-classification", 0);
    let (n, d, k) = (spec.samples, spec.features, spec.informative);

    let vertex: Vec<f64> = (0..k)
        .map(|_| if rng.random::<bool>() { spec.class_sep } else { -spec.class_sep })
        .collect();
    let sizes = [n / 2, n - n / 2];
    let mut labels = Vec::with_capacity(n);
    let mut informative = Matrix::zeros(n, k);
    let mut row = 0;
    for (class, &size) in sizes.iter().enumerate() {
        let sign = if class == 0 { 1.0 } else { -1.0 };
        for _ in 0..size {
            for (j, v) in vertex.iter().enumerate() {
                informative[(row, j)] = sign * v + normal(&mut rng);
            }
            labels.push(class);
            row += 1;
        }
    }
    let informative = informative.matmul(&random_rotation(k, &mut rng));
    let mix = Matrix::from_fn(k, spec.redundant, |_, _| rng.random_range(-1.0..1.0));
    let redundant = informative.matmul(&mix);

    let mut x = Matrix::zeros(n, d);
    for i in 0..n {
        let out = x.row_mut(i);
        out[..k].copy_from_slice(informative.row(i));
        out[k..k + spec.redundant].copy_from_slice(redundant.row(i));
        for v in &mut out[k + spec.redundant..] {
            *v = normal(&mut rng);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let x = x.select_rows(&order);
    let mut labels: Vec<usize> = order.iter().map(|&i| labels[i]).collect();
    for l in &mut labels {
        if rng.random::<f64>() < spec.label_noise {
            *l = 1 - *l;
        }
    }
    // heavy noise on a tiny sample can wipe out a class
    if labels.iter().all(|&l| l == labels[0]) {
        return Err(Error::Generation("label noise removed a class".into()));
    }
    Dataset::new(x, Target::Labels(labels))
}

/// Regression dataset together with its generating weights.
#[derive(Clone, Debug)]
pub struct RegressionSample {
    pub dataset: Dataset,
    /// Exactly `informative` nonzero entries, each in `(0, 100)`.
    pub weights: Vec<f64>,
}

/// `y = X·w + ε` with standard normal `X`.
pub fn gen_regression(spec: &RegressionGenSpec) -> Result<Dataset> {
    gen_regression_with_weights(spec).map(|s| s.dataset)
}

pub fn gen_regression_with_weights(spec: &RegressionGenSpec) -> Result<RegressionSample> {
    spec.validate()?;
    let mut rng = SeedPolicy::new(spec.seed).rng("gen-regression", 0);
    let (n, d) = (spec.samples, spec.features);
    let x = Matrix::from_fn(n, d, |_, _| normal(&mut rng));
    let mut columns: Vec<usize> = (0..d).collect();
    columns.shuffle(&mut rng);
    let mut weights = vec![0.0; d];
    for &j in &columns[..spec.informative] {
        // open interval: resample the (practically impossible) zero
        let mut w = 0.0;
        while w == 0.0 {
            w = 100.0 * rng.random::<f64>();
        }
        weights[j] = w;
    }
    let y: Vec<f64> = x
        .row_iter()
        .map(|row| {
            let signal: f64 = row.iter().zip(&weights).map(|(a, b)| a * b).sum();
            signal + spec.noise_sigma * normal(&mut rng)
        })
        .collect();
    Ok(RegressionSample {
        dataset: Dataset::new(x, Target::Values(y))?,
        weights,
    })
}
