//! Baseline learners and repeated two-fold cross-validation.
//!
//! Every learner is a pure `fit + predict` function of its inputs, so
//! scores depend only on the data and the scheme seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::data_model::{Dataset, TaskKind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numeric::{self, LinearClassifier};
use crate::seed::SeedPolicy;

/// Neighbour count for kNN and kNR.
pub const DEFAULT_K: usize = 5;
/// Ridge penalty.
pub const RIDGE_LAMBDA: f64 = 1.0;
/// Gaussian NB variance floor, relative to the largest feature variance.
pub const GNB_VAR_SMOOTHING: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Learner {
    Knn,
    Dt,
    Gnb,
    Svm,
    Knr,
    Dtr,
    Brr,
}

impl Learner {
    pub const CLASSIFIERS: [Learner; 4] = [Learner::Knn, Learner::Dt, Learner::Gnb, Learner::Svm];
    pub const REGRESSORS: [Learner; 3] = [Learner::Knr, Learner::Dtr, Learner::Brr];

    pub fn task(self) -> TaskKind {
        match self {
            Learner::Knn | Learner::Dt | Learner::Gnb | Learner::Svm => TaskKind::Classification,
            Learner::Knr | Learner::Dtr | Learner::Brr => TaskKind::Regression,
        }
    }

    pub fn for_task(task: TaskKind) -> &'static [Learner] {
        match task {
            TaskKind::Classification => &Self::CLASSIFIERS,
            TaskKind::Regression => &Self::REGRESSORS,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Learner::Knn => "knn",
            Learner::Dt => "dt",
            Learner::Gnb => "gnb",
            Learner::Svm => "svm",
            Learner::Knr => "knr",
            Learner::Dtr => "dtr",
            Learner::Brr => "brr",
        }
    }

    pub fn metric(self) -> &'static str {
        match self.task() {
            TaskKind::Classification => "accuracy",
            TaskKind::Regression => "mae",
        }
    }
}

impl fmt::Display for Learner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Learner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = Self::CLASSIFIERS.iter().chain(Self::REGRESSORS.iter());
        all.copied()
            .find(|l| l.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown learner '{s}'")))
    }
}

/// Indices of the `k` nearest training rows, nearest first; distance ties
/// go to the lower index.
fn nearest(train: &Matrix, point: &[f64], k: usize) -> Vec<usize> {
    let mut scored: Vec<(f64, usize)> = train
        .row_iter()
        .enumerate()
        .map(|(i, r)| (numeric::squared_distance(r, point), i))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    scored.truncate(k.clamp(1, train.rows()));
    scored.into_iter().map(|(_, i)| i).collect()
}

fn require_rows(x: &Matrix) -> Result<()> {
    if x.rows() == 0 {
        return Err(Error::Evaluation("empty training set".into()));
    }
    Ok(())
}

/// Majority vote of the `k` nearest neighbours after standardizing with the
/// training statistics. Vote ties go to the lowest label.
pub fn knn_classify(
    train_x: &Matrix,
    train_y: &[usize],
    test_x: &Matrix,
    k: usize,
) -> Result<Vec<usize>> {
    require_rows(train_x)?;
    let scaler = numeric::standardize(train_x);
    let test = scaler.apply(test_x);
    let classes = train_y.iter().max().map_or(0, |m| m + 1);
    Ok(test
        .row_iter()
        .map(|row| {
            let mut votes = vec![0usize; classes];
            for i in nearest(&scaler.matrix, row, k) {
                votes[train_y[i]] += 1;
            }
            argmax_first(&votes)
        })
        .collect())
}

fn argmax_first(votes: &[usize]) -> usize {
    let mut best = 0;
    for (c, &v) in votes.iter().enumerate() {
        if v > votes[best] {
            best = c;
        }
    }
    best
}

/// Mean target of the `k` nearest neighbours.
pub fn knn_regress(
    train_x: &Matrix,
    train_y: &[f64],
    test_x: &Matrix,
    k: usize,
) -> Result<Vec<f64>> {
    require_rows(train_x)?;
    let scaler = numeric::standardize(train_x);
    let test = scaler.apply(test_x);
    Ok(test
        .row_iter()
        .map(|row| {
            let idx = nearest(&scaler.matrix, row, k);
            idx.iter().map(|&i| train_y[i]).sum::<f64>() / idx.len() as f64
        })
        .collect())
}

#[derive(Clone, Debug)]
enum Node<T> {
    Leaf(T),
    Split {
        feature: usize,
        threshold: f64,
        left: Box<Node<T>>,
        right: Box<Node<T>>,
    },
}

impl<T: Copy> Node<T> {
    fn predict(&self, x: &[f64]) -> T {
        let mut node = self;
        loop {
            match node {
                Node::Leaf(v) => return *v,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => node = if x[*feature] <= *threshold { left } else { right },
            }
        }
    }
}

/// Impurity bookkeeping for one split criterion.
trait Criterion {
    type Target: Copy;
    type Acc: Clone;
    fn empty(&self) -> Self::Acc;
    fn add(&self, acc: &mut Self::Acc, y: Self::Target);
    fn remove(&self, acc: &mut Self::Acc, y: Self::Target);
    /// Impurity times sample count.
    fn weighted_impurity(&self, acc: &Self::Acc) -> f64;
    fn leaf(&self, acc: &Self::Acc) -> Self::Target;
}

struct Gini {
    classes: usize,
}

impl Criterion for Gini {
    type Target = usize;
    type Acc = (Vec<usize>, usize);

    fn empty(&self) -> Self::Acc {
        (vec![0; self.classes], 0)
    }
    fn add(&self, acc: &mut Self::Acc, y: usize) {
        acc.0[y] += 1;
        acc.1 += 1;
    }
    fn remove(&self, acc: &mut Self::Acc, y: usize) {
        acc.0[y] -= 1;
        acc.1 -= 1;
    }
    fn weighted_impurity(&self, (counts, n): &Self::Acc) -> f64 {
        if *n == 0 {
            return 0.0;
        }
        let n = *n as f64;
        let sq: f64 = counts.iter().map(|&c| (c as f64).powi(2)).sum();
        n - sq / n
    }
    fn leaf(&self, (counts, _): &Self::Acc) -> usize {
        argmax_first(counts)
    }
}

struct Variance;

impl Criterion for Variance {
    type Target = f64;
    /// (count, sum, sum of squares)
    type Acc = (usize, f64, f64);

    fn empty(&self) -> Self::Acc {
        (0, 0.0, 0.0)
    }
    fn add(&self, acc: &mut Self::Acc, y: f64) {
        acc.0 += 1;
        acc.1 += y;
        acc.2 += y * y;
    }
    fn remove(&self, acc: &mut Self::Acc, y: f64) {
        acc.0 -= 1;
        acc.1 -= y;
        acc.2 -= y * y;
    }
    fn weighted_impurity(&self, &(n, s, sq): &Self::Acc) -> f64 {
        if n == 0 {
            return 0.0;
        }
        (sq - s * s / n as f64).max(0.0)
    }
    fn leaf(&self, &(n, s, _): &Self::Acc) -> f64 {
        s / n as f64
    }
}

/// Fully grown CART. A node stays a leaf only when it is pure or no
/// threshold separates its samples; among candidate splits the largest
/// impurity decrease wins, ties going to the lower feature and then the
/// lower threshold.
fn grow<C: Criterion>(crit: &C, x: &Matrix, y: &[C::Target], idx: &[usize]) -> Node<C::Target>
where
    C::Target: PartialEq,
{
    let mut all = crit.empty();
    for &i in idx {
        crit.add(&mut all, y[i]);
    }
    let parent = crit.weighted_impurity(&all);
    let pure = idx.iter().all(|&i| y[i] == y[idx[0]]);
    if pure || parent <= 0.0 {
        return Node::Leaf(crit.leaf(&all));
    }

    let mut best: Option<(f64, usize, f64)> = None;
    let mut sorted = idx.to_vec();
    for f in 0..x.cols() {
        sorted.sort_by(|&a, &b| x[(a, f)].total_cmp(&x[(b, f)]).then(a.cmp(&b)));
        let mut left = crit.empty();
        let mut right = all.clone();
        for w in 0..sorted.len() - 1 {
            let i = sorted[w];
            crit.add(&mut left, y[i]);
            crit.remove(&mut right, y[i]);
            let (lo, hi) = (x[(i, f)], x[(sorted[w + 1], f)]);
            if lo == hi {
                continue;
            }
            let gain = parent - crit.weighted_impurity(&left) - crit.weighted_impurity(&right);
            let mid = lo + (hi - lo) / 2.0;
            // adjacent floats: the midpoint may round up onto `hi`
            let threshold = if mid < hi { mid } else { lo };
            if best.is_none_or(|(g, _, _)| gain > g) {
                best = Some((gain, f, threshold));
            }
        }
    }
    let Some((_, feature, threshold)) = best else {
        return Node::Leaf(crit.leaf(&all));
    };
    let (l, r): (Vec<usize>, Vec<usize>) =
        idx.iter().partition(|&&i| x[(i, feature)] <= threshold);
    Node::Split {
        feature,
        threshold,
        left: Box::new(grow(crit, x, y, &l)),
        right: Box::new(grow(crit, x, y, &r)),
    }
}

pub fn dt_classify(train_x: &Matrix, train_y: &[usize], test_x: &Matrix) -> Result<Vec<usize>> {
    require_rows(train_x)?;
    let classes = train_y.iter().max().map_or(0, |m| m + 1);
    let idx: Vec<usize> = (0..train_x.rows()).collect();
    let tree = grow(&Gini { classes }, train_x, train_y, &idx);
    Ok(test_x.row_iter().map(|r| tree.predict(r)).collect())
}

pub fn dt_regress(train_x: &Matrix, train_y: &[f64], test_x: &Matrix) -> Result<Vec<f64>> {
    require_rows(train_x)?;
    let idx: Vec<usize> = (0..train_x.rows()).collect();
    let tree = grow(&Variance, train_x, train_y, &idx);
    Ok(test_x.row_iter().map(|r| tree.predict(r)).collect())
}

/// Gaussian naive Bayes with frequency priors; posterior ties go to the
/// lowest label.
pub fn gnb_classify(train_x: &Matrix, train_y: &[usize], test_x: &Matrix) -> Result<Vec<usize>> {
    require_rows(train_x)?;
    let (n, d) = train_x.shape();
    let classes = train_y.iter().max().map_or(0, |m| m + 1);
    let (_, overall_std) = numeric::column_stats(train_x);
    let max_var = overall_std
        .iter()
        .map(|s| s * s)
        .fold(0.0, f64::max);
    let floor = GNB_VAR_SMOOTHING * max_var;

    let mut counts = vec![0usize; classes];
    let mut mean = vec![vec![0.0; d]; classes];
    for (row, &c) in train_x.row_iter().zip(train_y) {
        counts[c] += 1;
        for (m, v) in mean[c].iter_mut().zip(row) {
            *m += v;
        }
    }
    for (m, &cnt) in mean.iter_mut().zip(&counts) {
        m.iter_mut().for_each(|v| *v /= cnt.max(1) as f64);
    }
    let mut var = vec![vec![0.0; d]; classes];
    for (row, &c) in train_x.row_iter().zip(train_y) {
        for ((s, v), m) in var[c].iter_mut().zip(row).zip(&mean[c]) {
            *s += (v - m) * (v - m);
        }
    }
    for (s, &cnt) in var.iter_mut().zip(&counts) {
        s.iter_mut().for_each(|v| *v = *v / cnt.max(1) as f64 + floor);
    }

    Ok(test_x
        .row_iter()
        .map(|row| {
            let mut best = usize::MAX;
            let mut best_score = f64::NEG_INFINITY;
            for c in (0..classes).filter(|&c| counts[c] > 0) {
                let mut score = (counts[c] as f64 / n as f64).ln();
                for ((v, m), s2) in row.iter().zip(&mean[c]).zip(&var[c]) {
                    score -= 0.5 * (2.0 * std::f64::consts::PI * s2).ln()
                        + (v - m) * (v - m) / (2.0 * s2);
                }
                if best == usize::MAX || score > best_score {
                    best = c;
                    best_score = score;
                }
            }
            best
        })
        .collect())
}

/// The deterministic linear hinge-loss trainer on train-standardized data.
pub fn linear_svm_classify(
    train_x: &Matrix,
    train_y: &[usize],
    test_x: &Matrix,
) -> Result<Vec<usize>> {
    require_rows(train_x)?;
    let scaler = numeric::standardize(train_x);
    let model = LinearClassifier::fit(&scaler.matrix, train_y)?;
    let test = scaler.apply(test_x);
    Ok(test.row_iter().map(|r| model.predict(r)).collect())
}

/// Closed-form ridge on train-standardized features with an unpenalized
/// intercept.
pub fn ridge_regress(
    train_x: &Matrix,
    train_y: &[f64],
    test_x: &Matrix,
    lambda: f64,
) -> Result<Vec<f64>> {
    require_rows(train_x)?;
    let (n, d) = train_x.shape();
    let scaler = numeric::standardize(train_x);
    let z = &scaler.matrix;
    let y_mean = train_y.iter().sum::<f64>() / n as f64;
    let mut gram = nalgebra::DMatrix::<f64>::zeros(d, d);
    let mut rhs = nalgebra::DVector::<f64>::zeros(d);
    for (row, &y) in z.row_iter().zip(train_y) {
        for a in 0..d {
            rhs[a] += row[a] * (y - y_mean);
            for b in 0..d {
                gram[(a, b)] += row[a] * row[b];
            }
        }
    }
    for a in 0..d {
        gram[(a, a)] += lambda;
    }
    let w = gram
        .clone()
        .cholesky()
        .map(|c| c.solve(&rhs))
        .or_else(|| gram.lu().solve(&rhs))
        .ok_or_else(|| Error::Evaluation("singular ridge system".into()))?;
    let test = scaler.apply(test_x);
    Ok(test
        .row_iter()
        .map(|r| y_mean + r.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>())
        .collect())
}

/// Fit on one matrix, predict another, score with the learner's metric.
pub fn fit_and_score(learner: Learner, train: &Dataset, test: &Dataset) -> Result<f64> {
    if learner.task() != train.task() || learner.task() != test.task() {
        return Err(Error::Config(format!(
            "{learner} is a {} learner but the data is {}",
            learner.task(),
            train.task()
        )));
    }
    let (tx, vx) = (train.features(), test.features());
    match learner.task() {
        TaskKind::Classification => {
            let ty = train.labels().expect("classification data");
            let vy = test.labels().expect("classification data");
            let pred = match learner {
                Learner::Knn => knn_classify(tx, ty, vx, DEFAULT_K)?,
                Learner::Dt => dt_classify(tx, ty, vx)?,
                Learner::Gnb => gnb_classify(tx, ty, vx)?,
                Learner::Svm => linear_svm_classify(tx, ty, vx)?,
                _ => unreachable!("task checked above"),
            };
            Ok(accuracy(&pred, vy))
        }
        TaskKind::Regression => {
            let ty = train.values().expect("regression data");
            let vy = test.values().expect("regression data");
            let pred = match learner {
                Learner::Knr => knn_regress(tx, ty, vx, DEFAULT_K)?,
                Learner::Dtr => dt_regress(tx, ty, vx)?,
                Learner::Brr => ridge_regress(tx, ty, vx, RIDGE_LAMBDA)?,
                _ => unreachable!("task checked above"),
            };
            Ok(mean_absolute_error(&pred, vy))
        }
    }
}

pub fn accuracy(pred: &[usize], truth: &[usize]) -> f64 {
    let hits = pred.iter().zip(truth).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}

pub fn mean_absolute_error(pred: &[f64], truth: &[f64]) -> f64 {
    pred.iter().zip(truth).map(|(a, b)| (a - b).abs()).sum::<f64>() / truth.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CvScheme {
    pub repeats: usize,
    pub folds: usize,
    pub seed: u64,
}

impl CvScheme {
    /// Five repeats of two-fold CV.
    pub fn five_by_two(seed: u64) -> Self {
        Self {
            repeats: 5,
            folds: 2,
            seed,
        }
    }
}

/// Fold assignment for one repeat: `true` puts the sample in fold 1.
///
/// Classification folds are stratified: samples are shuffled, grouped by
/// class, and dealt alternately with a toggle that carries across classes,
/// so both fold sizes and per-class counts differ by at most one.
pub fn split_folds(dataset: &Dataset, seed: u64, repeat: usize) -> Result<Vec<bool>> {
    let n = dataset.n_samples();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut SeedPolicy::new(seed).rng("cv", repeat as u64));
    let mut fold = vec![false; n];
    match dataset.labels() {
        Some(labels) => {
            let classes = dataset.n_classes();
            let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); classes];
            for &i in &order {
                by_class[labels[i]].push(i);
            }
            if let Some(c) = by_class.iter().position(|g| g.len() < 2) {
                return Err(Error::Evaluation(format!(
                    "class {c} has fewer than 2 samples; cannot stratify"
                )));
            }
            let mut toggle = false;
            for group in by_class {
                for i in group {
                    fold[i] = toggle;
                    toggle = !toggle;
                }
            }
        }
        None => {
            for (pos, &i) in order.iter().enumerate() {
                fold[i] = pos % 2 == 1;
            }
        }
    }
    Ok(fold)
}

fn subset(dataset: &Dataset, idx: &[usize]) -> Result<Dataset> {
    Dataset::new(
        dataset.features().select_rows(idx),
        dataset.target().select(idx),
    )
    .map_err(|e| Error::Evaluation(format!("fold construction: {e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub learner: Learner,
    pub metric: &'static str,
    /// Repeat-major: repeat 0 fold 0, repeat 0 fold 1, ...
    pub scores: Vec<f64>,
    pub mean: f64,
    /// Population standard deviation of `scores`.
    pub std: f64,
}

impl EvalResult {
    fn new(learner: Learner, scores: Vec<f64>) -> Self {
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let std = (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n).sqrt();
        Self {
            learner,
            metric: learner.metric(),
            scores,
            mean,
            std,
        }
    }
}

/// Repeated two-fold CV. Each repeat reshuffles with
/// `derive_seed(scheme.seed, "cv", repeat)`; each fold trains on one half
/// and tests on the other.
pub fn cross_validate(dataset: &Dataset, learner: Learner, scheme: &CvScheme) -> Result<EvalResult> {
    if scheme.folds != 2 {
        return Err(Error::Config("only two-fold schemes are supported".into()));
    }
    if learner.task() != dataset.task() {
        return Err(Error::Config(format!(
            "{learner} is a {} learner but the data is {}",
            learner.task(),
            dataset.task()
        )));
    }
    let mut scores = Vec::with_capacity(scheme.repeats * 2);
    for r in 0..scheme.repeats {
        let fold = split_folds(dataset, scheme.seed, r)?;
        let a: Vec<usize> = (0..fold.len()).filter(|&i| !fold[i]).collect();
        let b: Vec<usize> = (0..fold.len()).filter(|&i| fold[i]).collect();
        let (da, db) = (subset(dataset, &a)?, subset(dataset, &b)?);
        scores.push(fit_and_score(learner, &da, &db)?);
        scores.push(fit_and_score(learner, &db, &da)?);
    }
    Ok(EvalResult::new(learner, scores))
}

/// All learners for the dataset's task, in declaration order.
pub fn evaluate_all(dataset: &Dataset, scheme: &CvScheme) -> Result<Vec<EvalResult>> {
    Learner::for_task(dataset.task())
        .iter()
        .map(|&l| cross_validate(dataset, l, scheme))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> Matrix {
        Matrix::from_rows(&points.iter().map(|&p| [p]).collect::<Vec<_>>())
    }

    #[test]
    fn knn_cases() {
        let train = line(&[0.0, 10.0]);
        assert_eq!(knn_classify(&train, &[0, 1], &line(&[1.0]), 1).unwrap(), vec![0]);
        assert_eq!(knn_classify(&train, &[0, 1], &line(&[10.0]), 1).unwrap(), vec![1]);
        // k = n with a 2-2 vote falls back to label 0
        let train = line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(knn_classify(&train, &[1, 0, 1, 0], &line(&[3.0]), 4).unwrap(), vec![0]);
        // k larger than the training set is clamped
        assert_eq!(knn_classify(&train, &[1, 1, 1, 0], &line(&[0.0]), 50).unwrap(), vec![1]);
    }

    #[test]
    fn knr_cases() {
        let train = line(&[0.0, 10.0]);
        assert_eq!(knn_regress(&train, &[0.0, 10.0], &line(&[1.0]), 2).unwrap(), vec![5.0]);
        assert_eq!(knn_regress(&train, &[0.0, 10.0], &line(&[10.0]), 1).unwrap(), vec![10.0]);
        let train = line(&[0.0, 1.0, 2.0]);
        let pred = knn_regress(&train, &[3.0, 6.0, 9.0], &line(&[-4.0, 7.0]), 3).unwrap();
        assert_eq!(pred, vec![6.0, 6.0]);
    }

    #[test]
    fn dt_cases() {
        let x = line(&[0.0, 1.0, 2.0, 3.0]);
        let y = [0, 0, 1, 1];
        assert_eq!(dt_classify(&x, &y, &x).unwrap(), y.to_vec());
        assert_eq!(dt_classify(&x, &y, &line(&[1.49, 1.51])).unwrap(), vec![0, 1]);
        assert_eq!(dt_classify(&x, &[1, 1, 1, 1], &line(&[-5.0, 9.0])).unwrap(), vec![1, 1]);
        // XOR needs a zero-gain first split
        let xor = Matrix::from_rows(&[[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(dt_classify(&xor, &[0, 0, 1, 1], &xor).unwrap(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn dtr_cases() {
        let x = line(&[0.0, 1.0, 10.0, 11.0]);
        let y = [1.0, 1.0, 5.0, 5.0];
        assert_eq!(dt_regress(&x, &y, &line(&[5.4, 5.6])).unwrap(), vec![1.0, 5.0]);
        assert_eq!(dt_regress(&x, &[2.0; 4], &line(&[100.0])).unwrap(), vec![2.0]);
        let y = [0.5, -1.0, 3.0, 7.0];
        assert_eq!(dt_regress(&x, &y, &x).unwrap(), y.to_vec());
    }

    #[test]
    fn gnb_cases() {
        let x = line(&[-2.0, 0.0, 0.0, 2.0]);
        assert_eq!(gnb_classify(&x, &[0, 0, 1, 1], &line(&[0.0])).unwrap(), vec![0]);
        let x = line(&[-1.0, 1.0, 9.0, 11.0]);
        let pred = gnb_classify(&x, &[0, 0, 1, 1], &line(&[6.0, -5.0, 5.0])).unwrap();
        // 5.0 is equidistant with equal variances: tie goes to label 0
        assert_eq!(pred, vec![1, 0, 0]);
    }

    #[test]
    fn ridge_two_points() {
        // z = (−1, 1), centered y = (−1, 1): w = 2 / (2 + λ)
        let x = line(&[0.0, 2.0]);
        let pred = ridge_regress(&x, &[0.0, 2.0], &line(&[2.0]), 1.0).unwrap();
        assert!((pred[0] - (1.0 + 2.0 / 3.0)).abs() < 1e-12);
        let pred = ridge_regress(&x, &[0.0, 2.0], &line(&[2.0]), 1e12).unwrap();
        assert!((pred[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn learner_ids_roundtrip() {
        for l in Learner::CLASSIFIERS.iter().chain(&Learner::REGRESSORS) {
            assert_eq!(l.id().parse::<Learner>().unwrap(), *l);
        }
        assert!("mlp".parse::<Learner>().is_err());
    }
}
