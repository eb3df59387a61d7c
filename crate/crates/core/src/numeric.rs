//! Shared numerical kernels: standardization, distances, MST, PCA spectrum,
//! Spearman correlation, the linear hinge-loss trainer and projection.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Columns whose population std falls below this are only centered.
pub const STD_FLOOR: f64 = 1e-12;

/// Regularization strength of the linear trainer.
pub const LINEAR_LAMBDA: f64 = 0.01;
/// Full-batch epochs of the linear trainer.
pub const LINEAR_EPOCHS: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct Standardized {
    pub matrix: Matrix,
    pub mean: Vec<f64>,
    /// Population std; degenerate columns report 1.
    pub std: Vec<f64>,
}

impl Standardized {
    /// Applies the stored column statistics to new rows.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        apply_standardization(x, &self.mean, &self.std)
    }
}

pub fn column_stats(x: &Matrix) -> (Vec<f64>, Vec<f64>) {
    let (n, d) = x.shape();
    let mut mean = vec![0.0; d];
    for row in x.row_iter() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut var = vec![0.0; d];
    for row in x.row_iter() {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    let std = var
        .iter()
        .map(|s| {
            let sd = (s / n as f64).sqrt();
            if sd < STD_FLOOR {
                1.0
            } else {
                sd
            }
        })
        .collect();
    (mean, std)
}

fn apply_standardization(x: &Matrix, mean: &[f64], std: &[f64]) -> Matrix {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| (x[(i, j)] - mean[j]) / std[j])
}

/// Zero mean, unit population std per column.
pub fn standardize(x: &Matrix) -> Standardized {
    let (mean, std) = column_stats(x);
    Standardized {
        matrix: apply_standardization(x, &mean, &std),
        mean,
        std,
    }
}

#[inline]
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

/// Symmetric matrix of pairwise Euclidean distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// From explicit entries; used by tests and by callers with their own
    /// metric. Panics unless square, symmetric and zero on the diagonal.
    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.rows();
        assert_eq!(m.cols(), n, "distance matrix must be square");
        for i in 0..n {
            assert_eq!(m[(i, i)], 0.0, "nonzero diagonal");
            for j in 0..i {
                assert_eq!(m[(i, j)], m[(j, i)], "asymmetric distance matrix");
            }
        }
        Self {
            n,
            data: m.as_slice().to_vec(),
        }
    }
}

/// Each unordered pair is computed once and mirrored.
pub fn pairwise_euclidean(x: &Matrix) -> DistanceMatrix {
    let n = x.rows();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let ri = x.row(i);
        for j in (i + 1)..n {
            let dist = euclidean(ri, x.row(j));
            data[i * n + j] = dist;
            data[j * n + i] = dist;
        }
    }
    DistanceMatrix { n, data }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MstEdge {
    /// Always `a < b`.
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Prim's algorithm on a dense distance matrix. Among equal-weight
/// candidates the lexicographically smallest `(min, max)` pair wins.
pub fn mst(dist: &DistanceMatrix) -> Vec<MstEdge> {
    let n = dist.len();
    if n < 2 {
        return Vec::new();
    }
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };
    let mut in_tree = vec![false; n];
    // (weight, edge endpoints) of the cheapest link into the tree
    let mut best: Vec<(f64, (usize, usize))> = vec![(f64::INFINITY, (usize::MAX, usize::MAX)); n];
    in_tree[0] = true;
    for v in 1..n {
        best[v] = (dist.get(0, v), key(0, v));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut pick = usize::MAX;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            if pick == usize::MAX || better(best[v], best[pick]) {
                pick = v;
            }
        }
        let (w, (a, b)) = best[pick];
        edges.push(MstEdge { a, b, weight: w });
        in_tree[pick] = true;
        for v in 0..n {
            if !in_tree[v] {
                let cand = (dist.get(pick, v), key(pick, v));
                if better(cand, best[v]) {
                    best[v] = cand;
                }
            }
        }
    }
    edges
}

fn better(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Eigenvalues of the sample covariance, descending, clamped at zero.
pub fn pca_explained_variance(x: &Matrix) -> Vec<f64> {
    let (n, d) = x.shape();
    let (mean, _) = column_stats(x);
    let mut cov = nalgebra::DMatrix::<f64>::zeros(d, d);
    for row in x.row_iter() {
        for a in 0..d {
            let da = row[a] - mean[a];
            for b in a..d {
                cov[(a, b)] += da * (row[b] - mean[b]);
            }
        }
    }
    let denom = (n.max(2) - 1) as f64;
    for a in 0..d {
        for b in a..d {
            let v = cov[(a, b)] / denom;
            cov[(a, b)] = v;
            cov[(b, a)] = v;
        }
    }
    let mut eig: Vec<f64> = nalgebra::SymmetricEigen::new(cov)
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0))
        .collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig
}

/// Average ranks (1-based), ties sharing the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[idx[j]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j - 1) as f64 / 2.0 + 1.0;
        for &k in &idx[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va <= 0.0 || vb <= 0.0 {
        return None;
    }
    Some((cov / (va * vb).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation. `None` when either side is constant; measure
/// code treats that as zero correlation.
pub fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "spearman length mismatch");
    if a.len() < 2 {
        return None;
    }
    pearson(&average_ranks(a), &average_ranks(b))
}

/// Binary hinge-loss model; decision is `w·x + b > 0 → class 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub training_error: f64,
}

impl LinearModel {
    pub fn score(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    /// A score of exactly zero goes to class 0.
    pub fn predict(&self, x: &[f64]) -> usize {
        usize::from(self.score(x) > 0.0)
    }
}

/// L2-regularized hinge loss, full-batch subgradient descent from zero with
/// step `1/(λ·t)`. Labels must be `0`/`1` with both present.
pub fn train_linear(x: &Matrix, labels: &[usize]) -> Result<LinearModel> {
    let (n, d) = x.shape();
    if labels.len() != n {
        return Err(Error::Training("label count does not match rows".into()));
    }
    if labels.iter().any(|&l| l > 1) {
        return Err(Error::Training("binary trainer given a label above 1".into()));
    }
    let positives = labels.iter().filter(|&&l| l == 1).count();
    if positives == 0 || positives == n {
        return Err(Error::Training("training data holds a single class".into()));
    }
    let signs: Vec<f64> = labels
        .iter()
        .map(|&l| if l == 1 { 1.0 } else { -1.0 })
        .collect();
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut grad = vec![0.0; d];
    let inv_n = 1.0 / n as f64;
    for t in 1..=LINEAR_EPOCHS {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_b = 0.0;
        for (row, &s) in x.row_iter().zip(&signs) {
            let margin = s * (w.iter().zip(row).map(|(a, v)| a * v).sum::<f64>() + b);
            if margin < 1.0 {
                for (g, v) in grad.iter_mut().zip(row) {
                    *g -= s * v;
                }
                grad_b -= s;
            }
        }
        let step = 1.0 / (LINEAR_LAMBDA * t as f64);
        for (wi, g) in w.iter_mut().zip(&grad) {
            *wi -= step * (LINEAR_LAMBDA * *wi + g * inv_n);
        }
        b -= step * grad_b * inv_n;
    }
    let mut model = LinearModel {
        weights: w,
        bias: b,
        training_error: 0.0,
    };
    let wrong = x
        .row_iter()
        .zip(labels)
        .filter(|(row, &l)| model.predict(row) != l)
        .count();
    model.training_error = wrong as f64 * inv_n;
    Ok(model)
}

/// One-vs-rest linear models for `k ≥ 2` classes. With two classes this is
/// a single binary model.
#[derive(Clone, Debug)]
pub struct LinearClassifier {
    models: Vec<LinearModel>,
}

impl LinearClassifier {
    pub fn fit(x: &Matrix, labels: &[usize]) -> Result<Self> {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        if k <= 2 {
            return Ok(Self {
                models: vec![train_linear(x, labels)?],
            });
        }
        let models = (0..k)
            .map(|c| {
                let one: Vec<usize> = labels.iter().map(|&l| usize::from(l == c)).collect();
                train_linear(x, &one)
            })
            .collect::<Result<_>>()?;
        Ok(Self { models })
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        if let [m] = self.models.as_slice() {
            return m.predict(x);
        }
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for (c, m) in self.models.iter().enumerate() {
            let s = m.score(x);
            if s > best_score {
                best = c;
                best_score = s;
            }
        }
        best
    }

    pub fn error_rate(&self, x: &Matrix, labels: &[usize]) -> f64 {
        let wrong = x
            .row_iter()
            .zip(labels)
            .filter(|(row, &l)| self.predict(row) != l)
            .count();
        wrong as f64 / labels.len() as f64
    }
}

/// `X·P`; errors if any entry of the product is not finite.
pub fn project(x: &Matrix, p: &Matrix) -> Result<Matrix> {
    if x.cols() != p.rows() {
        return Err(Error::Config(format!(
            "cannot project {}-feature data with a {}x{} matrix",
            x.cols(),
            p.rows(),
            p.cols()
        )));
    }
    let out = x.matmul(p);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::ProjectionOverflow)
    }
}
