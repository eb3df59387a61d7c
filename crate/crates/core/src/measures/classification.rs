//! The ten classification measures.

use rand::Rng;

use crate::data_model::{ComplexityProfile, Dataset, MeasureId};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numeric::{self, DistanceMatrix};
use crate::seed::{derive_seed, rng_from_seed};

/// Max-normalized distance below which two samples are linked in the
/// clustering-coefficient graph.
pub const CLS_COEF_EPSILON: f64 = 0.15;

/// Share of variance the `T4` principal components must cover.
pub const T4_VARIANCE: f64 = 0.95;

/// Relative slack in the `T1` containment test; standardization perturbs
/// exact containments by a few ulps.
const CONTAINMENT_TOL: f64 = 1e-10;

fn n_classes(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |m| m + 1)
}

fn class_counts(labels: &[usize]) -> Vec<usize> {
    let mut counts = vec![0; n_classes(labels)];
    for &l in labels {
        counts[l] += 1;
    }
    counts
}

fn require_classes(id: MeasureId, labels: &[usize]) -> Result<()> {
    if class_counts(labels).iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::undefined(id, "needs at least two classes"));
    }
    Ok(())
}

fn std_features(x: &Matrix) -> Matrix {
    numeric::standardize(x).matrix
}

/// Maximum Fisher discriminant ratio, reported as `1/(1+r_max)`.
pub fn f1(x: &Matrix, labels: &[usize]) -> Result<f64> {
    require_classes(MeasureId::F1, labels)?;
    Ok(f1_std(&std_features(x), labels))
}

fn f1_std(x: &Matrix, labels: &[usize]) -> f64 {
    let (n, d) = x.shape();
    let k = n_classes(labels);
    let counts = class_counts(labels);
    let mut best = 0.0f64;
    for f in 0..d {
        let mut sums = vec![0.0; k];
        let mut total = 0.0;
        for i in 0..n {
            sums[labels[i]] += x[(i, f)];
            total += x[(i, f)];
        }
        let mean = total / n as f64;
        let class_mean: Vec<f64> = sums
            .iter()
            .zip(&counts)
            .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
            .collect();
        let between: f64 = class_mean
            .iter()
            .zip(&counts)
            .map(|(m, &c)| c as f64 * (m - mean) * (m - mean))
            .sum();
        let within: f64 = (0..n)
            .map(|i| {
                let dv = x[(i, f)] - class_mean[labels[i]];
                dv * dv
            })
            .sum();
        let ratio = if within > 0.0 {
            between / within
        } else if between > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        best = best.max(ratio);
    }
    1.0 / (1.0 + best)
}

/// Closed interval where every present class overlaps on feature `f`,
/// restricted to samples with `active[i]`. `None` when empty or when fewer
/// than two classes remain.
fn overlap_interval(
    x: &Matrix,
    labels: &[usize],
    f: usize,
    active: &[bool],
    k: usize,
) -> Option<(f64, f64)> {
    let mut lo = vec![f64::INFINITY; k];
    let mut hi = vec![f64::NEG_INFINITY; k];
    for i in 0..x.rows() {
        if active[i] {
            let v = x[(i, f)];
            let c = labels[i];
            lo[c] = lo[c].min(v);
            hi[c] = hi[c].max(v);
        }
    }
    let present: Vec<usize> = (0..k).filter(|&c| lo[c] <= hi[c]).collect();
    if present.len() < 2 {
        return None;
    }
    let start = present.iter().map(|&c| lo[c]).fold(f64::NEG_INFINITY, f64::max);
    let end = present.iter().map(|&c| hi[c]).fold(f64::INFINITY, f64::min);
    (start <= end).then_some((start, end))
}

fn overlap_members(
    x: &Matrix,
    labels: &[usize],
    f: usize,
    active: &[bool],
    k: usize,
) -> Vec<bool> {
    match overlap_interval(x, labels, f, active, k) {
        None => vec![false; x.rows()],
        Some((lo, hi)) => (0..x.rows())
            .map(|i| active[i] && x[(i, f)] >= lo && x[(i, f)] <= hi)
            .collect(),
    }
}

/// Maximum individual feature efficiency.
pub fn f3(x: &Matrix, labels: &[usize]) -> Result<f64> {
    require_classes(MeasureId::F3, labels)?;
    Ok(f3_std(&std_features(x), labels))
}

fn f3_std(x: &Matrix, labels: &[usize]) -> f64 {
    let (n, d) = x.shape();
    let k = n_classes(labels);
    let all = vec![true; n];
    (0..d)
        .map(|f| {
            overlap_members(x, labels, f, &all, k)
                .iter()
                .filter(|&&m| m)
                .count()
        })
        .min()
        .map_or(1.0, |c| c as f64 / n as f64)
}

/// Collective feature efficiency.
pub fn f4(x: &Matrix, labels: &[usize]) -> Result<f64> {
    require_classes(MeasureId::F4, labels)?;
    Ok(f4_std(&std_features(x), labels))
}

fn f4_std(x: &Matrix, labels: &[usize]) -> f64 {
    let (n, d) = x.shape();
    let k = n_classes(labels);
    let mut active = vec![true; n];
    let mut remaining = n;
    let mut features: Vec<usize> = (0..d).collect();
    while !features.is_empty() && remaining > 0 {
        let mut pick = 0;
        let mut pick_members: Option<Vec<bool>> = None;
        let mut pick_count = usize::MAX;
        for (slot, &f) in features.iter().enumerate() {
            let members = overlap_members(x, labels, f, &active, k);
            let count = members.iter().filter(|&&m| m).count();
            if count < pick_count {
                pick = slot;
                pick_count = count;
                pick_members = Some(members);
            }
        }
        active = pick_members.expect("at least one feature left");
        remaining = pick_count;
        features.remove(pick);
    }
    remaining as f64 / n as f64
}

/// Training error of the linear hinge-loss classifier.
pub fn l2(x: &Matrix, labels: &[usize]) -> Result<f64> {
    require_classes(MeasureId::L2, labels)?;
    l2_std(&std_features(x), labels)
}

fn l2_std(x: &Matrix, labels: &[usize]) -> Result<f64> {
    let model = numeric::LinearClassifier::fit(x, labels)
        .map_err(|e| Error::undefined(MeasureId::L2, e.to_string()))?;
    Ok(model.error_rate(x, labels))
}

/// Fraction of samples touching a cross-class MST edge.
pub fn n1(x: &Matrix, labels: &[usize]) -> Result<f64> {
    Ok(n1_dist(&numeric::pairwise_euclidean(&std_features(x)), labels))
}

fn n1_dist(dist: &DistanceMatrix, labels: &[usize]) -> f64 {
    let n = labels.len();
    let mut border = vec![false; n];
    for e in numeric::mst(dist) {
        if labels[e.a] != labels[e.b] {
            border[e.a] = true;
            border[e.b] = true;
        }
    }
    border.iter().filter(|&&b| b).count() as f64 / n as f64
}

/// Nearest other sample; ties go to the smaller index.
fn nearest_other(dist: &DistanceMatrix, i: usize) -> usize {
    let row = dist.row(i);
    let mut best = usize::MAX;
    let mut best_d = f64::INFINITY;
    for (j, &dj) in row.iter().enumerate() {
        if j != i && (dj < best_d || best == usize::MAX) {
            best = j;
            best_d = dj;
        }
    }
    best
}

/// Leave-one-out 1-NN error.
pub fn n3(x: &Matrix, labels: &[usize]) -> Result<f64> {
    Ok(n3_dist(&numeric::pairwise_euclidean(&std_features(x)), labels))
}

fn n3_dist(dist: &DistanceMatrix, labels: &[usize]) -> f64 {
    let n = labels.len();
    let wrong = (0..n)
        .filter(|&i| labels[nearest_other(dist, i)] != labels[i])
        .count();
    wrong as f64 / n as f64
}

/// 1-NN error on `n` within-class interpolations.
pub fn n4(x: &Matrix, labels: &[usize], seed: u64) -> Result<f64> {
    n4_std(&std_features(x), labels, seed)
}

fn n4_std(x: &Matrix, labels: &[usize], seed: u64) -> Result<f64> {
    let (n, d) = x.shape();
    let k = n_classes(labels);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        members[l].push(i);
    }
    if let Some(c) = members.iter().position(|m| m.len() < 2) {
        return Err(Error::undefined(
            MeasureId::N4,
            format!("class {c} has fewer than two samples"),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut point = vec![0.0; d];
    let mut wrong = 0usize;
    for (class, group) in members.iter().enumerate() {
        for _ in 0..group.len() {
            let a = rng.random_range(0..group.len());
            let mut b = rng.random_range(0..group.len() - 1);
            if b >= a {
                b += 1;
            }
            let t: f64 = rng.random();
            let (xa, xb) = (x.row(group[a]), x.row(group[b]));
            for ((p, &va), &vb) in point.iter_mut().zip(xa).zip(xb) {
                *p = va + t * (vb - va);
            }
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, row) in x.row_iter().enumerate() {
                let dj = numeric::squared_distance(&point, row);
                if dj < best_d {
                    best = j;
                    best_d = dj;
                }
            }
            if labels[best] != class {
                wrong += 1;
            }
        }
    }
    Ok(wrong as f64 / n as f64)
}

/// Fraction of hyperspheres left after removing those contained in a
/// same-class sphere.
pub fn t1(x: &Matrix, labels: &[usize]) -> Result<f64> {
    require_classes(MeasureId::T1, labels)?;
    Ok(t1_dist(&numeric::pairwise_euclidean(&std_features(x)), labels))
}

fn t1_dist(dist: &DistanceMatrix, labels: &[usize]) -> f64 {
    let n = labels.len();
    let radius: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| labels[j] != labels[i])
                .map(|j| dist.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    // sphere `inner` lies inside sphere `outer`
    let contains = |outer: usize, inner: usize| {
        dist.get(inner, outer) + radius[inner] <= radius[outer] * (1.0 + CONTAINMENT_TOL)
    };
    let kept = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| {
                j != i
                    && labels[j] == labels[i]
                    && contains(j, i)
                    && !(contains(i, j) && i < j)
            })
        })
        .count();
    kept as f64 / n as f64
}

/// One minus the mean local clustering coefficient of the same-class
/// ε-neighbourhood graph.
pub fn cls_coef(x: &Matrix, labels: &[usize]) -> Result<f64> {
    cls_coef_dist(&numeric::pairwise_euclidean(&std_features(x)), labels)
}

fn cls_coef_dist(dist: &DistanceMatrix, labels: &[usize]) -> Result<f64> {
    let n = labels.len();
    if n < 3 {
        return Err(Error::undefined(MeasureId::ClsCoef, "needs at least three samples"));
    }
    let max = dist.max();
    if max <= 0.0 {
        return Err(Error::undefined(MeasureId::ClsCoef, "all samples coincide"));
    }
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] == labels[j] && dist.get(i, j) / max < CLS_COEF_EPSILON {
                adj[i * words + j / 64] |= 1 << (j % 64);
                adj[j * words + i / 64] |= 1 << (i % 64);
                neighbors[i].push(j);
                neighbors[j].push(i);
            }
        }
    }
    let mut total = 0.0;
    for v in 0..n {
        let deg = neighbors[v].len();
        if deg < 2 {
            continue;
        }
        let vset = &adj[v * words..(v + 1) * words];
        // each neighbour-neighbour edge is seen from both ends
        let twice: u32 = neighbors[v]
            .iter()
            .map(|&a| {
                adj[a * words..(a + 1) * words]
                    .iter()
                    .zip(vset)
                    .map(|(x, y)| (x & y).count_ones())
                    .sum::<u32>()
            })
            .sum();
        let links = f64::from(twice) / 2.0;
        total += links / (deg * (deg - 1) / 2) as f64;
    }
    Ok(1.0 - total / n as f64)
}

/// Fraction of dimensions needed for 95% of the variance.
pub fn t4(x: &Matrix, _labels: &[usize]) -> Result<f64> {
    t4_std(&std_features(x))
}

fn t4_std(x: &Matrix) -> Result<f64> {
    let eig = numeric::pca_explained_variance(x);
    let total: f64 = eig.iter().sum();
    if total <= 0.0 {
        return Err(Error::undefined(MeasureId::T4, "zero total variance"));
    }
    let goal = T4_VARIANCE * total * (1.0 - 1e-12);
    let mut cum = 0.0;
    let mut needed = eig.len();
    for (k, v) in eig.iter().enumerate() {
        cum += v;
        if cum >= goal {
            needed = k + 1;
            break;
        }
    }
    Ok(needed as f64 / x.cols() as f64)
}

/// All ten measures in canonical order. `N4` draws from
/// `derive_seed(seed, "N4", 0)`.
pub fn classification_profile(dataset: &Dataset, seed: u64) -> Result<ComplexityProfile> {
    let labels = dataset
        .labels()
        .ok_or_else(|| Error::Config("classification profile of a regression dataset".into()))?;
    profile_raw(dataset.features(), labels, seed)
}

pub(crate) fn profile_raw(x: &Matrix, labels: &[usize], seed: u64) -> Result<ComplexityProfile> {
    require_classes(MeasureId::F1, labels)?;
    let xs = std_features(x);
    let dist = numeric::pairwise_euclidean(&xs);
    let values = vec![
        (MeasureId::F1, f1_std(&xs, labels)),
        (MeasureId::F3, f3_std(&xs, labels)),
        (MeasureId::F4, f4_std(&xs, labels)),
        (MeasureId::L2, l2_std(&xs, labels)?),
        (MeasureId::N1, n1_dist(&dist, labels)),
        (MeasureId::N3, n3_dist(&dist, labels)),
        (MeasureId::N4, n4_std(&xs, labels, derive_seed(seed, "N4", 0))?),
        (MeasureId::T1, t1_dist(&dist, labels)),
        (MeasureId::ClsCoef, cls_coef_dist(&dist, labels)?),
        (MeasureId::T4, t4_std(&xs)?),
    ];
    ComplexityProfile::new(values)
}
