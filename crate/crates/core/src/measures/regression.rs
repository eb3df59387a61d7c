//! The four regression measures.

use crate::data_model::{ComplexityProfile, Dataset, MeasureId};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numeric;

fn require_varying(id: MeasureId, y: &[f64]) -> Result<()> {
    let first = y[0];
    if y.iter().all(|&v| v == first) {
        return Err(Error::undefined(id, "output is constant"));
    }
    Ok(())
}

/// `|ρ|` per feature; constant features contribute 0.
fn abs_correlations(id: MeasureId, x: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() < 3 {
        return Err(Error::undefined(id, "needs at least three samples"));
    }
    require_varying(id, y)?;
    let y_ranks = numeric::average_ranks(y);
    Ok((0..x.cols())
        .map(|j| {
            let ranks = numeric::average_ranks(&x.column(j));
            numeric::pearson(&ranks, &y_ranks).map_or(0.0, f64::abs)
        })
        .collect())
}

/// Maximum absolute Spearman correlation between a feature and the output.
pub fn c1(x: &Matrix, y: &[f64]) -> Result<f64> {
    let rho = abs_correlations(MeasureId::C1, x, y)?;
    Ok(rho.into_iter().fold(0.0, f64::max))
}

/// Mean absolute Spearman correlation between features and the output.
pub fn c2(x: &Matrix, y: &[f64]) -> Result<f64> {
    let rho = abs_correlations(MeasureId::C2, x, y)?;
    Ok(rho.iter().sum::<f64>() / rho.len() as f64)
}

/// Mean absolute difference of min-max normalized outputs across MST edges.
pub fn s1(x: &Matrix, y: &[f64]) -> Result<f64> {
    require_varying(MeasureId::S1, y)?;
    let xs = numeric::standardize(x).matrix;
    Ok(s1_std(&xs, y))
}

fn s1_std(xs: &Matrix, y: &[f64]) -> f64 {
    let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let edges = numeric::mst(&numeric::pairwise_euclidean(xs));
    let total: f64 = edges
        .iter()
        .map(|e| ((y[e.a] - lo) / span - (y[e.b] - lo) / span).abs())
        .sum();
    total / edges.len() as f64
}

/// Mean distance between inputs adjacent in output order, scaled by
/// `√(2d)` so unstructured data lands near 1.
pub fn s2(x: &Matrix, y: &[f64]) -> Result<f64> {
    let xs = numeric::standardize(x).matrix;
    Ok(s2_std(&xs, y))
}

fn s2_std(xs: &Matrix, y: &[f64]) -> f64 {
    let n = y.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));
    let total: f64 = order
        .windows(2)
        .map(|w| numeric::euclidean(xs.row(w[0]), xs.row(w[1])))
        .sum();
    total / (n - 1) as f64 / (2.0 * xs.cols() as f64).sqrt()
}

/// All four measures in canonical order; fully deterministic.
pub fn regression_profile(dataset: &Dataset) -> Result<ComplexityProfile> {
    let y = dataset
        .values()
        .ok_or_else(|| Error::Config("regression profile of a classification dataset".into()))?;
    profile_raw(dataset.features(), y)
}

pub(crate) fn profile_raw(x: &Matrix, y: &[f64]) -> Result<ComplexityProfile> {
    let rho = abs_correlations(MeasureId::C1, x, y)?;
    let xs = numeric::standardize(x).matrix;
    ComplexityProfile::new(vec![
        (MeasureId::C1, rho.iter().copied().fold(0.0, f64::max)),
        (MeasureId::C2, rho.iter().sum::<f64>() / rho.len() as f64),
        (MeasureId::S1, s1_std(&xs, y)),
        (MeasureId::S2, s2_std(&xs, y)),
    ])
}
