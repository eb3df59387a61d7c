//! Data-complexity measures. Every measure standardizes features first and
//! is oriented so that larger means harder, except regression `C1`/`C2`.

pub mod classification;
pub mod regression;

use crate::data_model::{ComplexityProfile, Dataset, MeasureId, Target};
use crate::error::Result;
use crate::matrix::Matrix;

pub use classification::classification_profile;
pub use regression::regression_profile;

/// Profile of the dataset's own task. `seed` only affects `N4`.
pub fn profile(dataset: &Dataset, seed: u64) -> Result<ComplexityProfile> {
    profile_parts(dataset.features(), dataset.target(), seed)
}

/// Same as [`profile`] without requiring a validated [`Dataset`].
pub fn profile_parts(x: &Matrix, target: &Target, seed: u64) -> Result<ComplexityProfile> {
    match target {
        Target::Labels(labels) => classification::profile_raw(x, labels, seed),
        Target::Values(values) => regression::profile_raw(x, values),
    }
}

/// Single measure by id.
pub fn measure(id: MeasureId, dataset: &Dataset, seed: u64) -> Result<f64> {
    use crate::error::Error;
    use MeasureId::*;
    let x = dataset.features();
    match (id, dataset.target()) {
        (C1, Target::Values(y)) => regression::c1(x, y),
        (C2, Target::Values(y)) => regression::c2(x, y),
        (S1, Target::Values(y)) => regression::s1(x, y),
        (S2, Target::Values(y)) => regression::s2(x, y),
        (F1, Target::Labels(l)) => classification::f1(x, l),
        (F3, Target::Labels(l)) => classification::f3(x, l),
        (F4, Target::Labels(l)) => classification::f4(x, l),
        (L2, Target::Labels(l)) => classification::l2(x, l),
        (N1, Target::Labels(l)) => classification::n1(x, l),
        (N3, Target::Labels(l)) => classification::n3(x, l),
        (N4, Target::Labels(l)) => {
            classification::n4(x, l, crate::seed::derive_seed(seed, "N4", 0))
        }
        (T1, Target::Labels(l)) => classification::t1(x, l),
        (ClsCoef, Target::Labels(l)) => classification::cls_coef(x, l),
        (T4, Target::Labels(l)) => classification::t4(x, l),
        (id, t) => Err(Error::Config(format!(
            "{id} is a {} measure but the dataset is {}",
            id.task(),
            t.task()
        ))),
    }
}
