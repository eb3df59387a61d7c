//! Transform synthetic datasets toward a requested difficulty profile.
//!
//! The crate evolves a population of `d×d` projection matrices so that the
//! projected features `X·P` hit target values of a set of data-complexity
//! measures (10 for classification, 4 for regression). Labels and regression
//! outputs are never touched.
//!
//! Entry points:
//! - [`generators`] builds the synthetic source datasets.
//! - [`measures`] computes complexity profiles.
//! - [`evolution::Epco`] runs the optimizer.
//! - [`evaluation`] runs 5×2 cross-validation with baseline learners.
//! - [`io`] and [`cli`] handle CSV/JSON files and the `epco` binary.

pub mod cli;
pub mod data_model;
pub mod error;
pub mod evaluation;
pub mod evolution;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod measures;
pub mod numeric;
pub mod seed;

pub use data_model::{
    ComplexityProfile, Dataset, EpcoConfig, Level, MeasureId, Target, TargetProfile, TaskKind,
};
pub use error::{Error, Result};
pub use evolution::{Epco, EvolutionOutput, EvolutionReport};
pub use matrix::Matrix;
pub use seed::SeedPolicy;
