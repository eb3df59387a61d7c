// Transform one source to the easy and complex presets and compare the
// baseline learners on both outputs with 5x2 cross-validation.
//
// cargo run --release --example evaluate_learners

use epco::evaluation::{evaluate_all, CvScheme, EvalResult};
use epco::generators::{gen_classification, ClassificationGenSpec};
use epco::{Epco, EpcoConfig, Level, TargetProfile, TaskKind};

pub fn run_with(samples: usize, config: EpcoConfig) -> epco::Result<Vec<(Level, Vec<EvalResult>)>> {
    let source = gen_classification(&ClassificationGenSpec {
        samples,
        ..ClassificationGenSpec::with_seed(config.seed)
    })?;
    let scheme = CvScheme::five_by_two(config.seed);
    let mut rows = Vec::new();
    for level in [Level::Easy, Level::Complex] {
        let targets = TargetProfile::preset(TaskKind::Classification, level);
        let output = Epco::new(config.clone()).run(&source, &targets)?;
        let results = evaluate_all(output.best(), &scheme)?;
        print!("{:<10}", level.name());
        for r in &results {
            print!("  {} {:.3} ± {:.3}", r.learner, r.mean, r.std);
        }
        println!();
        rows.push((level, results));
    }
    Ok(rows)
}

pub fn run_example() -> epco::Result<Vec<(Level, Vec<EvalResult>)>> {
    run_with(350, EpcoConfig::with_seed(1))
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
