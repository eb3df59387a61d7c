// Ask for a hand-picked regression profile instead of a preset level.
//
// cargo run --release --example custom_targets

use epco::generators::{gen_regression, RegressionGenSpec};
use epco::{Epco, EpcoConfig, EvolutionOutput, MeasureId, TargetProfile, TaskKind};

pub const TARGETS: &str = r#"{ "C1": 0.65, "C2": 0.25, "S1": 0.12, "S2": 0.92 }"#;

pub fn run_with(samples: usize, config: EpcoConfig) -> epco::Result<EvolutionOutput> {
    let source = gen_regression(&RegressionGenSpec {
        samples,
        ..RegressionGenSpec::with_seed(config.seed)
    })?;
    let targets = TargetProfile::from_json(TaskKind::Regression, TARGETS)?;
    let output = Epco::new(config).run(&source, &targets)?;

    for leader in &output.report.leaders {
        let achieved = leader.achieved.as_ref().map(|p| p.values());
        println!(
            "{:<4} sum {:>8.4}  achieved {:?}",
            leader.role(),
            leader.fitness_sum,
            achieved.unwrap_or_default()
        );
    }
    let best = output.report.sum_leader();
    let c1 = best.achieved.as_ref().and_then(|p| p.get(MeasureId::C1));
    println!("C1 asked 0.65, got {:.3}", c1.unwrap_or(f64::NAN));
    Ok(output)
}

pub fn run_example() -> epco::Result<EvolutionOutput> {
    run_with(350, EpcoConfig::with_seed(3))
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
