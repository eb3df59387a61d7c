// Push a generated classification source toward a preset difficulty level
// and compare the achieved profile of the Σ-leader with the targets.
//
// cargo run --release --example transform_to_level -- [level] [seed]

use epco::generators::{gen_classification, ClassificationGenSpec};
use epco::{Epco, EpcoConfig, Level, TargetProfile, TaskKind};

pub struct Summary {
    pub level: Level,
    pub mean_fitness: f64,
    pub evaluations: usize,
}

pub fn run_with(level: Level, spec: &ClassificationGenSpec, config: EpcoConfig) -> epco::Result<Summary> {
    let source = gen_classification(spec)?;
    let targets = TargetProfile::preset(TaskKind::Classification, level);
    let output = Epco::new(config).run(&source, &targets)?;
    let best = output.report.sum_leader();
    let achieved = best.achieved.as_ref().expect("sum leader is finite");

    println!("{:<8} {:>8} {:>8} {:>8}", "measure", "target", "achieved", "error");
    for ((id, target), fit) in targets.profile().entries().iter().zip(&best.fitness) {
        let value = achieved.get(*id).unwrap_or(f64::NAN);
        println!("{:<8} {:>8.3} {:>8.3} {:>8.3}", id.name(), target, value, fit);
    }
    let mean_fitness = best.fitness_sum / best.fitness.len() as f64;
    println!(
        "level {level}: mean error {mean_fitness:.4} after {} evaluations in {:.1?}",
        output.report.evaluations, output.report.wall_time
    );
    Ok(Summary {
        level,
        mean_fitness,
        evaluations: output.report.evaluations,
    })
}

pub fn run_example() -> epco::Result<Summary> {
    let mut args = std::env::args().skip(1);
    let level = match args.next() {
        Some(name) => name.parse()?,
        None => Level::Medium,
    };
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    run_with(
        level,
        &ClassificationGenSpec::with_seed(seed),
        EpcoConfig::with_seed(seed),
    )
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
