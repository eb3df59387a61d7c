use epco::{EpcoConfig, Level, MeasureId, TaskKind};

mod generate_sources {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generate_sources.rs"));
}

mod profile_measures {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/profile_measures.rs"));
}

mod transform_to_level {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/transform_to_level.rs"));
}

mod custom_targets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_targets.rs"));
}

mod evaluate_learners {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/evaluate_learners.rs"));
}

mod export_run {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/export_run.rs"));
}

fn quick(seed: u64) -> EpcoConfig {
    EpcoConfig {
        population: 20,
        iterations: 4,
        ..EpcoConfig::with_seed(seed)
    }
}

#[test]
fn generate_sources_example_runs() {
    let [cls, reg] = generate_sources::run_with(0).expect("generate_sources runs");
    assert_eq!((cls.task(), reg.task()), (TaskKind::Classification, TaskKind::Regression));
}

#[test]
fn profile_measures_example_runs() {
    let profiles = profile_measures::run_with(120, 1).expect("profile_measures runs");
    assert_eq!(profiles.len(), profile_measures::SEPARATIONS.len());
    let n3 = |k: usize| profiles[k].get(MeasureId::N3).unwrap();
    assert!(n3(0) <= n3(3));
}

#[test]
fn transform_to_level_example_runs() {
    let spec = epco::generators::ClassificationGenSpec {
        samples: 80,
        features: 6,
        ..Default::default()
    };
    let summary = transform_to_level::run_with(Level::MComplex, &spec, quick(0)).expect("transform runs");
    assert_eq!(summary.level, Level::MComplex);
    assert!(summary.mean_fitness.is_finite());
    assert!(summary.evaluations >= 20);
}

#[test]
fn custom_targets_example_runs() {
    let out = custom_targets::run_with(80, quick(3)).expect("custom_targets runs");
    assert_eq!(out.datasets.len(), 5);
    assert_eq!(out.report.targets.level_name(), "custom");
}

#[test]
fn evaluate_learners_example_runs() {
    let rows = evaluate_learners::run_with(80, quick(1)).expect("evaluate_learners runs");
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|(_, results)| results.len() == 4));
}

#[test]
fn export_run_example_runs() {
    let dir = tempfile::tempdir().unwrap();
    let files = export_run::run_with(dir.path(), 80, quick(2)).expect("export_run runs");
    assert_eq!(files.datasets.len(), 11);
    assert!(files.manifest.exists() && files.trace.exists());
}
