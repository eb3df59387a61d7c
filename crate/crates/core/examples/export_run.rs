// Write a full run to disk (leader CSVs, trace, manifest) and check that
// re-profiling the default output reproduces the manifest.
//
// cargo run --release --example export_run -- [out-dir]

use std::path::{Path, PathBuf};

use epco::generators::{gen_classification, ClassificationGenSpec};
use epco::io::{self, RunFiles, RunManifest};
use epco::{measures, Epco, EpcoConfig, Level, TargetProfile, TaskKind};

pub fn run_with(dir: &Path, samples: usize, config: EpcoConfig) -> epco::Result<RunFiles> {
    let source = gen_classification(&ClassificationGenSpec {
        samples,
        ..ClassificationGenSpec::with_seed(config.seed)
    })?;
    let targets = TargetProfile::preset(TaskKind::Classification, Level::MEasy);
    let output = Epco::new(config).run(&source, &targets)?;
    let files = io::write_run(dir, &output, Some("generated".into()), false, true)?;

    let manifest: RunManifest = serde_json::from_str(&std::fs::read_to_string(&files.manifest)?)?;
    let best = io::read_dataset(&dir.join(&manifest.default_output), TaskKind::Classification)?;
    let reprofiled = measures::profile(&best, manifest.seeds.measures)?;
    let recorded = manifest.leaders.last().and_then(|l| l.achieved.clone());
    assert_eq!(recorded.as_ref(), Some(&reprofiled), "manifest disagrees with its CSV");

    println!("wrote {} datasets to {}", files.datasets.len(), dir.display());
    println!("trace: {}", files.trace.display());
    println!("default output {} re-profiles identically", manifest.default_output);
    Ok(files)
}

pub fn run_example() -> epco::Result<RunFiles> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("epco-export-run"));
    run_with(&dir, 350, EpcoConfig::with_seed(2))
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
