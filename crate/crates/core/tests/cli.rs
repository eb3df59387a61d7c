use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn epco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epco"))
        .args(args)
        .env_remove("EPCO_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = epco(args);
    assert!(
        out.status.success(),
        "epco {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = epco(args);
    assert!(!out.status.success(), "epco {args:?} unexpectedly succeeded");
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn keys(json: &str) -> Vec<String> {
    let v: Value = serde_json::from_str(json).unwrap();
    v.as_object().unwrap().keys().cloned().collect()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

const CLS_IDS: [&str; 10] = ["F1", "F3", "F4", "L2", "N1", "N3", "N4", "T1", "ClsCoef", "T4"];

#[test]
fn generate_writes_default_shape_and_prints_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "src.csv");
    let stdout = ok(&["generate", "--task", "classification", "--seed", "7", "--out", &out]);
    assert_eq!(keys(&stdout), CLS_IDS);

    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 21);
    assert_eq!((header[0], header[19], header[20]), ("f0", "f19", "target"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 350);
    for row in &rows {
        let last = row.rsplit(',').next().unwrap();
        assert!(last == "0" || last == "1", "{last}");
    }

    // same seed, byte-identical file; overwrite needs --force
    fails(&["generate", "--task", "classification", "--seed", "7", "--out", &out]);
    let again = path(dir.path(), "again.csv");
    ok(&["generate", "--task", "classification", "--seed", "7", "--out", &again]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
    ok(&["generate", "--task", "classification", "--seed", "8", "--out", &out, "--force"]);
    assert_ne!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn generate_rejects_impossible_shapes_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "bad.csv");
    let err = fails(&[
        "generate", "--task", "regression", "--informative", "30", "--features", "20", "--out", &out,
    ]);
    assert!(err.contains("informative"), "{err}");
    assert!(!Path::new(&out).exists());
    fails(&["generate", "--task", "ranking", "--out", &out]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn profile_is_canonical_and_seed_stable() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.csv");
    ok(&["generate", "--task", "classification", "--seed", "2", "--samples", "120", "--out", &src]);
    let a = ok(&["profile", "--task", "classification", "--seed", "5", &src]);
    assert_eq!(keys(&a), CLS_IDS);
    assert_eq!(a, ok(&["profile", "--task", "classification", "--seed", "5", &src]));
    // the generator prints the profile under its own seed
    let printed = ok(&["generate", "--task", "classification", "--seed", "2", "--samples", "120", "--out", &src, "--force"]);
    assert_eq!(printed, ok(&["profile", "--task", "classification", "--seed", "2", &src]));
}

#[test]
fn noiseless_single_feature_regression_has_full_correlation() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "lin.csv");
    ok(&[
        "generate", "--task", "regression", "--informative", "1", "--noise-sigma", "0", "--seed", "3",
        "--out", &src,
    ]);
    let profile: Value = serde_json::from_str(&ok(&["profile", "--task", "regression", &src])).unwrap();
    assert_eq!(profile["C1"], 1.0);
    assert_eq!(keys(&profile.to_string()), ["C1", "C2", "S1", "S2"]);
}

#[test]
fn malformed_rows_report_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "f0,f1,target\n1.0,2.0,0\n3.0,oops,1\n0.5,0.5,1\n").unwrap();
    let err = fails(&["profile", "--task", "classification", bad.to_str().unwrap()]);
    assert!(err.contains("line 3"), "{err}");
    std::fs::write(&bad, "f0,f1,target\n1.0,2.0,0\n3.0,1\n").unwrap();
    let err = fails(&["profile", "--task", "classification", bad.to_str().unwrap()]);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn transform_writes_leaders_manifest_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.csv");
    let out = path(dir.path(), "run");
    ok(&["generate", "--task", "classification", "--samples", "80", "--features", "6", "--seed", "4", "--out", &src]);
    let args = [
        "transform", "--task", "classification", "--level", "m-complex", "--pop", "24", "--iters", "5",
        "--seed", "4", "-i", &src, "-o", &out,
    ];
    let summary: Value = serde_json::from_str(&ok(&args)).unwrap();
    assert!(summary["default_output"].as_str().unwrap().ends_with("leader_10.csv"));

    let run = Path::new(&out);
    for k in 0..=10 {
        assert!(run.join(format!("leader_{k}.csv")).exists());
    }
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(run.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["level"], "m-complex");
    assert_eq!(manifest["config"]["population"], 24);
    assert!(manifest.get("wall_time_seconds").is_none());
    let leaders = manifest["leaders"].as_array().unwrap();
    assert_eq!(leaders.len(), 11);
    assert_eq!(leaders[10]["role"], "sum");

    // achieved profile in the manifest equals re-profiling the emitted file
    let best = path(run, "leader_10.csv");
    let reprofiled: Value =
        serde_json::from_str(&ok(&["profile", "--task", "classification", "--seed", "4", &best])).unwrap();
    assert_eq!(leaders[10]["achieved"], reprofiled);

    let trace = std::fs::read_to_string(run.join("trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("iteration,leader,criterion,fitness"));
    assert_eq!(lines.count(), 5 * 11 * 10);

    // labels are carried over unchanged
    let labels = |p: &str| -> Vec<String> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(labels(&src), labels(&best));

    // a second run into the same directory needs --force
    fails(&args);
    let mut forced = args.to_vec();
    forced.push("--force");
    ok(&forced);
}

#[test]
fn transform_rejects_bad_requests() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.csv");
    let out = path(dir.path(), "run");
    ok(&["generate", "--task", "regression", "--samples", "40", "--features", "4", "--informative", "2", "--out", &src]);
    let base = ["transform", "--task", "regression", "-i", &src, "-o", &out];

    let mut small_pop = base.to_vec();
    small_pop.extend(["--level", "easy", "--pop", "4"]);
    assert!(fails(&small_pop).contains("population"));

    let targets = dir.path().join("targets.json");
    std::fs::write(&targets, r#"{"C1": 0.5, "C2": 0.2, "S1": 0.1}"#).unwrap();
    let mut partial = base.to_vec();
    partial.extend(["--targets", targets.to_str().unwrap()]);
    fails(&partial);

    std::fs::write(&targets, r#"{"C1": 0.5, "C2": 0.2, "S1": 0.1, "S2": 0.9, "F1": 0.3}"#).unwrap();
    fails(&partial);

    let mut both = base.to_vec();
    both.extend(["--level", "easy", "--targets", targets.to_str().unwrap()]);
    fails(&both);
    let mut unknown = base.to_vec();
    unknown.extend(["--level", "trivial"]);
    fails(&unknown);
    assert!(!Path::new(&out).exists());

    std::fs::write(&targets, r#"{"S2": 0.9, "C1": 0.6, "C2": 0.2, "S1": 0.1}"#).unwrap();
    let mut custom = base.to_vec();
    custom.extend(["--targets", targets.to_str().unwrap(), "--pop", "10", "--iters", "2"]);
    ok(&custom);
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(&out).join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["level"], "custom");
    assert_eq!(keys(&manifest["targets"].to_string()), ["C1", "C2", "S1", "S2"]);
}

#[test]
fn evaluate_reports_every_learner() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.csv");
    ok(&["generate", "--task", "classification", "--samples", "100", "--seed", "1", "--out", &src]);
    let text = ok(&["evaluate", "--task", "classification", "--seed", "3", &src]);
    let results: Value = serde_json::from_str(&text).unwrap();
    let ids: Vec<&str> = results.as_array().unwrap().iter().map(|r| r["learner"].as_str().unwrap()).collect();
    assert_eq!(ids, ["knn", "dt", "gnb", "svm"]);
    for r in results.as_array().unwrap() {
        assert_eq!(r["scores"].as_array().unwrap().len(), 10);
        assert_eq!(r["metric"], "accuracy");
    }
    assert_eq!(text, ok(&["evaluate", "--task", "classification", "--seed", "3", &src]));

    let picked: Value =
        serde_json::from_str(&ok(&["evaluate", "--task", "classification", "--learners", "gnb", &src])).unwrap();
    assert_eq!(picked.as_array().unwrap().len(), 1);
    fails(&["evaluate", "--task", "classification", "--learners", "mlp", &src]);

    let reg = path(dir.path(), "reg.csv");
    ok(&["generate", "--task", "regression", "--samples", "60", "--out", &reg]);
    assert!(fails(&["evaluate", "--task", "regression", "--learners", "knn", &reg]).contains("knn"));
    let ids: Vec<String> = serde_json::from_str::<Value>(&ok(&["evaluate", "--task", "regression", &reg]))
        .unwrap()
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["learner"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["knr", "dtr", "brr"]);
}

#[test]
fn in_process_driver_matches_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let src = path(dir.path(), "src.csv");
    ok(&["generate", "--task", "regression", "--samples", "50", "--out", &src]);
    let mut buf = Vec::new();
    epco::cli::run(["epco", "profile", "--task", "regression", &src], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), ok(&["profile", "--task", "regression", &src]));
    let mut sink = Vec::new();
    assert!(epco::cli::run(["epco", "profile", "--task", "regression"], &mut sink).is_err());
}
