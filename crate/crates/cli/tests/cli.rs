use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pascomb::io::{read_aggregate_csv, read_hardness_report, read_summary, read_trace_csv};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pascomb"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_writes_partition_and_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("set1.toml");
    let out = run(&["analyze", "--config", s(&cfg), "--out", s(dir.path())]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let part = std::fs::read_to_string(dir.path().join("partition.txt")).unwrap();
    assert!(part.contains("optimal {1,3,4}"), "{part}");
    let sol = std::fs::read_to_string(dir.path().join("solutions.csv")).unwrap();
    assert!(sol.starts_with("solution,class,mean,variance,mean_gap,var_gap"));
    assert_eq!(sol.lines().count(), 176);
    assert!(dir.path().join("items.csv").exists());
}

#[test]
fn simulate_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("set1.toml");
    let out = run(&[
        "simulate",
        "--config",
        s(&cfg),
        "--out",
        s(dir.path()),
        "--seed",
        "3",
        "--T",
        "2000",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let rows = read_trace_csv(std::fs::File::open(dir.path().join("trace.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 20 * 2000);
    assert!(rows.iter().all(|r| r.solution().is_ok()));
    let agg =
        read_aggregate_csv(std::fs::File::open(dir.path().join("aggregate.csv")).unwrap()).unwrap();
    assert_eq!(agg.last().unwrap().t, 2000);
    let summary =
        read_summary(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.runs, 20);
    assert_eq!(summary.config.horizon, 2000);
    assert_eq!(summary.config.master_seed, 3);
}

#[test]
fn simulate_is_reproducible_across_parallelism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = configs().join("kpath.toml");
    for (dir, par) in [(&a, "1"), (&b, "3")] {
        let out = run(&[
            "simulate",
            "--config",
            s(&cfg),
            "--out",
            s(dir.path()),
            "--seed",
            "11",
            "--T",
            "1500",
            "--parallel",
            par,
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for f in ["trace.csv", "aggregate.csv", "summary.json"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn bounds_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("set1.toml");
    let out = run(&[
        "bounds",
        "--config",
        s(&cfg),
        "--T",
        "100000",
        "--delta",
        "0.05",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep =
        read_hardness_report(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(rep.big_q, 3);
    assert_eq!(rep.rows.len(), 3);
    let csv = std::fs::read_to_string(dir.path().join("hardness.csv")).unwrap();
    assert!(csv.starts_with("r_prime,H,T_prime_r"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn experiment_writes_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "experiment",
        "--id",
        "2",
        "--out",
        s(dir.path()),
        "--seed",
        "1",
        "--T",
        "1000",
        "--reps",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("aggregate_pascomb_0.4.csv").exists());
    assert!(dir.path().join("summary.json").exists());
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "means = [0.5]\nvariances = [0.1]\nK = 1\nsigma_bar_sq = 0.4\nbogus = 1\n",
    )
    .unwrap();
    let out = run(&[
        "analyze",
        "--config",
        s(&bad),
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));

    let missing = run(&[
        "analyze",
        "--config",
        s(&dir.path().join("nope.toml")),
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn missing_seed_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["experiment", "--id", "1", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "experiment",
        "--id",
        "4",
        "--out",
        s(dir.path()),
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
