//! Black-box tests of the command-line interface: output shapes, byte
//! determinism across runs and thread counts, and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stablefrag"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stablefrag-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn fragment_output_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "fragment",
        "--law",
        "stable-tail:1.5",
        "--n",
        "60",
        "--times",
        "0.5,1",
        "--reps",
        "25",
        "--seed",
        "9",
    ];
    let first = run_ok(bin().args(args).args(["--threads", "1"]));
    let second = run_ok(bin().args(args).args(["--threads", "1"]));
    let third = run_ok(bin().args(args).args(["--threads", "3"]));
    let env_threads = run_ok(bin().args(args).env("FRAG_THREADS", "2"));
    assert_eq!(first.stdout, second.stdout, "same seed must give same bytes");
    assert_eq!(first.stdout, third.stdout, "thread count must not change bytes");
    assert_eq!(first.stdout, env_threads.stdout, "env thread count must not change bytes");
    let text = String::from_utf8(first.stdout).unwrap();
    assert_eq!(text.lines().count(), 50, "25 reps x 2 times");
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        let masses = record["masses"].as_array().unwrap();
        let total: f64 = masses.iter().map(|v| v.as_f64().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-9, "masses must sum to one: {line}");
    }
}

#[test]
fn excursion_modes_emit_unit_mass_partitions() {
    for mode in ["brownian", "lattice"] {
        let out = run_ok(bin().args([
            "excursion", "--mode", mode, "--m", "64", "--t", "0,1", "--reps", "3", "--seed", "5",
        ]));
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().count(), 6);
        for line in text.lines() {
            let record: serde_json::Value = serde_json::from_str(line).unwrap();
            if record["t"].as_f64().unwrap() == 0.0 {
                assert_eq!(record["masses"].as_array().unwrap().len(), 1, "{line}");
            }
        }
    }
}

#[test]
fn sample_tree_emits_header_and_complete_walk() {
    let out = run_ok(bin().args([
        "sample-tree",
        "--law",
        "poisson-one",
        "--n",
        "40",
        "--seed",
        "11",
    ]));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2 + 41, "header, column row, n+1 walk rows");
    assert!(lines[0].starts_with("# {"));
    let header: serde_json::Value = serde_json::from_str(&lines[0][2..]).unwrap();
    assert_eq!(header["law"], "poisson-one");
    assert_eq!(header["n"], 40);
    assert!(header["bn"].as_f64().unwrap() > 0.0);
    assert_eq!(lines[1], "k,w_lex,c");
    assert!(lines.last().unwrap().starts_with("40,-1,"));
}

#[test]
fn crt_cut_records_have_expected_shape() {
    let out = run_ok(bin().args([
        "crt-cut", "--law", "geometric-half", "--n", "50", "--t", "1", "--reps", "4", "--seed",
        "2",
    ]));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    for (i, line) in text.lines().enumerate() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["rep"].as_u64().unwrap(), i as u64);
        assert_eq!(record["t"].as_f64().unwrap(), 1.0);
    }
}

#[test]
fn converge_exit_codes_follow_the_gate() {
    let pass_path = scratch("converge_pass.json");
    fs::write(
        &pass_path,
        r#"{
            "law": "geometric-half",
            "pipelines": ["bernoulli-fragment", "bernoulli-fragment"],
            "sizes": [64],
            "times": [0.5, 1.0],
            "reps": 2500,
            "seed": 12,
            "threshold": 0.05
        }"#,
    )
    .unwrap();
    let out = run_ok(bin().args(["converge", "--config", pass_path.to_str().unwrap()]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);

    let fail_path = scratch("converge_fail.json");
    fs::write(
        &fail_path,
        r#"{
            "law": "geometric-half",
            "pipelines": ["bernoulli-fragment", "bernoulli-fragment"],
            "sizes": [16, 1024],
            "times": [1.0],
            "reps": 400,
            "seed": 12,
            "threshold": 0.05
        }"#,
    )
    .unwrap();
    let out = bin()
        .args(["converge", "--config", fail_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "gate failure must exit 2");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn bad_usage_and_bad_input_exit_one() {
    let out = bin().args(["fragment", "--law", "geometric-half"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "missing required args must exit 1");

    let out = bin()
        .args(["fragment", "--law", "no-such-law", "--n", "10", "--times", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = bin()
        .args(["converge", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reproduce_figure_matches_goldens() {
    let dir = scratch("figure_out");
    run_ok(bin().args(["reproduce-figure", "--out", dir.to_str().unwrap()]));
    let goldens = [
        ("figure_tree.csv", include_str!("golden/figure_tree.csv")),
        ("figure_prim_order.csv", include_str!("golden/figure_prim_order.csv")),
        ("figure_paths.csv", include_str!("golden/figure_paths.csv")),
        ("figure_components.csv", include_str!("golden/figure_components.csv")),
        ("figure_masses.csv", include_str!("golden/figure_masses.csv")),
    ];
    for (name, golden) in goldens {
        let produced = fs::read_to_string(dir.join(name)).unwrap();
        assert_eq!(produced, golden, "{name} differs");
    }
}

#[test]
fn intensity_reports_small_identity_residuals() {
    let out = run_ok(bin().args([
        "intensity",
        "--alpha",
        "1.5",
        "--t",
        "1",
        "--z",
        "0.5,1,2",
        "--check-moment",
    ]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["normalization_residual"].as_f64().unwrap().abs() < 1e-6);
    assert!(report["left_mass_residual"].as_f64().unwrap().abs() < 1e-5);
    assert!(report["moment_residual"].as_f64().unwrap().abs() < 1e-4);
    assert_eq!(report["values"].as_array().unwrap().len(), 3);
}
