use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use sha2::{Digest, Sha256};

fn juelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_juelab"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const RIGIDITY: &str = r#"
version = 1
kind = "rigidity"
seed = 7
n = [20, 30]
trials = 12
epsilon = [0.5]

[ensemble]
alpha = 0.5
beta = 1.0
method = "tridiagonal"
"#;

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn identical_config_and_seed_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "r.toml", RIGIDITY);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (out, threads) in [(&a, "1"), (&b, "3")] {
        let o = juelab(&["--config", &cfg, "--out", out.to_str().unwrap(), "--threads", threads]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for ext in ["csv", "json"] {
        let x = std::fs::read(a.with_extension(ext)).unwrap();
        let y = std::fs::read(b.with_extension(ext)).unwrap();
        assert_eq!(x, y, "{ext} differs");
    }
    let csv = std::fs::read_to_string(a.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 12);
    assert!(csv.starts_with("config_hash,n,seed,draw_index,sup_h"));
}

#[test]
fn embedded_hash_matches_embedded_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "r.toml", RIGIDITY);
    let out = dir.path().join("r");
    let o = juelab(&["--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "99"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(out.with_extension("json")).unwrap()).unwrap();
    let config = doc["meta"]["config"].as_str().unwrap();
    let hash = doc["meta"]["config_hash"].as_str().unwrap();
    assert_eq!(hex::encode(Sha256::digest(config.as_bytes())), hash);
    assert!(config.contains("seed = 99"), "seed override is part of the hashed config");
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.starts_with(hash)));
    assert!(!std::str::from_utf8(&std::fs::read(out.with_extension("json")).unwrap()).unwrap().contains("wall"));
    assert_eq!(doc["summary"][0]["n"], 20);
}

#[test]
fn unknown_kind_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "foo.toml", &RIGIDITY.replace("\"rigidity\"", "\"foo\""));
    let o = juelab(&["--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown experiment kind \"foo\""), "{}", stderr(&o));
}

#[test]
fn validate_reports_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.toml", RIGIDITY);
    let o = juelab(&["validate", "--config", &ok]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok: rigidity"));

    let empty = write(dir.path(), "empty.toml", &RIGIDITY.replace("n = [20, 30]", "n = []"));
    let o = juelab(&["validate", "--config", &empty]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("N-list nonempty"));

    let manova = RIGIDITY.replace("\"tridiagonal\"", "\"manova\"");
    let m = write(dir.path(), "manova.toml", &manova);
    let o = juelab(&["validate", "--config", &m]);
    assert!(stdout(&o).contains("manova requires integer parameters"), "{}", stdout(&o));
}

#[test]
fn failed_run_leaves_existing_output_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    std::fs::write(out.with_extension("csv"), b"previous").unwrap();
    let bad = write(dir.path(), "bad.toml", &RIGIDITY.replace("n = [20, 30]", "n = [30, 20]"));
    let o = juelab(&["--config", &bad, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read(out.with_extension("csv")).unwrap(), b"previous");
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
}

#[test]
fn hankel_prints_json_record() {
    let o = juelab(&["hankel", "--alpha", "0.5", "--beta", "-0.3", "--jumps", "-0.5:0.1,0.2:0.4", "--tcheb", "0.1,0.2", "--n", "6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &doc["rows"][0];
    assert!(row["logD"].as_f64().unwrap().is_finite());
    assert!(row["node_count"].as_u64().unwrap() > 0);
    assert_eq!(row["stability_flag"], true);
    assert!(doc["meta"]["config"].as_str().unwrap().contains("jumps"));

    let o = juelab(&["hankel", "--jumps", "0.2:0.4,-0.5:0.1", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nondecreasing"));
}

#[test]
fn predict_and_parametrix_check() {
    let o = juelab(&["predict", "edge", "--n", "20,40", "--x", "0.0", "--gamma", "0.6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"][1]["regime"], "edge");
    let r = |i: usize| doc["rows"][i]["residual"].as_f64().unwrap();
    assert!((r(1) - r(0)).abs() < 0.5);

    let o = juelab(&["parametrix-check", "--object", "hg", "--params", "beta_im=0.3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["summary"]["passed"], true);

    let o = juelab(&["parametrix-check", "--object", "pinf", "--params", "alpha=0.5,jumps=-0.2:0.3;0.4:-0.1"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn binary_samples_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    let o = juelab(&["sample", "--n", "5", "--draws", "4", "--alpha", "1", "--beta", "2", "--method", "manova", "--binary", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let batch = juelab_core::sampler::read_binary(std::fs::File::open(out.with_extension("bin")).unwrap()).unwrap();
    assert_eq!(batch.len(), 4);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    let first: Vec<f64> = csv.lines().nth(1).unwrap().split(',').skip(2).map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, batch[0].values);
}

#[test]
fn rigidity_calibration_run_is_fast() {
    let start = Instant::now();
    let o = juelab(&["rigidity", "--n", "50", "--trials", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn remaining_subcommands_run() {
    let runs: [&[&str]; 5] = [
        &["gmc", "trace", "--terms", "32", "--points", "5", "--epsilon", "0.1,0.2", "--traces", "2"],
        &["gmc", "compare", "--n", "6", "--gamma", "0.5", "--trials", "100", "--terms", "32", "--grid-points", "16"],
        &["clt", "--n", "10,20", "--draws", "200", "--f", "0,0,1"],
        &["predict", "merging", "--n", "20,40", "--x1", "-0.01", "--x2", "0.01", "--gamma1", "0.5", "--gamma2", "0.5"],
        &["predict", "separated", "--n", "20", "--w", "0,0.3", "--alpha", "0.5", "--jumps", "-0.4:0.3"],
    ];
    let rows = [20, 3, 2, 2, 1];
    for (args, want) in runs.iter().zip(rows) {
        let o = juelab(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(doc["rows"].as_array().unwrap().len(), want, "{args:?}");
    }
}
