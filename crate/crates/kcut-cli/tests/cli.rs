//! End-to-end tests of the `kcut` binary: output schema, exit codes,
//! corpus round trips and cross-algorithm consistency.

use std::path::Path;
use std::process::{Command, Output};

fn kcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_p5(dir: &Path) -> String {
    let path = dir.join("p5.graph");
    std::fs::write(&path, "# path on five vertices\n5 4\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n")
        .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn brute_solves_the_path_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let out = kcut(&["solve", "--input", &input, "--k", "3", "--algorithm", "brute"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["value"], 2);
    assert_eq!(report["n"], 5);
    assert_eq!(report["m"], 4);
    assert_eq!(report["k"], 3);
    assert_eq!(report["algorithm"], "brute");
    assert_eq!(report["labels"].as_array().unwrap().len(), 5);
    // Field set and emission order are the stable schema; order must be
    // checked on the raw text because parsing into a Value re-sorts keys.
    let raw = String::from_utf8_lossy(&out.stdout);
    let fields = ["instance", "n", "m", "k", "algorithm", "seed", "value", "labels", "ms", "params"];
    assert_eq!(report.as_object().unwrap().len(), fields.len());
    let positions: Vec<usize> = fields
        .iter()
        .map(|f| raw.find(&format!("\"{f}\":")).unwrap_or_else(|| panic!("missing field {f}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order drifted: {raw}");
}

#[test]
fn every_algorithm_beats_or_matches_nothing_below_brute() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let brute = kcut(&["solve", "--input", &input, "--k", "3", "--algorithm", "brute"]);
    let opt = serde_json::from_slice::<serde_json::Value>(&brute.stdout).unwrap()["value"]
        .as_i64()
        .unwrap();
    for algo in ["karger-stein", "sv2", "randomized", "deterministic", "ptas"] {
        let out = kcut(&[
            "solve", "--input", &input, "--k", "3", "--algorithm", algo, "--seed", "5",
        ]);
        assert!(out.status.success(), "{algo} failed");
        let v = serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()["value"]
            .as_i64()
            .unwrap();
        assert!(v >= opt, "{algo} reported {v} below the optimum {opt}");
        if algo != "sv2" && algo != "ptas" {
            assert_eq!(v, opt, "{algo} should be exact on this instance");
        }
        if algo == "ptas" {
            // Default epsilon is 0.5.
            assert!(v as f64 <= 1.5 * opt as f64, "ptas ratio violated");
        }
    }
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "2 1\n0 0 1\n").unwrap();
    let out = kcut(&[
        "solve", "--input", path.to_str().unwrap(), "--k", "2", "--algorithm", "brute",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "missing line number: {err}");
    assert!(err.contains("self-loop"), "missing cause: {err}");
}

#[test]
fn disconnected_graphs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disc.graph");
    std::fs::write(&path, "4 2\n0 1 1\n2 3 1\n").unwrap();
    let out = kcut(&[
        "solve", "--input", path.to_str().unwrap(), "--k", "2", "--algorithm", "brute",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
}

#[test]
fn precondition_rejections_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let out = kcut(&["solve", "--input", &input, "--k", "9", "--algorithm", "brute"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn epsilon_elsewhere_warns_but_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let out = kcut(&[
        "solve", "--input", &input, "--k", "2", "--algorithm", "brute", "--epsilon", "0.3",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn tsv_mirrors_the_json_fields() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let out = kcut(&[
        "solve", "--input", &input, "--k", "2", "--algorithm", "sv2", "--format", "tsv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "instance\tn\tm\tk\talgorithm\tseed\tvalue\tlabels\tms\tparams"
    );
    let row = lines.next().unwrap();
    assert_eq!(row.split('\t').count(), 10);
}

#[test]
fn seeded_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_p5(dir.path());
    let args = [
        "solve", "--input", &input, "--k", "3", "--algorithm", "randomized", "--seed", "42",
    ];
    let a: serde_json::Value = serde_json::from_slice(&kcut(&args).stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&kcut(&args).stdout).unwrap();
    // Everything except wall time must match.
    assert_eq!(a["value"], b["value"]);
    assert_eq!(a["labels"], b["labels"]);
    assert_eq!(a["seed"], b["seed"]);
}

#[test]
fn corpus_roundtrip_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let gen = kcut(&[
        "gen-corpus",
        "--out",
        corpus.to_str().unwrap(),
        "--seed",
        "9",
        "--unit-max-n",
        "4",
        "--random-count",
        "3",
        "--clique-max-n",
        "4",
    ]);
    assert!(gen.status.success(), "stderr: {}", String::from_utf8_lossy(&gen.stderr));
    assert!(corpus.join("manifest.json").exists());

    // The n <= 4 unit family has exactly 1 + 2 + 6 = 9 connected classes.
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(corpus.join("manifest.json")).unwrap())
            .unwrap();
    let units = manifest["instances"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["family"] == "unit")
        .count();
    assert_eq!(units, 9);

    let bench = kcut(&[
        "bench",
        "--corpus",
        corpus.to_str().unwrap(),
        "--algorithms",
        "deterministic,sv2",
        "--format",
        "json",
    ]);
    assert!(bench.status.success(), "stderr: {}", String::from_utf8_lossy(&bench.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&bench.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert_eq!(row["ok"], true, "row failed: {row}");
        let ratio = row["ratio"].as_f64().unwrap();
        let k = row["k"].as_u64().unwrap() as f64;
        match row["algorithm"].as_str().unwrap() {
            "deterministic" => assert!((ratio - 1.0).abs() < 1e-12),
            "sv2" => assert!(ratio <= 2.0 - 2.0 / k + 1e-12),
            other => panic!("unexpected algorithm {other}"),
        }
    }
    let summary = doc["summary"].as_array().unwrap();
    for s in summary {
        assert_eq!(s["failures"], 0, "summary: {s}");
    }
}

#[test]
fn corpus_generation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let gen = kcut(&[
            "gen-corpus",
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "77",
            "--unit-max-n",
            "3",
            "--random-count",
            "2",
            "--clique-max-n",
            "3",
        ]);
        assert!(gen.status.success());
    }
    let ma = std::fs::read(a.join("manifest.json")).unwrap();
    let mb = std::fs::read(b.join("manifest.json")).unwrap();
    assert_eq!(ma, mb, "manifests differ between identically seeded runs");
    let ga = std::fs::read(a.join("random_000.graph")).unwrap();
    let gb = std::fs::read(b.join("random_000.graph")).unwrap();
    assert_eq!(ga, gb, "instances differ between identically seeded runs");
}
