use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: Value,
    stderr: String,
}

fn srgci(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_srgci")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, value: Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn two_edges(dir: &TempDir) -> String {
    write(dir, "two-edges.json", json!({ "n": 4, "facets": [[1, 2], [3, 4]] }))
}

#[test]
fn classify_two_disjoint_edges() {
    let dir = TempDir::new().unwrap();
    let run = srgci(&["classify", "--input", &two_edges(&dir)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(
        run.stdout,
        json!({
            "verdict": true,
            "kind": "PathUnion",
            "components": [[1, 2], [3, 4]],
            "failure_witness": null,
            "reason": null,
        })
    );
}

#[test]
fn classify_rejects_a_square() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "square.json", json!({ "n": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]] }));
    let run = srgci(&["classify", "--input", &square]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout["verdict"], json!(false));
}

#[test]
fn checkers_accept_two_disjoint_edges_in_both_path_modes() {
    let dir = TempDir::new().unwrap();
    let input = two_edges(&dir);
    for command in ["check-gci", "linear-powers"] {
        for mode in ["simple", "walk"] {
            let run = srgci(&[command, "--input", &input, "--path4-mode", mode]);
            assert_eq!(run.code, 0, "{command} {mode}: {}", run.stderr);
            assert_eq!(run.stdout["verdict"], json!(true));
        }
    }
}

#[test]
fn betti_of_the_square_of_two_disjoint_edges() {
    let dir = TempDir::new().unwrap();
    let run = srgci(&["betti", "--input", &two_edges(&dir), "--power", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout["linear"], json!(true));
    assert_eq!(run.stdout["generating_degree"], json!(4));
    assert_eq!(run.stdout["sound"], json!(true));
    let totals = run.stdout["totals"].as_array().unwrap();
    assert_eq!(totals[0], json!({ "i": 0, "degree": 4, "rank": 9 }));
    assert!(totals.iter().all(|t| t["degree"].as_u64() == Some(4 + t["i"].as_u64().unwrap())));
}

#[test]
fn betti_agrees_across_fields() {
    let dir = TempDir::new().unwrap();
    let input = two_edges(&dir);
    let p = srgci(&["betti", "--input", &input, "--field", "32003"]);
    let q = srgci(&["betti", "--input", &input, "--field", "rational"]);
    assert_eq!(p.stdout["totals"], q.stdout["totals"]);
    assert_eq!(q.stdout["field"], json!("rational"));
}

#[test]
fn flc_fails_for_a_cone_with_a_point_removed() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ideal.json", json!({ "n": 3, "generators": [[1, 0, 1], [0, 1, 1]] }));
    let run = srgci(&["flc", "--input", &input]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout["verdict"], json!(false));
    assert_eq!(run.stdout["violations"], json!([{ "i": 1, "a": [0, 0, -1], "dim": 1 }]));

    let run = srgci(&["cohomology", "--input", &input]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout["regularity"], json!(1));
}

#[test]
fn errors_are_reported_as_json_with_status_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (write(&dir, "range.json", json!({ "n": 2, "facets": [[1, 5]] })), "VertexOutOfRange"),
        (write(&dir, "garbage.json", json!({ "vertices": 3 })), "ParseError"),
        (write(&dir, "mixed.json", json!({ "n": 3, "generators": [[1, 1, 0], [0, 0, 1]] })), "NotEquigenerated"),
    ];
    for (input, kind) in &cases {
        let command = if *kind == "NotEquigenerated" { "betti" } else { "classify" };
        let run = srgci(&[command, "--input", input]);
        assert_eq!(run.code, 2, "{kind}");
        assert_eq!(run.stdout["error"], json!(kind));
        assert!(run.stdout["message"].is_string());
    }
    let missing = srgci(&["classify", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(missing.code, 2);
    assert_eq!(missing.stdout["error"], json!("IoError"));
}

#[test]
fn outside_the_characterization_is_an_error() {
    let dir = TempDir::new().unwrap();
    // vertex 1 is a cone point
    let cone = write(&dir, "cone.json", json!({ "n": 3, "facets": [[1, 2], [1, 3]] }));
    let run = srgci(&["classify", "--input", &cone]);
    assert_eq!(run.code, 2);
    assert_eq!(run.stdout["error"], json!("OutsideCharacterization"));
}

#[test]
fn bad_fields_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let run = srgci(&["betti", "--input", &two_edges(&dir), "--field", "6"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("not prime"));
}

#[test]
fn crossval_is_deterministic_and_clean() {
    let args = ["crossval", "--exhaustive", "--max-n", "5", "--samples", "20", "--seed", "7"];
    let first = Command::new(env!("CARGO_BIN_EXE_srgci")).args(args).output().unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_srgci")).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["main"]["discrepancies"], json!([]));
    assert_eq!(report["froberg"]["betti_failures"], json!(0));
}

fn replay(path: &Path) -> Run {
    srgci(&["crossval", "--input", path.to_str().unwrap()])
}

#[test]
fn reproducers_replay_their_verdicts() {
    let dir = TempDir::new().unwrap();
    // I(C5) is not linear but its square is: a clean instance for the
    // forward implication, replayed through the reproducer format
    let c5 = json!({
        "sweep": "hhz",
        "n": 5,
        "generators": [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1], [1, 0, 0, 0, 1]],
        "max_power": 2,
        "path4_mode": "simple_vertices",
        "field": { "prime": 32003 },
    });
    let path = dir.path().join("hhz-0.json");
    std::fs::write(&path, c5.to_string()).unwrap();
    let run = replay(&path);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout["hhz"]["instances"], json!(1));
    assert_eq!(run.stdout["hhz"]["discrepancies"], json!([]));

    // a main-sweep reproducer in walk mode replays with zero discrepancies
    let square = json!({
        "sweep": "main",
        "n": 4,
        "facets": [[1, 2], [2, 3], [3, 4], [1, 4]],
        "max_power": 2,
        "path4_mode": "walk_distinct_edges",
        "field": "rational",
    });
    let path = dir.path().join("main-0.json");
    std::fs::write(&path, square.to_string()).unwrap();
    let run = replay(&path);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout["main"]["instances"], json!(1));

    let repro_dir = dir.path().join("repro");
    let run = srgci(&["crossval", "--input", path.to_str().unwrap(), "--repro-dir", repro_dir.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert_eq!(std::fs::read_dir(&repro_dir).unwrap().count(), 0);
}

#[test]
fn discrepancy_reproducers_retrigger() {
    let dir = TempDir::new().unwrap();
    // a cone is outside the checkers' domain, so the record disagrees
    let cone = json!({
        "sweep": "main",
        "n": 3,
        "facets": [[1, 2], [1, 3]],
        "max_power": 1,
        "path4_mode": "simple_vertices",
        "field": { "prime": 32003 },
    });
    let input = dir.path().join("cone.json");
    std::fs::write(&input, cone.to_string()).unwrap();
    let repro_dir = dir.path().join("repro");
    let run = srgci(&["crossval", "--input", input.to_str().unwrap(), "--repro-dir", repro_dir.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    let first = &run.stdout["main"]["discrepancies"][0];
    assert!(first["checker_error"].is_string());

    let written = repro_dir.join("main-0.json");
    let again = replay(&written);
    assert_eq!(again.code, 1);
    assert_eq!(&again.stdout["main"]["discrepancies"][0], first);
}
