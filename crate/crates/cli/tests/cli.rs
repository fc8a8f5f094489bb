use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("{e}: stdout {:?} stderr {:?}", self.stdout, self.stderr))
    }
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("windrose").chain(args.iter().copied());
    let code = windrose_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_reports_length_one_for_a_southeast_corner() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", "n 3 plain\n344\n404\n000\n");
    let r = run(&["solve", "--input", &b]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with(r#"{"solvable":true,"length":1,"#), "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["witness"][1], serde_json::json!({"i": 2, "j": 2}));
}

#[test]
fn solve_lists_winning_lengths_under_a_cap() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", "n 5 plain\n33333\n33333\n33333\n33333\n33333\n");
    let v = run(&["solve", "--input", &b, "--cap", "10"]).json();
    assert_eq!(v["winning_lengths"], serde_json::json!([1, 2]));
}

#[test]
fn torus_files_are_solved_with_wrapping() {
    let dir = TempDir::new().unwrap();
    // Plain: the corner points off the board. Torus: north wraps to (3,1).
    let b = write(&dir, "t.txt", "n 3 torus\n044\n404\n200\n");
    let v = run(&["solve", "--input", &b]).json();
    assert_eq!(v["topology"], "torus");
    assert_eq!(v["solvable"], true);
    let plain = write(&dir, "p.txt", "n 3 plain\n044\n404\n200\n");
    assert_eq!(run(&["solve", "--input", &plain]).json()["solvable"], false);
}

#[test]
fn malformed_boards_exit_with_one() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("even.txt", "n 4 plain\n0000\n0000\n0000\n0000\n"),
        ("digit.txt", "n 3 plain\n009\n000\n000\n"),
        ("ragged.txt", "n 3 plain\n00\n000\n000\n"),
        ("header.txt", "3\n000\n000\n000\n"),
    ] {
        let b = write(&dir, name, text);
        let r = run(&["solve", "--input", &b]);
        assert_eq!(r.code, 1, "{name}");
        assert!(r.stderr.contains("line"), "{name}: {}", r.stderr);
    }
    let r = run(&["solve", "--input", "/nonexistent/board.txt"]);
    assert_eq!(r.code, 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["random"]).code, 2);
    assert_eq!(run(&["random", "--n", "x"]).code, 2);
    assert_eq!(run(&["stats", "solvable-prob", "--n", "5", "--format", "xml"]).code, 2);
    assert_eq!(run(&["census", "--oracle-fraction", "2"]).code, 2);
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", "n 3 plain\n344\n404\n000\n");
    assert_eq!(run(&["validate-game", "--input", &b, "--moves", "1;1"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("census"));
}

#[test]
fn domain_errors_exit_with_one() {
    assert_eq!(run(&["random", "--n", "4"]).code, 1);
    assert_eq!(run(&["construct", "spiral", "--n", "3"]).code, 1);
    assert_eq!(run(&["census", "--n", "5"]).code, 1);
    assert_eq!(run(&["stats", "solvable-prob", "--n", "5", "--samples", "0"]).code, 1);
}

#[test]
fn validate_game_reports_outcomes() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.txt", "n 3 plain\n344\n404\n000\n");
    let won = run(&["validate-game", "--input", &b, "--moves", "1,1 2,2"]).json();
    assert_eq!(won["outcome"], "won");
    assert_eq!(won["turns"], 1);
    let going = run(&["validate-game", "--input", &b, "--moves", "(1,1)"]).json();
    assert_eq!(going["outcome"], "in-progress");
    let illegal = run(&["validate-game", "--input", &b, "--moves", "1,1 1,2"]);
    assert_eq!(illegal.code, 1);
}

#[test]
fn random_boards_are_seeded_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.txt");
    let r = run(&["random", "--n", "7", "--seed", "99", "--output", path_str(&out)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("seed 99"));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text, run(&["random", "--n", "7", "--seed", "99"]).stdout);
    assert_ne!(text, run(&["random", "--n", "7", "--seed", "98"]).stdout);
    assert!(text.starts_with("n 7 plain\n"));
    assert_eq!(text.lines().count(), 8);
    assert_eq!(run(&["solve", "--input", path_str(&out)]).code, 0);
}

#[test]
fn estimates_are_deterministic_across_worker_counts() {
    let base = ["stats", "solvable-prob", "--n", "15", "--samples", "3000", "--seed", "4", "--no-timing"];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let four = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let v = one.json();
    assert!(v.get("elapsed_ms").is_none() && v.get("workers").is_none());
    let timed = run(&base[..base.len() - 1]).json();
    assert!(timed.get("elapsed_ms").is_some());
    assert_eq!(timed["estimate"], v["estimate"]);
}

#[test]
fn csv_and_text_formats() {
    let csv = run(&["stats", "expected-length", "--n", "9", "--samples", "200", "--seed", "1", "--format", "csv"]);
    assert_eq!(csv.code, 0);
    let mut lines = csv.stdout.lines();
    assert_eq!(lines.next(), Some("length,count"));
    let total: u64 = lines.map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert!(total >= 200);
    let text = run(&["stats", "solvable-prob", "--n", "9", "--samples", "100", "--format", "text"]);
    assert!(text.stdout.starts_with("solvable-prob n=9 samples=100"));
}

#[test]
fn wilson_interval_flag() {
    let v = run(&["stats", "solvable-prob", "--n", "5", "--samples", "50", "--wilson"]).json();
    let lo = v["ci95"][0].as_f64().unwrap();
    assert!(lo > 0.0);
}

#[test]
fn bounds_are_exact_rationals() {
    let v = run(&["stats", "bounds", "--n", "101"]).json();
    let lb = v["solvable_probability_lower_bound"]["value"].as_f64().unwrap();
    assert!((lb - 0.3290).abs() < 5e-4, "{lb}");
    assert_eq!(v["expected_length_limit"]["exact"], "209/96");
    assert_eq!(v["length1_lower"]["exact"], "1/3");
    let printed = run(&["stats", "bounds", "--n", "101", "--variant", "printed"]).json();
    assert_eq!(printed["variant"], "printed");
    assert_ne!(printed["expected_length_upper"], v["expected_length_upper"]);
}

#[test]
fn constructions_print_their_length() {
    for (cmd, n, len) in [("spiral", "9", "17"), ("torus-spiral", "7", "13")] {
        let r = run(&["construct", cmd, "--n", n]);
        assert_eq!(r.code, 0);
        assert!(r.stderr.contains(&format!("length {len}")), "{cmd}: {}", r.stderr);
    }
    let max = run(&["construct", "extremal-max", "--n", "5"]);
    assert!(max.stderr.contains("edges 90"));
    let min = run(&["construct", "extremal-min", "--n", "5"]);
    assert!(min.stderr.contains("edges 10"));
}

#[test]
fn search_checkpoints_and_resumes() {
    let dir = TempDir::new().unwrap();
    let ck = dir.path().join("best.txt");
    let args = ["search", "long-board", "--n", "5", "--budget", "500", "--restarts", "2", "--seed", "3"];
    let r = run(&[&args[..], &["--checkpoint", path_str(&ck)]].concat());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = r.json();
    let best = report["best_length"].as_u64().unwrap();
    assert!(best >= 9, "spiral seed gives at least 9, got {best}");
    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("best.txt.json")).unwrap()).unwrap();
    assert_eq!(sidecar["length"].as_u64(), Some(best));
    assert_eq!(sidecar["seed"], 3);
    assert!(sidecar["iter"].as_u64().unwrap() > 0);
    let solved = run(&["solve", "--input", path_str(&ck)]).json();
    assert_eq!(solved["length"].as_u64(), Some(best));
    let resumed = run(&["search", "long-board", "--n", "5", "--budget", "50", "--restarts", "1", "--resume", path_str(&ck)]);
    assert!(resumed.json()["best_length"].as_u64().unwrap() >= best);
    assert_eq!(r.stdout, run(&args).stdout);
}

#[test]
fn graph_subcommands() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "n 3 plain\n222\n222\n222\n");
    let b = write(&dir, "b.txt", "n 3 plain\n220\n222\n222\n");
    let iso = run(&["graph", "iso", "--input", &a, "--other", &b]).json();
    assert_eq!(iso["isomorphic"], true);
    assert_eq!(iso["verified"], true);
    let dot = run(&["graph", "export-dot", "--input", &a]);
    assert!(dot.stdout.starts_with("digraph board {"));
    assert_eq!(dot.stdout.matches("->").count(), 9);
    let deg = run(&["graph", "degrees", "--input", &a]).json();
    assert_eq!(deg["edges"], 9);
    assert_eq!(deg["violations"], serde_json::json!([]));
    let totals = run(&["graph", "edge-totals", "--n", "3"]).json();
    assert_eq!((totals["min"].as_u64(), totals["max"].as_u64()), (Some(1), Some(17)));
    assert_eq!((totals["printed_min"].as_u64(), totals["printed_max"].as_u64()), (Some(2), Some(18)));
    let trivial = run(&["graph", "trivial-changes", "--input", &a]).json();
    let corner = &trivial["cells"][2]["classes"][0];
    assert!(corner.as_array().unwrap().contains(&Value::from("N")));
    let scan = run(&["graph", "symmetry-scan", "--n", "3", "--samples", "100", "--dihedral-only"]).json();
    assert_eq!(scan["candidates"], 8);
}

#[test]
fn iso_budget_exhaustion_is_an_error() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "n 5 plain\n00000\n00000\n00000\n00000\n00000\n");
    let r = run(&["graph", "iso", "--input", &a, "--other", &a, "--budget", "0"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
}

#[test]
fn f9_arithmetic_on_files() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.txt", "f9 3\n100\n010\n001\n");
    let m = write(&dir, "m.txt", "f9 3\n123\n456\n780\n");
    let prod = run(&["f9", "mul", "--input", &one, "--other", &m]);
    assert_eq!(prod.code, 0, "{}", prod.stderr);
    assert_eq!(prod.stdout, "f9 3\n123\n456\n780\n");
    let zero = write(&dir, "z.txt", "f9 3\n000\n000\n000\n");
    assert_eq!(run(&["f9", "add", "--input", &m, "--other", &zero]).stdout, prod.stdout);
    let plain = write(&dir, "p.txt", "n 3 plain\n333\n333\n333\n");
    let v = run(&["f9", "solve", "--input", &plain]).json();
    assert_eq!((v["length"].as_u64(), v["topology"].as_str()), (Some(1), Some("f9")));
    let bad = write(&dir, "bad.txt", "f9 3\n129\n456\n780\n");
    assert_eq!(run(&["f9", "solve", "--input", &bad]).code, 1);
}

#[test]
fn cube_commands() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.txt");
    assert_eq!(run(&["cube", "random", "--n", "3", "--seed", "5", "--output", path_str(&out)]).code, 0);
    let v = run(&["cube", "solve", "--input", path_str(&out)]).json();
    assert_eq!(v["topology"], "cube");
    let diag = "cube 3\nzzz\nzzz\nzzz\n\nzzz\nzzz\nzzz\n\nzzz\nzzz\nzzz\n";
    let d = write(&dir, "d.txt", diag);
    assert_eq!(run(&["cube", "solve", "--input", &d]).json()["length"], 1);
    let stats = run(&["cube", "stats", "--n", "3", "--samples", "500", "--no-timing"]).json();
    assert_eq!(stats["variant"], "cube");
}

#[test]
fn torus_bound_check_json() {
    let v = run(&["torus", "bound-check", "--n", "5", "--samples", "500", "--seed", "2"]).json();
    assert_eq!(v["variant"], "torus");
    assert_eq!(v["bound"], 20);
    assert_eq!(v["violations"], 0);
}

#[test]
fn census_json_matches_frozen_totals() {
    let v = run(&["census", "--n", "3", "--oracle-fraction", "0.001", "--no-timing"]).json();
    assert_eq!(v["histogram"]["1"], 16_777_216u64);
    assert_eq!(v["histogram"]["2"], 7_864_320u64);
    assert_eq!(v["max_length"], 7);
    assert_eq!(v["oracle_agrees"], true);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn binary_honours_the_worker_environment_variable() {
    let bin = env!("CARGO_BIN_EXE_windrose");
    let out = Command::new(bin)
        .args(["stats", "solvable-prob", "--n", "7", "--samples", "200"])
        .env("WINDROSE_WORKERS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["workers"], 3);
    let bad = Command::new(bin).args(["solve"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let missing = Command::new(bin)
        .args(["solve", "--input", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
