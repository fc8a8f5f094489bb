//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Randomized runs go through the command-line entry point twice, with
//! `--workers 1` and `--workers 4` and timing suppressed; criterion 10
//! collects whether every pair of outputs was byte-identical.

use std::process::ExitCode;
use std::time::Instant;

use serde_json::Value;

use windrose::extensions::cube::{random_cube_stream, solve_cube, CubeBoard, Direction3};
use windrose::extensions::f9::{gb_mul, random_generalized, GeneralizedBoard, F9};
use windrose::extensions::{solve_torus, torus_spiral};
use windrose::extremal::{extremal_degree_board, spiral_board, DegreeMode};
use windrose::graph::{build_graph, degree_report, extremal_edge_totals};
use windrose::oracle::{self, DenseGraph};
use windrose::par::map_range;
use windrose::solver::{reachability_closure, winning_lengths};
use windrose::symmetry::{is_isomorphic, reflect, transpose_map, verify_isomorphism, DEFAULT_ISO_BUDGET};
use windrose::{random_board_stream, solve, Board, Direction, Position};

const CENSUS_TIME_LIMIT_S: f64 = 600.0;
const CENSUS_ORACLE_FRACTION: f64 = 0.01;
const SOLVABLE_3: u64 = 26_769_200;
const UNSOLVABLE_3: u64 = 107_448_528;
const E3: f64 = 1.472590290333667;
const E3_TOL: f64 = 1e-12;
const ML3: u64 = 7;

const P_SAMPLES: &str = "100000";
const P_SIGMAS: f64 = 3.0;
const P3_SIGMAS: f64 = 4.0;
const P_LIMIT: f64 = 0.375;

const E_LIMIT: f64 = 209.0 / 96.0;
const E_SAMPLES: &str = "20000";
const E_TOL: f64 = 0.1;
const E_STRETCH_TOL: f64 = 0.03;
const CLASS_SIGMAS: f64 = 4.0;

const DEGREE_BOARDS: u64 = 10_000;
const TORUS_SAMPLES: &str = "10000";
const SCAN_SAMPLES: &str = "1000";
const ORACLE_BOARDS: u64 = 1000;
const ORACLE_CAP: usize = 30;
const CUBE_SAMPLES: &str = "10000";
const CUBE_SIGMAS: f64 = 3.0;

const SEED: &str = "20261015";

struct Suite {
    lines: Vec<(String, bool, String)>,
    determinism: Vec<(String, bool)>,
}

impl Suite {
    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id}: {detail}");
        self.lines.push((id.to_owned(), pass, detail));
    }

    /// Run the CLI with one and four workers; return the parsed output of
    /// the first run and note whether both outputs were identical.
    fn cli(&mut self, args: &[&str]) -> Value {
        let go = |workers: &str| {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let argv = ["windrose"]
                .iter()
                .chain(args)
                .chain(&["--no-timing", "--workers", workers])
                .copied()
                .collect::<Vec<_>>();
            let code = windrose_cli::run(argv, &mut out, &mut err);
            assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
            out
        };
        let (one, four) = (go("1"), go("4"));
        self.determinism.push((args.join(" "), one == four));
        serde_json::from_slice(&one).expect("json output")
    }
}

/// Run a deterministic, single-threaded command once.
fn cli_once(args: &[&str]) -> Value {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = windrose_cli::run(["windrose"].iter().chain(args), &mut out, &mut err);
    assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
    serde_json::from_slice(&out).expect("json output")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn u(v: &Value) -> u64 {
    v.as_u64().expect("integer")
}

fn census(s: &mut Suite) {
    let start = Instant::now();
    let fraction = CENSUS_ORACLE_FRACTION.to_string();
    let v = s.cli(&["census", "--n", "3", "--oracle-fraction", &fraction, "--seed", SEED]);
    let secs = start.elapsed().as_secs_f64() / 2.0;
    let h = &v["histogram"];
    let len1 = u(&h["1"]) == 8u64.pow(8);
    let len2 = u(&h["2"]) == 30 * 8u64.pow(6);
    let oracle = v["oracle_agrees"] == true
        && u(&v["oracle_checked"]) as f64 >= 0.99 * CENSUS_ORACLE_FRACTION * (1u64 << 27) as f64;
    let truth = u(&v["solvable"]) == SOLVABLE_3
        && u(&v["unsolvable"]) == UNSOLVABLE_3
        && (f(&v["mean_length"]) - E3).abs() <= E3_TOL
        && u(&v["max_length"]) == ML3;
    s.record(
        "1",
        len1 && len2 && oracle && truth && secs <= CENSUS_TIME_LIMIT_S,
        format!(
            "len1={} len2={} |Sol3|={} E3={} ML3={} oracle {}/{} mismatches, {:.1}s per run",
            h["1"], h["2"], v["solvable"], v["mean_length"], v["max_length"],
            v["oracle_mismatches"], v["oracle_checked"], secs
        ),
    );
}

fn solvable_probability(s: &mut Suite) {
    let closed = 0.125 * (1.0 + 2.0 * (1.0 - 0.875 * (63.0f64 / 64.0).powi(99)));
    let bounds = cli_once(&["stats", "bounds", "--n", "101"]);
    let lb = f(&bounds["solvable_probability_lower_bound"]["value"]);
    let v = s.cli(&["stats", "solvable-prob", "--n", "101", "--samples", P_SAMPLES, "--seed", SEED]);
    let (est, se) = (f(&v["estimate"]), f(&v["stderr"]));
    let in_envelope = est >= lb - P_SIGMAS * se && est <= P_LIMIT + P_SIGMAS * se;
    let small = s.cli(&["stats", "solvable-prob", "--n", "3", "--samples", P_SAMPLES, "--seed", SEED]);
    let truth3 = SOLVABLE_3 as f64 / (1u64 << 27) as f64;
    let z3 = (f(&small["estimate"]) - truth3) / f(&small["stderr"]);
    s.record(
        "2",
        in_envelope && (lb - closed).abs() < 1e-12 && z3.abs() <= P3_SIGMAS,
        format!(
            "n=101 p={est:.5} se={se:.5} envelope [{:.5}, {:.5}] (lb={lb:.5}); n=3 p={:.5} vs {truth3:.5}, z={z3:.2}",
            lb - P_SIGMAS * se,
            P_LIMIT + P_SIGMAS * se,
            f(&small["estimate"])
        ),
    );
}

/// Mean length and length-class frequencies against the class bounds.
fn expected_length(s: &mut Suite, id: &str, n: usize, tol: f64) {
    let n_str = n.to_string();
    let bounds = cli_once(&["stats", "bounds", "--n", &n_str]);
    let v = s.cli(&["stats", "expected-length", "--n", &n_str, "--samples", E_SAMPLES, "--seed", SEED]);
    let est = f(&v["estimate"]);
    let k = u(&v["solvable_samples"]) as f64;
    let count = |len: usize| u(&v["histogram"][len.to_string()]) as f64;
    let tail: f64 = v["histogram"]
        .as_object()
        .unwrap()
        .iter()
        .filter(|(l, _)| l.parse::<usize>().unwrap() >= 4)
        .fold(0.0, |acc, (_, c)| acc + u(c) as f64);
    let freq = [count(1) / k, count(2) / k, count(3) / k, tail / k];
    let sigma = |p: f64| (p * (1.0 - p) / k).sqrt();
    let bound = |key: &str| f(&bounds[key]["value"]);
    let classes = [
        freq[0] >= bound("length1_lower") - CLASS_SIGMAS * sigma(freq[0]),
        freq[1] >= bound("length2_lower") - CLASS_SIGMAS * sigma(freq[1]),
        freq[2] >= bound("length3_lower") - CLASS_SIGMAS * sigma(freq[2]),
        freq[3] <= bound("length4_plus_upper") + CLASS_SIGMAS * sigma(freq[3]),
    ];
    let close = (est - E_LIMIT).abs() <= tol;
    s.record(
        id,
        close && classes.iter().all(|&c| c),
        format!(
            "n={n} E={est:.4} se={:.4} |E-209/96|={:.4} (tol {tol}); class freqs {:.4}/{:.4}/{:.4}/{:.4} bounds ok {classes:?}",
            f(&v["stderr"]),
            (est - E_LIMIT).abs(),
            freq[0], freq[1], freq[2], freq[3]
        ),
    );
}

fn degrees(s: &mut Suite) {
    let sweep = |workers: usize| -> Vec<(usize, u64)> {
        (3..=21)
            .step_by(2)
            .map(|n| {
                let half = (n - 1) / 2;
                let bad: u64 = map_range(workers, 0..DEGREE_BOARDS, |stream| {
                    let board = random_board_stream(n, 4, stream).unwrap();
                    let r = degree_report(&board);
                    let mut bad = r.violations.len() as u64;
                    let center = board.center_index();
                    bad += (r.out_degree[center] != half) as u64;
                    bad += !(r.out_degree[0] == 0 || r.out_degree[0] == n - 1) as u64;
                    for v in 0..n * n {
                        let p = board.position(v);
                        let d = p.i.abs_diff(half + 1).max(p.j.abs_diff(half + 1));
                        let out = r.out_degree[v];
                        bad += (out + d < half || out > half + d) as u64;
                        bad += (r.in_degree[v] > 4 * (n - 1)) as u64;
                    }
                    bad
                })
                .into_iter()
                .sum();
                (n, bad)
            })
            .collect()
    };
    let one = sweep(1);
    s.determinism.push(("degree sweep".into(), one == sweep(4)));
    let violations: u64 = one.iter().map(|x| x.1).sum();
    let mut totals = Vec::new();
    let mut totals_ok = true;
    for n in [3u64, 5, 7, 9] {
        let t = extremal_edge_totals(n as usize).unwrap();
        let max = (n - 1) / 2 + (n * n - 1) * (5 * n - 3) / 6;
        let min = (n - 1) / 2 + (n * n - 1) * (n - 3) / 6;
        let counted = |mode| build_graph(&extremal_degree_board(n as usize, mode).unwrap()).edge_count() as u64;
        totals_ok &= counted(DegreeMode::Max) == max && counted(DegreeMode::Min) == min;
        totals_ok &= t.max == max && t.min == min && t.counted_matches_closed_form();
        totals_ok &= t.printed_max - t.max == (n - 1) / 2 && t.printed_min - t.min == (n - 1) / 2;
        totals.push(format!("n={n} {}/{} (printed {}/{})", t.max, t.min, t.printed_max, t.printed_min));
    }
    s.record(
        "4",
        violations == 0 && totals_ok,
        format!("{violations} degree violations over 10 sizes x {DEGREE_BOARDS} boards; edge totals {}", totals.join(", ")),
    );
}

fn spirals(s: &mut Suite) {
    let plain_bad: Vec<usize> = (5..=31)
        .step_by(2)
        .filter(|&n| spiral_board(n).map(|b| solve(&b).length) .ok() != Some(Some(2 * n - 1)))
        .collect();
    let torus_bad: Vec<usize> = (3..=31)
        .step_by(2)
        .filter(|&n| torus_spiral(n).map(|t| solve_torus(&t).length).ok() != Some(Some(2 * n - 1)))
        .collect();
    let n5 = solve(&spiral_board(5).unwrap()).length;
    s.record(
        "5",
        plain_bad.is_empty() && torus_bad.is_empty() && n5 == Some(9),
        format!("plain n=5..31 failures {plain_bad:?}, torus n=3..31 failures {torus_bad:?}, n=5 length {n5:?}"),
    );
}

fn torus_bound(s: &mut Suite) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [5u64, 15, 25] {
        let v = s.cli(&["torus", "bound-check", "--n", &n.to_string(), "--samples", TORUS_SAMPLES, "--seed", SEED]);
        let max = v["max_length"].as_u64().unwrap_or(0);
        ok &= u(&v["violations"]) == 0 && u(&v["line_revisits"]) == 0 && max <= 4 * n;
        parts.push(format!(
            "n={n} solvable {} max {max} <= {} violations {} revisits {}",
            v["solvable"], 4 * n, v["violations"], v["line_revisits"]
        ));
    }
    s.record("6", ok, parts.join("; "));
}

fn isomorphism(s: &mut Suite) {
    let small_ok = (0..1000).all(|k| {
        let a = random_board_stream(3, 7, k).unwrap();
        let r = reflect(&a);
        // (i, j) -> (j, i) must carry every edge of A onto an edge of R(A).
        verify_isomorphism(&a, &r, &transpose_map(3))
    });
    let lengths_ok = (0..10_000).all(|k| {
        let a = random_board_stream(5, 8, k).unwrap();
        solve(&a).length == solve(&reflect(&a)).length
    });
    let right = Board::filled(3, Direction::E).unwrap();
    let up = right.with_cell(Position::new(1, 3), Direction::N).unwrap();
    let edges = |b: &Board| build_graph(b).edges().collect::<Vec<_>>();
    let pair_ok = edges(&right) == edges(&up)
        && is_isomorphic(&right, &up, DEFAULT_ISO_BUDGET).unwrap().holds();
    let scan = s.cli(&["graph", "symmetry-scan", "--n", "3", "--samples", SCAN_SAMPLES, "--seed", SEED]);
    let survivors: Vec<&str> = scan["survivors"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    s.record(
        "7",
        small_ok && lengths_ok && pair_ok && survivors == ["Id", "R"],
        format!(
            "transpose witness on 1000 n=3 boards {small_ok}, lengths on 10000 n=5 boards {lengths_ok}, trivial pair {pair_ok}, scan of {} candidates leaves {survivors:?} (evidence only)",
            scan["candidates"]
        ),
    );
}

fn schoolbook(p: F9, q: F9) -> F9 {
    let (a, b, c, d) = (p.a() as i32, p.b() as i32, q.a() as i32, q.b() as i32);
    F9::new((a * c - b * d).rem_euclid(3) as u8, (a * d + b * c).rem_euclid(3) as u8)
}

fn oracles(s: &mut Suite) {
    let mut reach_bad = 0;
    let mut lengths_bad = 0;
    for k in 0..ORACLE_BOARDS {
        let board = random_board_stream(5, 9, k).unwrap();
        let dense = DenseGraph::from_board(&board);
        let closure = oracle::warshall_closure(&dense);
        let fast = reachability_closure(&board);
        let solved = solve(&board);
        let agree = (0..25).all(|a| (0..25).all(|b| fast.get(a, b) == closure[a][b]))
            && solved.solvable == closure[0][board.center_index()]
            && solved.length == oracle::shortest_length(&dense);
        reach_bad += !agree as u32;
        let ours: Vec<usize> = winning_lengths(&board, ORACLE_CAP).into_iter().collect();
        lengths_bad += (ours != oracle::winning_lengths(&dense, ORACLE_CAP)) as u32;
    }
    let mut mul_bad = 0;
    for k in 0..ORACLE_BOARDS {
        let a = random_generalized(5, 10, 2 * k).unwrap();
        let b = random_generalized(5, 10, 2 * k + 1).unwrap();
        let prod = gb_mul(&a, &b).unwrap();
        let want: Vec<F9> = (0..25)
            .map(|c| (0..5).fold(F9::ZERO, |acc, m| acc + schoolbook(a.get(c / 5, m), b.get(m, c % 5))))
            .collect();
        mul_bad += (prod != GeneralizedBoard::new(5, want).unwrap()) as u32;
    }
    s.record(
        "8",
        reach_bad == 0 && lengths_bad == 0 && mul_bad == 0,
        format!(
            "BFS vs Warshall mismatches {reach_bad}/{ORACLE_BOARDS}, winning lengths (cap {ORACLE_CAP}) mismatches {lengths_bad}/{ORACLE_BOARDS}, F9 products mismatches {mul_bad}/{ORACLE_BOARDS}"
        ),
    );
}

fn cube(s: &mut Suite) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 5, 9] {
        let v = s.cli(&["cube", "stats", "--n", &n.to_string(), "--samples", CUBE_SAMPLES, "--seed", SEED]);
        let (est, se) = (f(&v["estimate"]), f(&v["stderr"]));
        let cap = 7.0 / 26.0 + CUBE_SIGMAS * se;
        ok &= est <= cap;
        parts.push(format!("n={n} p={est:.4} <= {cap:.4}"));
    }
    // Length one exactly when the corner points along the inward diagonal.
    let diagonal = Direction3::from_delta(1, 1, 1).unwrap();
    let mut criterion_ok = true;
    for k in 0..2600u64 {
        let base = random_cube_stream(5, 11, k).unwrap();
        let corner = Direction3::from_code((k % 26) as u8).unwrap();
        let cb: CubeBoard = base.with_cell(base.position(0), corner).unwrap();
        criterion_ok &= (solve_cube(&cb).length == Some(1)) == (corner == diagonal);
    }
    s.record("9", ok && criterion_ok, format!("{}; length-1 criterion exact on 2600 boards {criterion_ok}", parts.join(", ")));
}

fn main() -> ExitCode {
    let mut s = Suite {
        lines: Vec::new(),
        determinism: Vec::new(),
    };
    let start = Instant::now();
    census(&mut s);
    solvable_probability(&mut s);
    expected_length(&mut s, "3", 201, E_TOL);
    expected_length(&mut s, "3 (stretch)", 501, E_STRETCH_TOL);
    degrees(&mut s);
    spirals(&mut s);
    torus_bound(&mut s);
    isomorphism(&mut s);
    oracles(&mut s);
    cube(&mut s);
    let differing: Vec<&str> = s.determinism.iter().filter(|d| !d.1).map(|d| d.0.as_str()).collect();
    s.record(
        "10",
        differing.is_empty(),
        format!("{} randomized runs repeated with 1 and 4 workers, differing: {differing:?}", s.determinism.len()),
    );
    let failed = s.lines.iter().filter(|l| !l.1).count();
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        s.lines.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
