//! Command-line driver for the `windrose` library.
//!
//! [`run`] parses arguments, dispatches to the library and writes results
//! to the given streams, returning the process exit code: 0 on success,
//! 1 on domain errors (bad boards, invalid games, failed constructions),
//! 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use windrose::board::{parse_board, random_board, Board, Position, Topology};
use windrose::extensions::cube::{
    corner_direction_counts, estimate_cube_stats, random_cube, solve_cube, CubeBoard,
};
use windrose::extensions::f9::{gb_add, gb_mul, solve_generalized, GeneralizedBoard};
use windrose::extensions::torus::{line_trace, solve_torus, torus_bound_check, torus_spiral, TorusBoard};
use windrose::extremal::{
    extremal_degree_board, long_board_search, spiral_board, DegreeMode, SearchCheckpoint,
    SearchConfig,
};
use windrose::graph::{build_graph, degree_report, export_dot, extremal_edge_totals, in_degree_constraint_check};
use windrose::solver::{solve, winning_lengths};
use windrose::stats::bounds::{limit_expected_length, to_f64};
use windrose::stats::{
    count_short_boards, estimate_expected_length, estimate_solvable_probability,
    expected_length_bracket, exact_census, length_class_bounds, solvable_probability_lower_bound,
    BoundVariant, CensusOptions, EstimateOptions, EstimateReport,
};
use windrose::symmetry::{
    dihedral_candidates, is_isomorphic, scan_family, symmetry_scan, transpose_map,
    trivial_change_classes, verify_isomorphism, Isomorphism,
};

#[derive(Debug, Parser)]
#[command(name = "windrose", version, about = "Arrow boards: solve, count, sample and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct Out {
    /// Write the result to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format (defaults depend on the command)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct Parallel {
    /// Worker threads; 0 uses every core
    #[arg(long, env = "WINDROSE_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Omit timing and worker count from reports
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a board read from a file
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Also list every winning game length up to this cap
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Check a move sequence such as "1,1 2,2 3,3" against a board
    ValidateGame {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        moves: String,
        #[command(flatten)]
        out: Out,
    },
    /// Generate a uniform random board
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate every board of size 3
    Census {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Seed of the oracle subsample
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fraction of boards re-solved by the matrix oracle
        #[arg(long, default_value_t = 0.01)]
        oracle_fraction: f64,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
    /// Monte Carlo estimates and closed-form bounds
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Build special boards
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Search for long boards
    #[command(subcommand)]
    Search(SearchCommand),
    /// Board graphs, degrees and symmetries
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Boards with wrap-around moves
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Boards over the field with nine elements
    #[command(subcommand)]
    F9(F9Command),
    /// Three-dimensional boards
    #[command(subcommand)]
    Cube(CubeCommand),
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// Probability that a uniform board is solvable
    SolvableProb {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the Wilson score interval
        #[arg(long)]
        wilson: bool,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
    /// Mean length of uniform solvable boards
    ExpectedLength {
        #[arg(long)]
        n: usize,
        /// Number of solvable boards to collect
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
    /// Exact closed-form bounds for size n
    Bounds {
        #[arg(long)]
        n: usize,
        /// Constant used in the upper expected-length chain
        #[arg(long, value_enum, default_value_t = VariantArg::Consistent)]
        variant: VariantArg,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Consistent,
    Printed,
}

#[derive(Debug, Subcommand)]
enum ConstructCommand {
    /// Board of length 2n-1 following the rectangular spiral
    Spiral(SizeOut),
    /// Every cell aimed at its longest ray
    ExtremalMax(SizeOut),
    /// Every cell aimed at its shortest ray
    ExtremalMin(SizeOut),
    /// Torus board of length 2n-1
    TorusSpiral(SizeOut),
}

#[derive(Debug, Args)]
struct SizeOut {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Subcommand)]
enum SearchCommand {
    /// Simulated annealing on BFS length
    LongBoard {
        #[arg(long)]
        n: usize,
        /// Annealing steps per restart
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start the first restart from this board
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Start the first restart from a random board instead of the spiral
        #[arg(long)]
        no_spiral: bool,
        /// Write the best board here and a JSON sidecar next to it
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Graphviz rendering of the board graph
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Degrees, distances and the degree inequalities
    Degrees {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Smallest and largest edge totals for size n
    EdgeTotals {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Rooted isomorphism between two boards
    Iso {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Maximum backtracking nodes
        #[arg(long, default_value_t = windrose::symmetry::DEFAULT_ISO_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Falsification scan for board symmetries
    SymmetryScan {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only the eight square symmetries
        #[arg(long)]
        dihedral_only: bool,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
    /// Directions per cell that give identical targets
    TrivialChanges {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
enum TorusCommand {
    /// Solve a torus board
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Check sampled torus lengths against 4n
    BoundCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
enum F9Command {
    /// Entrywise sum of two boards
    Add(TwoInputs),
    /// Matrix product of two boards
    Mul(TwoInputs),
    /// Solve a generalized board
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Args)]
struct TwoInputs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    other: PathBuf,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Subcommand)]
enum CubeCommand {
    /// Uniform random cube board
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Solve a cube board
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Probability that a uniform cube board is solvable
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        par: Parallel,
        #[command(flatten)]
        out: Out,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<windrose::Error> for Failure {
    fn from(e: windrose::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: &Out, text: &str) -> Outcome {
        match &out.output {
            Some(path) => write_file(path, text),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Domain(format!("writing stdout: {e}"))),
        }
    }

    fn note(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "{text}");
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("reading {}: {e}", path.display())))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn read_board(path: &Path) -> Result<(Topology, Board), Failure> {
    Ok(parse_board(&read(path)?)?)
}

fn read_generalized(path: &Path) -> Result<GeneralizedBoard, Failure> {
    let text = read(path)?;
    if text.starts_with("f9 ") {
        Ok(GeneralizedBoard::parse(&text)?)
    } else {
        Ok(GeneralizedBoard::from_board(&parse_board(&text)?.1))
    }
}

fn parse_moves(s: &str) -> Result<Vec<Position>, Failure> {
    s.split_whitespace()
        .map(|tok| {
            let (i, j) = tok
                .trim_matches(|c| c == '(' || c == ')')
                .split_once(',')
                .ok_or_else(|| Failure::Usage(format!("bad move {tok:?}; expected i,j")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad move {tok:?}; expected i,j")))
            };
            Ok(Position::new(num(i)?, num(j)?))
        })
        .collect()
}

fn report_out(io: &mut Io, out: &Out, report: EstimateReport, par: &Parallel) -> Outcome {
    let report = if par.no_timing {
        report.without_timing()
    } else {
        report
    };
    match out.format.unwrap_or(Format::Json) {
        Format::Csv => io.emit(out, &report.histogram_csv()),
        Format::Json => io.emit(out, &json_line(&to_value(&report))),
        Format::Text => io.emit(
            out,
            &format!(
                "{} n={} samples={} solvable={} estimate={} stderr={} ci95=[{}, {}] seed={}\n",
                report.op,
                report.n,
                report.samples,
                report.solvable_samples,
                report.estimate,
                report.stderr,
                report.ci95[0],
                report.ci95[1],
                report.seed
            ),
        ),
    }
}

fn solve_value<P: serde::Serialize>(res: &windrose::SolveResult<P>, topology: &str) -> Value {
    let mut v = to_value(res);
    v["topology"] = json!(topology);
    v
}

fn dispatch(cli: Cli, io: &mut Io) -> Outcome {
    match cli.command {
        Command::Solve { input, cap, out } => {
            let (topology, board) = read_board(&input)?;
            let mut v = match topology {
                Topology::Plain => solve_value(&solve(&board), "plain"),
                Topology::Torus => solve_value(&solve_torus(&TorusBoard::new(board.clone())), "torus"),
            };
            if let Some(cap) = cap {
                let lengths = match topology {
                    Topology::Plain => winning_lengths(&board, cap),
                    Topology::Torus => winning_lengths(&TorusBoard::new(board), cap),
                };
                v["winning_lengths"] = json!(lengths);
            }
            io.emit(&out, &json_line(&v))
        }
        Command::ValidateGame { input, moves, out } => {
            let (topology, board) = read_board(&input)?;
            let moves = parse_moves(&moves)?;
            let game = match topology {
                Topology::Plain => board.validate_game(&moves)?,
                Topology::Torus => TorusBoard::new(board).validate_game(&moves)?,
            };
            let mut v = to_value(&game);
            v["turns"] = json!(game.turns());
            io.emit(&out, &json_line(&v))
        }
        Command::Random { n, seed, out } => {
            let board = random_board(n, seed)?;
            io.note(&format!("seed {seed}"));
            io.emit(&out, &board.to_text())
        }
        Command::Census {
            n,
            seed,
            oracle_fraction,
            par,
            out,
        } => {
            if !(0.0..=1.0).contains(&oracle_fraction) {
                return Err(Failure::Usage("--oracle-fraction must lie in [0, 1]".into()));
            }
            let report = exact_census(
                n,
                &CensusOptions {
                    workers: par.workers,
                    oracle_fraction,
                    oracle_seed: seed,
                },
            )?;
            let d = &report.distribution;
            if out.format == Some(Format::Csv) {
                return io.emit(&out, &d.to_csv());
            }
            let mut v = json!({
                "op": "census",
                "n": n,
                "total": d.total,
                "solvable": d.solvable(),
                "unsolvable": d.unsolvable,
                "histogram": d.counts,
                "mean_length": d.mean_length(),
                "max_length": report.max_length,
                "max_witness": report.witness_board().to_text(),
                "oracle_checked": report.oracle_checked,
                "oracle_mismatches": report.oracle_mismatches,
                "oracle_agrees": report.oracle_agrees(),
                "seed": seed,
            });
            if !par.no_timing {
                v["workers"] = json!(windrose::par::effective_workers(par.workers));
                v["elapsed_ms"] = json!(report.elapsed_ms);
            }
            io.emit(&out, &json_line(&v))
        }
        Command::Stats(cmd) => stats(cmd, io),
        Command::Construct(cmd) => construct(cmd, io),
        Command::Search(SearchCommand::LongBoard {
            n,
            budget,
            restarts,
            seed,
            resume,
            no_spiral,
            checkpoint,
            par,
            out,
        }) => {
            let resume = match resume {
                Some(path) => Some(read_board(&path)?.1),
                None => None,
            };
            let cfg = SearchConfig {
                iterations: budget,
                restarts,
                seed,
                workers: par.workers,
                seed_with_spiral: !no_spiral,
                resume,
                ..Default::default()
            };
            let report = long_board_search(n, &cfg)?;
            if let Some(path) = checkpoint {
                let (text, side): (String, SearchCheckpoint) = report.checkpoint();
                write_file(&path, &text)?;
                let mut sidecar = path.clone().into_os_string();
                sidecar.push(".json");
                write_file(Path::new(&sidecar), &json_line(&to_value(&side)))?;
            }
            match out.format {
                Some(Format::Text) => io.emit(&out, &report.best_board.to_text()),
                _ => io.emit(&out, &json_line(&to_value(&report))),
            }
        }
        Command::Graph(cmd) => graph(cmd, io),
        Command::Torus(cmd) => torus(cmd, io),
        Command::F9(cmd) => f9(cmd, io),
        Command::Cube(cmd) => cube(cmd, io),
    }
}

fn stats(cmd: StatsCommand, io: &mut Io) -> Outcome {
    match cmd {
        StatsCommand::SolvableProb {
            n,
            samples,
            seed,
            wilson,
            par,
            out,
        } => {
            let opts = EstimateOptions {
                workers: par.workers,
                wilson,
            };
            let report = estimate_solvable_probability(n, samples, seed, &opts)?;
            report_out(io, &out, report, &par)
        }
        StatsCommand::ExpectedLength {
            n,
            samples,
            seed,
            par,
            out,
        } => {
            let opts = EstimateOptions {
                workers: par.workers,
                wilson: false,
            };
            let (report, _) = estimate_expected_length(n, samples, seed, &opts)?;
            report_out(io, &out, report, &par)
        }
        StatsCommand::Bounds { n, variant, out } => {
            let variant = match variant {
                VariantArg::Consistent => BoundVariant::Consistent,
                VariantArg::Printed => BoundVariant::Printed,
            };
            macro_rules! exact {
                ($r:expr) => {
                    json!({"exact": $r.to_string(), "value": to_f64(&$r)})
                };
            }
            let lower = solvable_probability_lower_bound(n)?;
            let classes = length_class_bounds(n)?;
            let bracket = expected_length_bracket(n, variant)?;
            let mut v = json!({
                "op": "bounds",
                "n": n,
                "solvable_probability_lower_bound": exact!(lower),
                "solvable_probability_limit": 0.375,
                "length1_lower": exact!(classes.len1_lower),
                "length2_lower": exact!(classes.len2_lower),
                "length3_lower": exact!(classes.len3_lower),
                "length4_plus_upper": exact!(classes.tail_upper),
                "expected_length_lower": exact!(bracket.lower),
                "expected_length_upper": exact!(bracket.upper),
                "upper_is_informative": bracket.upper_is_informative(n),
                "variant": to_value(&variant),
                "expected_length_limit": exact!(limit_expected_length()),
            });
            if n * n <= 10_000 {
                v["boards_of_length1"] = json!(count_short_boards(n, 1)?.to_string());
                v["boards_of_length2"] = json!(count_short_boards(n, 2)?.to_string());
            }
            io.emit(&out, &json_line(&v))
        }
    }
}

fn construct(cmd: ConstructCommand, io: &mut Io) -> Outcome {
    let (text, length, out) = match cmd {
        ConstructCommand::Spiral(a) => {
            let b = spiral_board(a.n)?;
            (b.to_text(), solve(&b).length, a.out)
        }
        ConstructCommand::ExtremalMax(a) => {
            let b = extremal_degree_board(a.n, DegreeMode::Max)?;
            io.note(&format!("edges {}", build_graph(&b).edge_count()));
            (b.to_text(), solve(&b).length, a.out)
        }
        ConstructCommand::ExtremalMin(a) => {
            let b = extremal_degree_board(a.n, DegreeMode::Min)?;
            io.note(&format!("edges {}", build_graph(&b).edge_count()));
            (b.to_text(), solve(&b).length, a.out)
        }
        ConstructCommand::TorusSpiral(a) => {
            let tb = torus_spiral(a.n)?;
            (tb.to_text(), solve_torus(&tb).length, a.out)
        }
    };
    match length {
        Some(l) => io.note(&format!("length {l}")),
        None => io.note("unsolvable"),
    }
    io.emit(&out, &text)
}

fn graph(cmd: GraphCommand, io: &mut Io) -> Outcome {
    match cmd {
        GraphCommand::ExportDot { input, out } => {
            let (_, board) = read_board(&input)?;
            io.emit(&out, &export_dot(&build_graph(&board)))
        }
        GraphCommand::Degrees { input, out } => {
            let (_, board) = read_board(&input)?;
            let report = degree_report(&board);
            let in_check = in_degree_constraint_check(&board);
            let mut v = to_value(&report);
            v["in_degree_check"] = to_value(&in_check);
            io.emit(&out, &json_line(&v))
        }
        GraphCommand::EdgeTotals { n, out } => {
            io.emit(&out, &json_line(&to_value(&extremal_edge_totals(n)?)))
        }
        GraphCommand::Iso {
            input,
            other,
            budget,
            out,
        } => {
            let (_, a) = read_board(&input)?;
            let (_, b) = read_board(&other)?;
            let v = match is_isomorphic(&a, &b, budget)? {
                Isomorphism::Isomorphic(map) => {
                    let pairs: Vec<_> = map
                        .iter()
                        .enumerate()
                        .map(|(u, &v)| json!([a.position(u), b.position(v)]))
                        .collect();
                    json!({
                        "isomorphic": true,
                        "verified": verify_isomorphism(&a, &b, &map),
                        "transpose_is_witness": verify_isomorphism(&a, &b, &transpose_map(a.n())),
                        "witness": pairs,
                    })
                }
                Isomorphism::NotIsomorphic => json!({"isomorphic": false}),
            };
            io.emit(&out, &json_line(&v))
        }
        GraphCommand::SymmetryScan {
            n,
            samples,
            seed,
            dihedral_only,
            par,
            out,
        } => {
            let family = if dihedral_only {
                dihedral_candidates(n)
            } else {
                scan_family(n)
            };
            let report = symmetry_scan(n, &family, samples, seed, par.workers)?;
            io.emit(&out, &json_line(&to_value(&report)))
        }
        GraphCommand::TrivialChanges { input, out } => {
            let (_, board) = read_board(&input)?;
            let classes = trivial_change_classes(&board);
            let cells: Vec<Value> = classes
                .iter()
                .enumerate()
                .map(|(k, cls)| {
                    let names: Vec<Vec<&str>> = cls
                        .iter()
                        .map(|c| c.iter().map(|d| d.name()).collect())
                        .collect();
                    json!({"position": board.position(k), "classes": names})
                })
                .collect();
            io.emit(&out, &json_line(&json!({ "n": board.n(), "cells": cells })))
        }
    }
}

fn torus(cmd: TorusCommand, io: &mut Io) -> Outcome {
    match cmd {
        TorusCommand::Solve { input, out } => {
            let (_, board) = read_board(&input)?;
            let tb = TorusBoard::new(board);
            let res = solve_torus(&tb);
            let mut v = solve_value(&res, "torus");
            if let Some(w) = &res.witness {
                v["line_trace"] = to_value(&line_trace(&tb, w)?);
            }
            io.emit(&out, &json_line(&v))
        }
        TorusCommand::BoundCheck {
            n,
            samples,
            seed,
            par,
            out,
        } => {
            let report = torus_bound_check(n, samples, seed, par.workers)?;
            io.emit(&out, &json_line(&to_value(&report)))
        }
    }
}

fn f9(cmd: F9Command, io: &mut Io) -> Outcome {
    match cmd {
        F9Command::Add(t) => {
            let (a, b) = (read_generalized(&t.input)?, read_generalized(&t.other)?);
            io.emit(&t.out, &gb_add(&a, &b)?.to_text())
        }
        F9Command::Mul(t) => {
            let (a, b) = (read_generalized(&t.input)?, read_generalized(&t.other)?);
            io.emit(&t.out, &gb_mul(&a, &b)?.to_text())
        }
        F9Command::Solve { input, out } => {
            let g = read_generalized(&input)?;
            io.emit(&out, &json_line(&solve_value(&solve_generalized(&g), "f9")))
        }
    }
}

fn cube(cmd: CubeCommand, io: &mut Io) -> Outcome {
    match cmd {
        CubeCommand::Random { n, seed, out } => {
            let cb = random_cube(n, seed)?;
            io.note(&format!("seed {seed}"));
            io.emit(&out, &cb.to_text())
        }
        CubeCommand::Solve { input, out } => {
            let cb = CubeBoard::parse(&read(&input)?)?;
            io.emit(&out, &json_line(&solve_value(&solve_cube(&cb), "cube")))
        }
        CubeCommand::Stats {
            n,
            samples,
            seed,
            par,
            out,
        } => {
            let report = estimate_cube_stats(n, samples, seed, par.workers)?;
            let (open, _) = corner_direction_counts(n)?;
            io.note(&format!("corner bound {open}/26"));
            report_out(io, &out, report, &par)
        }
    }
}

/// Run the command line `argv` (including the program name).
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    match dispatch(cli, &mut io) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            1
        }
    }
}
