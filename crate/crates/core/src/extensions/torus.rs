//! Boards on a torus: rows, columns and both diagonals wrap around, so every
//! arrow points at the whole line through its cell.

use serde::Serialize;

use crate::board::{parse_board, serialize_grid, Board, Game, Outcome, Position, Topology};
use crate::direction::Direction;
use crate::error::{check_size, Error, Result};
use crate::extremal::{repair, spiral_waypoints};
use crate::par;
use crate::solver::{shortest_path, MoveGraph, SolveResult};
use crate::stats::{normal_interval, proportion, EstimateReport, LengthDistribution};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusBoard(Board);

impl TorusBoard {
    pub fn new(board: Board) -> Self {
        TorusBoard(board)
    }

    pub fn board(&self) -> &Board {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn targets(&self, pos: Position) -> Result<Vec<Position>> {
        self.0.get(pos)?;
        let n = self.n();
        let from = self.0.index(pos);
        Ok(torus_targets(n, from, self.0.at(from))
            .map(|k| self.0.position(k))
            .collect())
    }

    pub fn to_text(&self) -> String {
        serialize_grid(&self.0, Topology::Torus)
    }

    pub fn parse(text: &str) -> Result<TorusBoard> {
        match parse_board(text)? {
            (Topology::Torus, b) => Ok(TorusBoard(b)),
            (Topology::Plain, _) => Err(Error::Parse {
                line: 1,
                column: 1,
                message: "expected a torus board".into(),
            }),
        }
    }

    /// Validate a game under wrap-around moves. Every torus cell has
    /// targets, so games end only at the center.
    pub fn validate_game(&self, moves: &[Position]) -> Result<Game> {
        let b = &self.0;
        if moves.first() != Some(&b.start()) {
            return Err(Error::InvalidGame {
                index: 0,
                message: "games start at (1,1)".into(),
            });
        }
        if let Some(k) = moves.iter().position(|p| !b.contains(*p)) {
            return Err(Error::InvalidGame {
                index: k,
                message: format!("{} is off the board", moves[k]),
            });
        }
        for (k, w) in moves.windows(2).enumerate() {
            if w[0] == b.center() {
                return Err(Error::InvalidGame {
                    index: k + 1,
                    message: "the game already ended at the center".into(),
                });
            }
            if !self.targets(w[0])?.contains(&w[1]) {
                return Err(Error::InvalidGame {
                    index: k + 1,
                    message: format!("{} does not direct to {}", w[0], w[1]),
                });
            }
        }
        let outcome = if moves.last() == Some(&b.center()) {
            Outcome::Won
        } else {
            Outcome::InProgress
        };
        Ok(Game {
            moves: moves.to_vec(),
            outcome,
        })
    }
}

/// Flat indices `pos + t * delta (mod n)` for `t = 1..n-1`.
pub fn torus_targets(n: usize, from: usize, dir: Direction) -> impl Iterator<Item = usize> {
    let (di, dj) = dir.delta();
    let (i, j) = ((from / n) as i64, (from % n) as i64);
    let m = n as i64;
    (1..m).map(move |t| {
        let a = (i + t * di as i64).rem_euclid(m);
        let b = (j + t * dj as i64).rem_euclid(m);
        (a * m + b) as usize
    })
}

impl MoveGraph for TorusBoard {
    fn vertex_count(&self) -> usize {
        self.n() * self.n()
    }

    fn start_vertex(&self) -> usize {
        0
    }

    fn goal_vertex(&self) -> usize {
        self.0.center_index()
    }

    fn push_targets(&self, v: usize, out: &mut Vec<usize>) {
        out.extend(torus_targets(self.n(), v, self.0.at(v)));
    }
}

pub fn solve_torus(tb: &TorusBoard) -> SolveResult<Position> {
    shortest_path(tb).map_witness(|k| tb.0.position(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineKind {
    Row,
    Column,
    Diagonal,
    Antidiagonal,
}

/// A full wrapped line. Rows and columns are indexed by their 0-based
/// coordinate; diagonals by `(j - i) mod n` and antidiagonals by
/// `(i + j) mod n`, with 0-based `i, j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Line {
    pub kind: LineKind,
    pub index: usize,
}

impl Line {
    /// The line through flat index `cell` along `dir`.
    pub fn through(n: usize, cell: usize, dir: Direction) -> Line {
        let (i, j) = (cell / n, cell % n);
        let (kind, index) = match dir {
            Direction::E | Direction::W => (LineKind::Row, i),
            Direction::N | Direction::S => (LineKind::Column, j),
            Direction::SE | Direction::NW => (LineKind::Diagonal, (j + n - i) % n),
            Direction::NE | Direction::SW => (LineKind::Antidiagonal, (i + j) % n),
        };
        Line { kind, index }
    }

    pub fn contains(&self, n: usize, cell: usize) -> bool {
        let (i, j) = (cell / n, cell % n);
        match self.kind {
            LineKind::Row => i == self.index,
            LineKind::Column => j == self.index,
            LineKind::Diagonal => (j + n - i) % n == self.index,
            LineKind::Antidiagonal => (i + j) % n == self.index,
        }
    }

    pub fn members(&self, n: usize) -> Vec<Position> {
        (0..n * n)
            .filter(|&k| self.contains(n, k))
            .map(|k| Position::new(k / n + 1, k % n + 1))
            .collect()
    }
}

pub fn all_lines(n: usize) -> Vec<Line> {
    [
        LineKind::Row,
        LineKind::Column,
        LineKind::Diagonal,
        LineKind::Antidiagonal,
    ]
    .into_iter()
    .flat_map(|kind| (0..n).map(move |index| Line { kind, index }))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineRevisit {
    /// Index of the move whose line is revisited.
    pub step: usize,
    /// Index of a later position lying on that line.
    pub later: usize,
    pub line: Line,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineTrace {
    /// The line used by each move, in order.
    pub lines: Vec<Line>,
    pub distinct_lines: usize,
    /// Positions that could have been reached earlier in one move. Any
    /// entry proves the game is not a shortest one.
    pub revisits: Vec<LineRevisit>,
}

/// For each move of a torus game, the line it travels along, and every
/// later position (two or more moves on) that already lay on that line.
pub fn line_trace(tb: &TorusBoard, moves: &[Position]) -> Result<LineTrace> {
    tb.validate_game(moves)?;
    let n = tb.n();
    let idx: Vec<usize> = moves.iter().map(|&p| tb.0.index(p)).collect();
    let lines: Vec<Line> = idx[..idx.len().saturating_sub(1)]
        .iter()
        .map(|&k| Line::through(n, k, tb.0.at(k)))
        .collect();
    let mut revisits = Vec::new();
    for (step, line) in lines.iter().enumerate() {
        for later in step + 2..idx.len() {
            if line.contains(n, idx[later]) {
                revisits.push(LineRevisit {
                    step,
                    later,
                    line: *line,
                });
            }
        }
    }
    let mut distinct = lines.clone();
    distinct.sort();
    distinct.dedup();
    Ok(LineTrace {
        distinct_lines: distinct.len(),
        lines,
        revisits,
    })
}

/// A torus board of length exactly `2n - 1` following the spiral
/// waypoints. Each filler cell points along the first spiral line that
/// passes through it, so it reaches nothing that line did not already
/// reach.
pub fn torus_spiral(n: usize) -> Result<TorusBoard> {
    check_size(n, 3)?;
    let points = spiral_waypoints(n)?;
    let mut cells = vec![None; n * n];
    let mut fixed = vec![false; n * n];
    for w in points.windows(2) {
        let from = (w[0].i - 1) * n + (w[0].j - 1);
        let di = (w[1].i as i32 - w[0].i as i32).signum();
        let dj = (w[1].j as i32 - w[0].j as i32).signum();
        let dir = Direction::from_delta(di, dj).expect("distinct waypoints");
        cells[from] = Some(dir);
        fixed[from] = true;
    }
    for w in points.windows(2) {
        let from = (w[0].i - 1) * n + (w[0].j - 1);
        let dir = cells[from].expect("waypoint set above");
        for t in torus_targets(n, from, dir) {
            if cells[t].is_none() {
                cells[t] = Some(dir);
            }
        }
    }
    let mut cells: Vec<Direction> = cells.into_iter().map(|c| c.unwrap_or(Direction::N)).collect();
    repair(&mut cells, &fixed, 2 * n - 1, 10_000, |c| {
        TorusBoard(Board::from_parts_unchecked(n, c.to_vec()))
    })?;
    let tb = TorusBoard(Board::new(n, cells)?);
    match solve_torus(&tb).length {
        Some(l) if l == 2 * n - 1 => Ok(tb),
        other => Err(Error::ConstructionFailed(format!(
            "torus spiral of size {n} has length {other:?}"
        ))),
    }
}

/// Monte Carlo probability that a uniform torus board is solvable.
pub fn estimate_torus_solvable(
    n: usize,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<EstimateReport> {
    check_size(n, 3)?;
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    let t0 = std::time::Instant::now();
    let lengths = par::map_chunks(workers, 0..samples, 64, |r| {
        r.map(|s| {
            let b = crate::board::random_board_stream(n, seed, s).expect("size checked");
            crate::solver::shortest_length(&TorusBoard(b))
        })
        .collect::<Vec<_>>()
    });
    let mut dist = LengthDistribution::new(n);
    for l in lengths.into_iter().flatten() {
        dist.record(l);
    }
    let (p, se) = proportion(dist.solvable(), samples);
    Ok(EstimateReport {
        op: "solvable-prob".into(),
        variant: Some("torus".into()),
        n,
        samples,
        solvable_samples: dist.solvable(),
        estimate: p,
        stderr: se,
        ci95: normal_interval(p, se),
        seed,
        workers: Some(par::effective_workers(workers)),
        histogram: dist.counts,
        elapsed_ms: Some(t0.elapsed().as_millis() as u64),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusBoundReport {
    pub variant: &'static str,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub solvable: u64,
    pub max_length: Option<usize>,
    /// `4n`
    pub bound: usize,
    /// Solvable boards longer than the bound.
    pub violations: u64,
    /// Shortest witnesses whose line trace shows a revisit.
    pub line_revisits: u64,
    pub histogram: std::collections::BTreeMap<usize, u64>,
}

/// Solve uniform torus boards, check every length against `4n` and trace
/// the lines of every shortest witness.
pub fn torus_bound_check(n: usize, samples: u64, seed: u64, workers: usize) -> Result<TorusBoundReport> {
    check_size(n, 3)?;
    let per_sample = par::map_chunks(workers, 0..samples, 64, |r| {
        r.map(|s| {
            let tb = TorusBoard(crate::board::random_board_stream(n, seed, s).expect("size checked"));
            let res = solve_torus(&tb);
            let revisit = match &res.witness {
                Some(w) => !line_trace(&tb, w).expect("witness is a valid game").revisits.is_empty(),
                None => false,
            };
            (res.length, revisit)
        })
        .collect::<Vec<_>>()
    });
    let bound = 4 * n;
    let mut dist = LengthDistribution::new(n);
    let (mut violations, mut revisits) = (0, 0);
    for (length, revisit) in per_sample.into_iter().flatten() {
        dist.record(length);
        if length.is_some_and(|l| l > bound) {
            violations += 1;
        }
        if revisit {
            revisits += 1;
        }
    }
    Ok(TorusBoundReport {
        variant: "torus",
        n,
        samples,
        seed,
        solvable: dist.solvable(),
        max_length: dist.max_length(),
        bound,
        violations,
        line_revisits: revisits,
        histogram: dist.counts,
    })
}
