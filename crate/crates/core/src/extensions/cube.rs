//! Three-dimensional boards: an `n x n x n` cube of arrows pointing at one
//! of the 26 neighbouring directions, played from a corner to the center.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{check_size, parse_error, Error, Result};
use crate::par;
use crate::rng::stream_rng;
use crate::solver::{shortest_length, shortest_path, MoveGraph, SolveResult};
use crate::stats::{normal_interval, proportion, EstimateReport, LengthDistribution};

/// 1-based `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position3 {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Position3 {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Position3 { i, j, k }
    }
}

impl fmt::Display for Position3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// One of the 26 nonzero steps in `{-1,0,1}^3`, numbered in lexicographic
/// order of `(di, dj, dk)` and written as the letters `a..=z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction3(u8);

impl Direction3 {
    pub const COUNT: usize = 26;

    pub fn from_code(code: u8) -> Option<Direction3> {
        ((code as usize) < Self::COUNT).then_some(Direction3(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Direction3> {
        (0..Self::COUNT as u8).map(Direction3)
    }

    pub fn delta(self) -> (i32, i32, i32) {
        // skip the zero vector, which sits at position 13 of the 27
        let m = if self.0 < 13 { self.0 } else { self.0 + 1 } as i32;
        (m / 9 - 1, m / 3 % 3 - 1, m % 3 - 1)
    }

    pub fn from_delta(di: i32, dj: i32, dk: i32) -> Option<Direction3> {
        let in_range = |x: i32| (-1..=1).contains(&x);
        if !(in_range(di) && in_range(dj) && in_range(dk)) || (di, dj, dk) == (0, 0, 0) {
            return None;
        }
        let m = ((di + 1) * 9 + (dj + 1) * 3 + dk + 1) as u8;
        Some(Direction3(if m < 13 { m } else { m - 1 }))
    }

    pub fn letter(self) -> char {
        char::from(b'a' + self.0)
    }

    pub fn from_letter(c: char) -> Option<Direction3> {
        c.is_ascii_lowercase().then(|| Direction3(c as u8 - b'a'))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeBoard {
    n: usize,
    cells: Vec<Direction3>,
}

impl CubeBoard {
    pub fn new(n: usize, cells: Vec<Direction3>) -> Result<Self> {
        check_size(n, 3)?;
        if cells.len() != n * n * n {
            return Err(Error::SizeMismatch {
                left: cells.len(),
                right: n * n * n,
            });
        }
        Ok(CubeBoard { n, cells })
    }

    pub fn filled(n: usize, d: Direction3) -> Result<Self> {
        Self::new(n, vec![d; n * n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self, p: Position3) -> usize {
        ((p.i - 1) * self.n + (p.j - 1)) * self.n + (p.k - 1)
    }

    pub fn position(&self, v: usize) -> Position3 {
        let n = self.n;
        Position3::new(v / (n * n) + 1, v / n % n + 1, v % n + 1)
    }

    pub fn at(&self, v: usize) -> Direction3 {
        self.cells[v]
    }

    pub fn center(&self) -> Position3 {
        let c = self.n.div_ceil(2);
        Position3::new(c, c, c)
    }

    pub fn with_cell(&self, p: Position3, d: Direction3) -> Result<Self> {
        let n = self.n;
        if [p.i, p.j, p.k].iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Parameter(format!("{p} is outside a cube of size {n}")));
        }
        let mut cells = self.cells.clone();
        cells[self.index(p)] = d;
        Ok(CubeBoard { n, cells })
    }

    /// `cube <N>`, then `N` slabs (one per `i`) of `N` rows (one per `j`)
    /// separated by blank lines.
    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut out = format!("cube {n}\n");
        for (s, slab) in self.cells.chunks(n * n).enumerate() {
            if s > 0 {
                out.push('\n');
            }
            for row in slab.chunks(n) {
                out.extend(row.iter().map(|d| d.letter()));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let lines: Vec<&str> = body.split('\n').collect();
        let header: Vec<&str> = lines[0].split(' ').collect();
        if header.len() != 2 || header[0] != "cube" {
            return Err(parse_error(1, 1, "expected header `cube <N>`"));
        }
        let n: usize = header[1]
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 3 && n % 2 == 1)
            .ok_or_else(|| parse_error(1, 6, format!("bad size {:?}", header[1])))?;
        let expected = 1 + n * n + (n - 1);
        let mut cells = Vec::with_capacity(n * n * n);
        for slab in 0..n {
            let first = 1 + slab * (n + 1);
            if slab > 0 {
                match lines.get(first - 1) {
                    Some(&"") => {}
                    _ => return Err(parse_error(first, 1, "expected a blank line between slabs")),
                }
            }
            for row in 0..n {
                let line_no = first + row + 1;
                let line = lines
                    .get(line_no - 1)
                    .ok_or_else(|| parse_error(line_no, 1, format!("expected {n} slabs of {n} rows")))?;
                if line.chars().count() != n {
                    return Err(parse_error(line_no, 1, format!("row must have {n} letters")));
                }
                for (col, ch) in line.chars().enumerate() {
                    let d = Direction3::from_letter(ch)
                        .ok_or_else(|| parse_error(line_no, col + 1, format!("bad cell {ch:?}")))?;
                    cells.push(d);
                }
            }
        }
        if lines.len() > expected {
            return Err(parse_error(expected + 1, 1, "unexpected content after the last slab"));
        }
        Self::new(n, cells)
    }
}

/// Flat indices on the ray from `from` along `d`, nearest first.
pub fn cube_ray(n: usize, from: usize, d: Direction3) -> impl Iterator<Item = usize> {
    let (di, dj, dk) = d.delta();
    let m = n as i64;
    let (mut i, mut j, mut k) = ((from / (n * n)) as i64, (from / n % n) as i64, (from % n) as i64);
    std::iter::from_fn(move || {
        i += di as i64;
        j += dj as i64;
        k += dk as i64;
        let inside = [i, j, k].iter().all(|&x| (0..m).contains(&x));
        inside.then(|| ((i * m + j) * m + k) as usize)
    })
}

impl MoveGraph for CubeBoard {
    fn vertex_count(&self) -> usize {
        self.cells.len()
    }

    fn start_vertex(&self) -> usize {
        0
    }

    fn goal_vertex(&self) -> usize {
        let c = self.n / 2;
        (c * self.n + c) * self.n + c
    }

    fn push_targets(&self, v: usize, out: &mut Vec<usize>) {
        out.extend(cube_ray(self.n, v, self.cells[v]));
    }
}

pub fn solve_cube(cb: &CubeBoard) -> SolveResult<Position3> {
    shortest_path(cb).map_witness(|v| cb.position(v))
}

fn draw_cells(n: usize, seed: u64, stream: u64) -> Vec<Direction3> {
    let mut rng = stream_rng(seed, stream);
    (0..n * n * n)
        .map(|_| Direction3(rng.random_range(0..Direction3::COUNT as u8)))
        .collect()
}

pub fn random_cube(n: usize, seed: u64) -> Result<CubeBoard> {
    random_cube_stream(n, seed, 0)
}

pub fn random_cube_stream(n: usize, seed: u64, stream: u64) -> Result<CubeBoard> {
    check_size(n, 3)?;
    CubeBoard::new(n, draw_cells(n, seed, stream))
}

/// Number of corner directions whose ray stays in the cube, and the number
/// that hit the center directly, out of 26.
pub fn corner_direction_counts(n: usize) -> Result<(usize, usize)> {
    check_size(n, 3)?;
    let probe = CubeBoard::filled(n, Direction3(0))?;
    let center = probe.goal_vertex();
    let (mut open, mut direct) = (0, 0);
    for d in Direction3::all() {
        let mut ray = cube_ray(n, 0, d).peekable();
        if ray.peek().is_some() {
            open += 1;
        }
        if ray.any(|v| v == center) {
            direct += 1;
        }
    }
    Ok((open, direct))
}

/// Monte Carlo solvability of uniform cube boards.
pub fn estimate_cube_stats(n: usize, samples: u64, seed: u64, workers: usize) -> Result<EstimateReport> {
    check_size(n, 3)?;
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    let t0 = std::time::Instant::now();
    let lengths = par::map_chunks(workers, 0..samples, 16, |r| {
        r.map(|s| shortest_length(&CubeBoard { n, cells: draw_cells(n, seed, s) }))
            .collect::<Vec<_>>()
    });
    let mut dist = LengthDistribution::new(n);
    for l in lengths.into_iter().flatten() {
        dist.record(l);
    }
    let (p, se) = proportion(dist.solvable(), samples);
    Ok(EstimateReport {
        op: "solvable-prob".into(),
        variant: Some("cube".into()),
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
