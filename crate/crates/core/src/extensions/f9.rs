//! The field with nine elements, `F3[x]/(x^2 + 1)`, and boards over it.
//!
//! The eight nonzero elements stand for the eight directions through the
//! unit-step embedding: a direction with east component `a` and north
//! component `b` is the element `a + b*x`. So `E = 1`, `N = x`,
//! `NE = 1 + x`, `W = 2`, `S = 2x`. Zero is a dead cell.
//!
//! Multiplication goes through discrete logarithms to the base `1 + x`,
//! which generates the multiplicative group.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use rand::Rng;

use crate::board::{ray_indices, Board, Position};
use crate::direction::Direction;
use crate::error::{check_size, parse_error, Error, Result};
use crate::rng::stream_rng;
use crate::solver::{shortest_path, MoveGraph, SolveResult};

/// `a + b*x` with `a, b` in `0..3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F9 {
    a: u8,
    b: u8,
}

impl F9 {
    pub const ZERO: F9 = F9 { a: 0, b: 0 };
    pub const ONE: F9 = F9 { a: 1, b: 0 };
    pub const X: F9 = F9 { a: 0, b: 1 };
    /// `1 + x`, a generator of the multiplicative group.
    pub const GENERATOR: F9 = F9 { a: 1, b: 1 };

    pub fn new(a: u8, b: u8) -> F9 {
        F9 { a: a % 3, b: b % 3 }
    }

    pub fn a(self) -> u8 {
        self.a
    }

    pub fn b(self) -> u8 {
        self.b
    }

    /// Digit `a + 3b` in `0..9`, used by the text format.
    pub fn code(self) -> u8 {
        self.a + 3 * self.b
    }

    pub fn from_code(code: u8) -> Option<F9> {
        (code < 9).then_some(F9 {
            a: code % 3,
            b: code / 3,
        })
    }

    pub fn is_zero(self) -> bool {
        self == F9::ZERO
    }

    pub fn all() -> impl Iterator<Item = F9> {
        (0..9).map(|c| F9::from_code(c).expect("code below 9"))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<F9> {
        let t = tables();
        let l = t.log[self.code() as usize]?;
        Some(t.exp[(8 - l as usize) % 8])
    }

    pub fn pow(self, e: u32) -> F9 {
        (0..e).fold(F9::ONE, |acc, _| acc * self)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        (1..=8).find(|&k| self.pow(k) == F9::ONE)
    }
}

struct Tables {
    exp: [F9; 8],
    log: [Option<u8>; 9],
}

/// Multiply by the generator: `(a + bx)(1 + x) = (a - b) + (a + b)x`.
fn times_generator(e: F9) -> F9 {
    F9::new(e.a + 3 - e.b, e.a + e.b)
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut exp = [F9::ZERO; 8];
        let mut log = [None; 9];
        let mut e = F9::ONE;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = e;
            log[e.code() as usize] = Some(k as u8);
            e = times_generator(e);
        }
        assert_eq!(e, F9::ONE, "1 + x must have order 8");
        Tables { exp, log }
    })
}

impl Add for F9 {
    type Output = F9;
    fn add(self, o: F9) -> F9 {
        F9::new(self.a + o.a, self.b + o.b)
    }
}

impl Neg for F9 {
    type Output = F9;
    fn neg(self) -> F9 {
        F9::new(3 - self.a, 3 - self.b)
    }
}

impl Sub for F9 {
    type Output = F9;
    fn sub(self, o: F9) -> F9 {
        self + -o
    }
}

impl Mul for F9 {
    type Output = F9;
    fn mul(self, o: F9) -> F9 {
        let t = tables();
        match (t.log[self.code() as usize], t.log[o.code() as usize]) {
            (Some(x), Some(y)) => t.exp[(x as usize + y as usize) % 8],
            _ => F9::ZERO,
        }
    }
}

impl fmt::Display for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "x"),
            (0, b) => write!(f, "{b}x"),
            (a, 1) => write!(f, "{a}+x"),
            (a, b) => write!(f, "{a}+{b}x"),
        }
    }
}

pub fn dir_to_f9(d: Direction) -> F9 {
    let (di, dj) = d.delta();
    F9::new(dj.rem_euclid(3) as u8, (-di).rem_euclid(3) as u8)
}

pub fn f9_to_dir(e: F9) -> Option<Direction> {
    if e.is_zero() {
        return None;
    }
    let signed = |c: u8| if c == 2 { -1 } else { c as i32 };
    Direction::from_delta(-signed(e.b), signed(e.a))
}

/// Square matrix over F9; zero cells are dead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedBoard {
    n: usize,
    cells: Vec<F9>,
}

impl GeneralizedBoard {
    pub fn new(n: usize, cells: Vec<F9>) -> Result<Self> {
        check_size(n, 3)?;
        if cells.len() != n * n {
            return Err(Error::SizeMismatch {
                left: cells.len(),
                right: n * n,
            });
        }
        Ok(GeneralizedBoard { n, cells })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![F9::ZERO; n * n])
    }

    pub fn from_board(board: &Board) -> Self {
        GeneralizedBoard {
            n: board.n(),
            cells: board.cells().iter().map(|&d| dir_to_f9(d)).collect(),
        }
    }

    /// The plain board, if no cell is zero.
    pub fn to_board(&self) -> Option<Board> {
        let cells = self.cells.iter().map(|&e| f9_to_dir(e)).collect::<Option<Vec<_>>>()?;
        Board::new(self.n, cells).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[F9] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> F9 {
        self.cells[i * self.n + j]
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("f9 {}\n", self.n);
        for row in self.cells.chunks(self.n) {
            out.extend(row.iter().map(|e| char::from(b'0' + e.code())));
            out.push('\n');
        }
        out
    }

    /// Parse `f9 <N>` followed by `N` rows of digits `0..=8` (`a + 3b`).
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
        if header.len() != 2 || header[0] != "f9" {
            return Err(parse_error(1, 1, "expected header `f9 <N>`"));
        }
        let n: usize = header[1]
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 3 && n % 2 == 1)
            .ok_or_else(|| parse_error(1, 4, format!("bad size {:?}", header[1])))?;
        let mut cells = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| parse_error(row + 2, 1, format!("expected {n} rows")))?;
            if line.chars().count() != n {
                return Err(parse_error(row + 2, 1, format!("row must have {n} digits")));
            }
            for (col, ch) in line.chars().enumerate() {
                let e = ch
                    .to_digit(9)
                    .and_then(|d| F9::from_code(d as u8))
                    .ok_or_else(|| parse_error(row + 2, col + 1, format!("bad cell {ch:?}")))?;
                cells.push(e);
            }
        }
        if lines.next().is_some() {
            return Err(parse_error(n + 2, 1, "unexpected content after the last row"));
        }
        Self::new(n, cells)
    }
}

impl MoveGraph for GeneralizedBoard {
    fn vertex_count(&self) -> usize {
        self.n * self.n
    }

    fn start_vertex(&self) -> usize {
        0
    }

    fn goal_vertex(&self) -> usize {
        let c = self.n / 2;
        c * self.n + c
    }

    fn push_targets(&self, v: usize, out: &mut Vec<usize>) {
        if let Some(d) = f9_to_dir(self.cells[v]) {
            out.extend(ray_indices(self.n, v, d));
        }
    }
}

fn same_size(a: &GeneralizedBoard, b: &GeneralizedBoard) -> Result<()> {
    if a.n == b.n {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            left: a.n,
            right: b.n,
        })
    }
}

pub fn gb_add(a: &GeneralizedBoard, b: &GeneralizedBoard) -> Result<GeneralizedBoard> {
    same_size(a, b)?;
    Ok(GeneralizedBoard {
        n: a.n,
        cells: a.cells.iter().zip(&b.cells).map(|(&x, &y)| x + y).collect(),
    })
}

pub fn gb_mul(a: &GeneralizedBoard, b: &GeneralizedBoard) -> Result<GeneralizedBoard> {
    same_size(a, b)?;
    let n = a.n;
    let cells = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            (0..n).fold(F9::ZERO, |acc, t| acc + a.get(i, t) * b.get(t, j))
        })
        .collect();
    Ok(GeneralizedBoard { n, cells })
}

pub fn solve_generalized(gb: &GeneralizedBoard) -> SolveResult<Position> {
    let n = gb.n;
    shortest_path(gb).map_witness(|k| Position::new(k / n + 1, k % n + 1))
}

/// Matrix with entries uniform over all nine elements.
pub fn random_generalized(n: usize, seed: u64, stream: u64) -> Result<GeneralizedBoard> {
    check_size(n, 3)?;
    let mut rng = stream_rng(seed, stream);
    let cells = (0..n * n)
        .map(|_| F9::from_code(rng.random_range(0..9)).expect("code below 9"))
        .collect();
    GeneralizedBoard::new(n, cells)
}
