//! Boards, positions, the move relation, games and the board text format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{check_size, parse_error, Error, Result};
use crate::rng::CodeStream;

/// 1-based `(row, column)` position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub i: usize,
    pub j: usize,
}

impl Position {
    pub const fn new(i: usize, j: usize) -> Self {
        Position { i, j }
    }

    /// Chebyshev distance to the center of a size-`n` board.
    pub fn center_distance(self, n: usize) -> usize {
        let c = n.div_ceil(2);
        self.i.abs_diff(c).max(self.j.abs_diff(c))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(usize, usize)> for Position {
    fn from((i, j): (usize, usize)) -> Self {
        Position { i, j }
    }
}

/// Whether a grid lives on a bounded square or on a torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Plain,
    Torus,
}

impl Topology {
    pub fn tag(self) -> &'static str {
        match self {
            Topology::Plain => "plain",
            Topology::Torus => "torus",
        }
    }
}

/// Flat cell indices on the ray from `from` along `dir`, nearest first.
/// Indices are row-major and 0-based.
#[inline]
pub fn ray_indices(n: usize, from: usize, dir: Direction) -> RayIter {
    let (di, dj) = dir.delta();
    RayIter {
        n: n as i64,
        i: (from / n) as i64,
        j: (from % n) as i64,
        di: di as i64,
        dj: dj as i64,
    }
}

pub struct RayIter {
    n: i64,
    i: i64,
    j: i64,
    di: i64,
    dj: i64,
}

impl Iterator for RayIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        self.i += self.di;
        self.j += self.dj;
        if self.i < 0 || self.j < 0 || self.i >= self.n || self.j >= self.n {
            // park outside so repeated calls stay exhausted
            self.di = 0;
            self.dj = 0;
            None
        } else {
            Some((self.i * self.n + self.j) as usize)
        }
    }
}

/// Number of cells on the ray from flat index `from` along `dir`.
pub fn ray_len(n: usize, from: usize, dir: Direction) -> usize {
    let (i, j) = (from / n, from % n);
    let steps = |x: usize, d: i32| match d {
        -1 => x,
        1 => n - 1 - x,
        _ => usize::MAX,
    };
    let (di, dj) = dir.delta();
    steps(i, di).min(steps(j, dj))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Board {
    n: usize,
    cells: Vec<Direction>,
}

impl Board {
    pub fn new(n: usize, cells: Vec<Direction>) -> Result<Board> {
        check_size(n, 3)?;
        if cells.len() != n * n {
            return Err(Error::SizeMismatch {
                left: cells.len(),
                right: n * n,
            });
        }
        Ok(Board { n, cells })
    }

    pub fn filled(n: usize, dir: Direction) -> Result<Board> {
        Board::new(n, vec![dir; n * n])
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Position) -> Direction) -> Result<Board> {
        check_size(n, 3)?;
        let cells = (0..n * n).map(|k| f(Position::new(k / n + 1, k % n + 1))).collect();
        Ok(Board { n, cells })
    }

    /// Build from row strings of direction codes (`'0'..='7'`).
    pub fn from_rows(rows: &[&str]) -> Result<Board> {
        let mut text = format!("n {} plain\n", rows.len());
        for r in rows {
            text.push_str(r);
            text.push('\n');
        }
        parse_board(&text).map(|(_, b)| b)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cells(&self) -> &[Direction] {
        &self.cells
    }

    pub fn start(&self) -> Position {
        Position::new(1, 1)
    }

    pub fn center(&self) -> Position {
        let c = self.n.div_ceil(2);
        Position::new(c, c)
    }

    #[inline]
    pub fn center_index(&self) -> usize {
        let c = self.n / 2;
        c * self.n + c
    }

    pub fn contains(&self, pos: Position) -> bool {
        (1..=self.n).contains(&pos.i) && (1..=self.n).contains(&pos.j)
    }

    fn check(&self, pos: Position) -> Result<()> {
        if self.contains(pos) {
            Ok(())
        } else {
            Err(Error::OutOfRange { pos, n: self.n })
        }
    }

    #[inline]
    pub fn index(&self, pos: Position) -> usize {
        (pos.i - 1) * self.n + (pos.j - 1)
    }

    #[inline]
    pub fn position(&self, index: usize) -> Position {
        Position::new(index / self.n + 1, index % self.n + 1)
    }

    pub fn get(&self, pos: Position) -> Result<Direction> {
        self.check(pos)?;
        Ok(self.cells[self.index(pos)])
    }

    #[inline]
    pub fn at(&self, index: usize) -> Direction {
        self.cells[index]
    }

    /// Copy of this board with one cell replaced.
    pub fn with_cell(&self, pos: Position, dir: Direction) -> Result<Board> {
        self.check(pos)?;
        let mut cells = self.cells.clone();
        cells[self.index(pos)] = dir;
        Ok(Board { n: self.n, cells })
    }

    pub(crate) fn from_parts_unchecked(n: usize, cells: Vec<Direction>) -> Board {
        debug_assert_eq!(cells.len(), n * n);
        Board { n, cells }
    }

    /// Every position the arrow at `pos` points to, nearest first.
    pub fn targets(&self, pos: Position) -> Result<Vec<Position>> {
        self.check(pos)?;
        let from = self.index(pos);
        Ok(ray_indices(self.n, from, self.cells[from])
            .map(|k| self.position(k))
            .collect())
    }

    /// Out-degree of the cell at flat index `index`.
    #[inline]
    pub fn out_degree(&self, index: usize) -> usize {
        ray_len(self.n, index, self.cells[index])
    }

    /// The directing-to relation, evaluated clause by clause from the
    /// coordinate differences rather than by walking the ray.
    pub fn is_directing(&self, from: Position, to: Position) -> Result<bool> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(Error::SamePosition(from));
        }
        Ok(directs(self.cells[self.index(from)], from, to))
    }

    pub fn validate_game(&self, moves: &[Position]) -> Result<Game> {
        let first = *moves.first().ok_or_else(|| Error::InvalidGame {
            index: 0,
            message: "a game has at least the starting position".into(),
        })?;
        if first != self.start() {
            return Err(Error::InvalidGame {
                index: 0,
                message: format!("games start at (1,1), not {first}"),
            });
        }
        let center = self.center();
        for (k, pos) in moves.iter().enumerate() {
            if !self.contains(*pos) {
                return Err(Error::InvalidGame {
                    index: k,
                    message: format!("{pos} is off the board"),
                });
            }
        }
        for (k, pair) in moves.windows(2).enumerate() {
            let (from, to) = (pair[0], pair[1]);
            let index = k + 1;
            if from == center {
                return Err(Error::InvalidGame {
                    index,
                    message: "the game already ended at the center".into(),
                });
            }
            if self.out_degree(self.index(from)) == 0 {
                return Err(Error::InvalidGame {
                    index,
                    message: format!("the game already ended at dead cell {from}"),
                });
            }
            if from == to || !directs(self.cells[self.index(from)], from, to) {
                return Err(Error::InvalidGame {
                    index,
                    message: format!("{from} does not direct to {to}"),
                });
            }
        }
        let last = *moves.last().expect("non-empty");
        let outcome = if last == center {
            Outcome::Won
        } else if self.out_degree(self.index(last)) == 0 {
            Outcome::Lost
        } else {
            Outcome::InProgress
        };
        Ok(Game {
            moves: moves.to_vec(),
            outcome,
        })
    }

    pub fn to_text(&self) -> String {
        serialize_grid(self, Topology::Plain)
    }
}

/// The eight directing-to clauses.
pub(crate) fn directs(dir: Direction, from: Position, to: Position) -> bool {
    let (i, j) = (from.i as i64, from.j as i64);
    let (i2, j2) = (to.i as i64, to.j as i64);
    match dir {
        Direction::N => i > i2 && j == j2,
        Direction::NE => i - i2 == j2 - j && j2 - j > 0,
        Direction::E => i == i2 && j < j2,
        Direction::SE => i2 - i == j2 - j && j2 - j > 0,
        Direction::S => i < i2 && j == j2,
        Direction::SW => i2 - i == j - j2 && j - j2 > 0,
        Direction::W => i == i2 && j > j2,
        Direction::NW => i - i2 == j - j2 && j - j2 > 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Won,
    Lost,
    InProgress,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Game {
    pub moves: Vec<Position>,
    pub outcome: Outcome,
}

impl Game {
    pub fn turns(&self) -> usize {
        self.moves.len() - 1
    }
}

/// Uniform random board; cell `k` is keystream code `k` of stream 0.
pub fn random_board(n: usize, seed: u64) -> Result<Board> {
    random_board_stream(n, seed, 0)
}

pub fn random_board_stream(n: usize, seed: u64, stream: u64) -> Result<Board> {
    check_size(n, 3)?;
    let mut codes = CodeStream::new(seed, stream);
    let mut cells = vec![Direction::N; n * n];
    codes.fill(&mut cells);
    Ok(Board { n, cells })
}

pub fn serialize_board(board: &Board) -> String {
    board.to_text()
}

pub(crate) fn serialize_grid(board: &Board, topology: Topology) -> String {
    let n = board.n;
    let mut out = String::with_capacity(16 + n * (n + 1));
    out.push_str(&format!("n {} {}\n", n, topology.tag()));
    for row in board.cells.chunks(n) {
        out.extend(row.iter().map(|d| (b'0' + d.code()) as char));
        out.push('\n');
    }
    out
}

/// Parse the `n <N> <plain|torus>` text format.
pub fn parse_board(text: &str) -> Result<(Topology, Board)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 || fields[0] != "n" {
        return Err(parse_error(1, 1, "expected header `n <N> <plain|torus>`"));
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| parse_error(1, 3, format!("bad size {:?}", fields[1])))?;
    if n < 3 || n.is_multiple_of(2) {
        return Err(parse_error(1, 3, format!("size must be odd and >= 3, got {n}")));
    }
    let topology = match fields[2] {
        "plain" => Topology::Plain,
        "torus" => Topology::Torus,
        other => {
            return Err(parse_error(
                1,
                4 + fields[1].len(),
                format!("unknown topology {other:?}"),
            ))
        }
    };
    let mut cells = Vec::with_capacity(n * n);
    for row in 0..n {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| parse_error(line_no, 1, format!("expected {n} rows, found {row}")))?;
        for (col, ch) in line.chars().enumerate() {
            if col >= n {
                return Err(parse_error(line_no, col + 1, format!("row longer than {n}")));
            }
            let dir = ch
                .to_digit(8)
                .and_then(|d| Direction::from_code(d as u8))
                .ok_or_else(|| parse_error(line_no, col + 1, format!("bad cell {ch:?}")))?;
            cells.push(dir);
        }
        if line.chars().count() < n {
            return Err(parse_error(
                line_no,
                line.chars().count() + 1,
                format!("row shorter than {n}"),
            ));
        }
    }
    if let Some(extra) = lines.next() {
        let _ = extra;
        return Err(parse_error(n + 2, 1, "unexpected content after the last row"));
    }
    Ok((topology, Board { n, cells }))
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
