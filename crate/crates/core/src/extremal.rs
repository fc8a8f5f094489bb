//! Long boards: the spiral construction, extremal out-degree boards,
//! row and column duplication, the exact maximum length at size 3, and an
//! annealing search for long boards.

use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::board::{ray_len, Board, Position};
use crate::direction::Direction;
use crate::error::{check_size, Error, Result};
use crate::par;
use crate::rng::stream_rng;
use crate::solver::{shortest_length, shortest_path, MoveGraph};
use crate::stats::census::{exact_census, CensusOptions, CENSUS_N};

/// Corners of the rectangular in-spiral
/// `(1,1) -> (1,n) -> (n,n) -> (n,1) -> (2,1) -> (2,n-1) -> ... -> center`,
/// `2n` positions and so `2n - 1` hops.
pub fn spiral_waypoints(n: usize) -> Result<Vec<Position>> {
    check_size(n, 3)?;
    let c = n.div_ceil(2);
    let mut points = vec![Position::new(1, 1)];
    for k in 0..c - 1 {
        points.push(Position::new(k + 1, n - k));
        points.push(Position::new(n - k, n - k));
        points.push(Position::new(n - k, k + 1));
        points.push(Position::new(k + 2, k + 1));
    }
    points.push(Position::new(c, c));
    Ok(points)
}

fn step_between(a: Position, b: Position) -> Direction {
    let di = (b.i as i32 - a.i as i32).signum();
    let dj = (b.j as i32 - a.j as i32).signum();
    Direction::from_delta(di, dj).expect("consecutive waypoints are distinct")
}

/// Board cells with every non-final waypoint aimed at its successor, plus a
/// mask of those fixed cells.
pub(crate) fn spiral_skeleton(n: usize, filler: impl Fn(Position) -> Direction) -> Result<(Vec<Direction>, Vec<bool>)> {
    let points = spiral_waypoints(n)?;
    let mut cells: Vec<Direction> = (0..n * n)
        .map(|k| filler(Position::new(k / n + 1, k % n + 1)))
        .collect();
    let mut fixed = vec![false; n * n];
    for w in points.windows(2) {
        let k = (w[0].i - 1) * n + (w[0].j - 1);
        cells[k] = step_between(w[0], w[1]);
        fixed[k] = true;
    }
    Ok((cells, fixed))
}

/// Re-aim free cells until the shortest game has length `target`.
///
/// Each round takes the first free cell on a current shortest game, gives
/// it the direction that makes the board longest (shorter rays, then lower
/// codes on ties) and locks it. Fails when no unlocked cell lies on the
/// witness or after `max_rounds` rounds.
pub(crate) fn repair<G, F>(
    cells: &mut [Direction],
    fixed: &[bool],
    target: usize,
    max_rounds: usize,
    build: F,
) -> Result<()>
where
    G: MoveGraph,
    F: Fn(&[Direction]) -> G,
{
    let mut locked = fixed.to_vec();
    let mut buf = Vec::new();
    for _ in 0..=max_rounds {
        let result = shortest_path(&build(cells));
        let length = result.length.ok_or_else(|| {
            Error::ConstructionFailed("the spiral skeleton lost its winning game".into())
        })?;
        if length == target {
            return Ok(());
        }
        if length > target {
            return Err(Error::ConstructionFailed(format!(
                "length {length} exceeds the skeleton length {target}"
            )));
        }
        let witness = result.witness.expect("solvable result has a witness");
        let culprit = witness[..witness.len() - 1]
            .iter()
            .copied()
            .find(|&v| !locked[v])
            .ok_or_else(|| {
                Error::ConstructionFailed(format!("shortcut of length {length} uses only locked cells"))
            })?;
        let mut best = (0usize, usize::MAX, cells[culprit]);
        for d in Direction::ALL {
            cells[culprit] = d;
            let g = build(cells);
            let l = shortest_length(&g).unwrap_or(0);
            buf.clear();
            g.push_targets(culprit, &mut buf);
            if l > best.0 || (l == best.0 && buf.len() < best.1) {
                best = (l, buf.len(), d);
            }
        }
        cells[culprit] = best.2;
        locked[culprit] = true;
    }
    Err(Error::ConstructionFailed(format!(
        "no board of length {target} after {max_rounds} repair rounds"
    )))
}

const REPAIR_ROUNDS: usize = 10_000;

/// Direction towards the nearest edge, preferring N, S, W, E on ties.
fn outward(n: usize, p: Position) -> Direction {
    let options = [
        (p.i - 1, Direction::N),
        (n - p.i, Direction::S),
        (p.j - 1, Direction::W),
        (n - p.j, Direction::E),
    ];
    options.iter().min_by_key(|(d, _)| *d).expect("four options").1
}

/// A board of length exactly `2n - 1` whose shortest game follows the
/// spiral waypoints. Filler cells point at their nearest edge, so each
/// filler only reaches rings of the spiral that were entered earlier.
pub fn spiral_board(n: usize) -> Result<Board> {
    check_size(n, 5)?;
    let (mut cells, fixed) = spiral_skeleton(n, |p| outward(n, p))?;
    repair(&mut cells, &fixed, 2 * n - 1, REPAIR_ROUNDS, |c| {
        Board::from_parts_unchecked(n, c.to_vec())
    })?;
    let board = Board::new(n, cells)?;
    match shortest_length(&board) {
        Some(l) if l == 2 * n - 1 => Ok(board),
        other => Err(Error::ConstructionFailed(format!(
            "spiral board of size {n} has length {other:?}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    Max,
    Min,
}

/// Every cell takes the direction with the most (or fewest) targets,
/// lowest code on ties.
pub fn extremal_degree_board(n: usize, mode: DegreeMode) -> Result<Board> {
    check_size(n, 3)?;
    let cells = (0..n * n)
        .map(|k| {
            let key = |d: &Direction| ray_len(n, k, *d);
            let pick = match mode {
                DegreeMode::Max => Direction::ALL
                    .into_iter()
                    .rev()
                    .max_by_key(key),
                DegreeMode::Min => Direction::ALL.into_iter().min_by_key(key),
            };
            pick.expect("eight directions")
        })
        .collect();
    Board::new(n, cells)
}

/// Repeat the listed rows and columns (1-based) next to themselves.
pub fn duplicate_expand(board: &Board, rows: &[usize], cols: &[usize]) -> Result<Board> {
    let n = board.n();
    let check = |what: &str, list: &[usize]| -> Result<Vec<bool>> {
        let mut marked = vec![false; n + 1];
        for &x in list {
            if x == 0 || x > n {
                return Err(Error::Parameter(format!("{what} {x} is outside 1..={n}")));
            }
            if std::mem::replace(&mut marked[x], true) {
                return Err(Error::Parameter(format!("{what} {x} listed twice")));
            }
        }
        Ok(marked)
    };
    let (row_set, col_set) = (check("row", rows)?, check("column", cols)?);
    if rows.len() != cols.len() {
        return Err(Error::Parameter(format!(
            "duplicating {} rows and {} columns would not give a square board",
            rows.len(),
            cols.len()
        )));
    }
    if !rows.len().is_multiple_of(2) {
        return Err(Error::Parameter(
            "an odd number of duplicated rows would give an even size".into(),
        ));
    }
    let expand = |set: &[bool]| -> Vec<usize> {
        (1..=n)
            .flat_map(|x| std::iter::repeat_n(x, if set[x] { 2 } else { 1 }))
            .collect()
    };
    let (row_map, col_map) = (expand(&row_set), expand(&col_set));
    let m = row_map.len();
    Board::from_fn(m, |p| {
        board.at((row_map[p.i - 1] - 1) * n + col_map[p.j - 1] - 1)
    })
}

/// Exact maximum length over all solvable boards of a given size, with the
/// lowest-numbered board attaining it. Only size 3 is feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMaxLength {
    pub n: usize,
    pub length: usize,
    pub witness: Board,
}

pub fn ml_exact(n: usize, workers: usize) -> Result<ExactMaxLength> {
    if n != CENSUS_N {
        return Err(Error::Parameter(format!(
            "the exact maximum length is only computed for n = 3, got {n}"
        )));
    }
    let census = exact_census(
        n,
        &CensusOptions {
            workers,
            oracle_fraction: 0.0,
            oracle_seed: 0,
        },
    )?;
    Ok(ExactMaxLength {
        n,
        length: census.max_length,
        witness: census.witness_board(),
    })
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Annealing steps per restart.
    pub iterations: u64,
    pub restarts: usize,
    pub seed: u64,
    pub workers: usize,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    /// Start restart 0 from the spiral board.
    pub seed_with_spiral: bool,
    /// Start restart 0 from this board instead.
    pub resume: Option<Board>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            iterations: 20_000,
            restarts: 4,
            seed: 0,
            workers: 0,
            initial_temperature: 2.0,
            final_temperature: 0.05,
            seed_with_spiral: true,
            resume: None,
        }
    }
}

fn board_as_text<S: Serializer>(board: &Board, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&board.to_text())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    #[serde(serialize_with = "board_as_text")]
    pub best_board: Board,
    pub best_length: usize,
    /// `best_length / n`
    pub ratio: f64,
    pub iterations: u64,
    pub restarts: usize,
    pub seed: u64,
    pub accepted_moves: u64,
    pub improvements: u64,
    /// Best length reached by each restart.
    pub restart_best: Vec<usize>,
}

/// JSON sidecar written next to a checkpointed board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub length: usize,
    pub iter: u64,
    pub seed: u64,
}

impl SearchReport {
    pub fn checkpoint(&self) -> (String, SearchCheckpoint) {
        (
            self.best_board.to_text(),
            SearchCheckpoint {
                length: self.best_length,
                iter: self.iterations,
                seed: self.seed,
            },
        )
    }
}

struct RestartOutcome {
    best: Board,
    best_length: usize,
    accepted: u64,
    improvements: u64,
}

fn objective(board: &Board) -> i64 {
    shortest_length(board).map_or(-1, |l| l as i64)
}

fn anneal(n: usize, restart: usize, cfg: &SearchConfig) -> Result<RestartOutcome> {
    let mut rng = stream_rng(cfg.seed, restart as u64);
    let mut current = match (restart, &cfg.resume) {
        (0, Some(b)) => b.clone(),
        (0, None) if cfg.seed_with_spiral => spiral_board(n)?,
        _ => {
            let cells = (0..n * n)
                .map(|_| Direction::ALL[rng.random_range(0..8)])
                .collect();
            Board::from_parts_unchecked(n, cells)
        }
    };
    let mut score = objective(&current);
    let mut best = current.clone();
    let mut best_score = score;
    let (mut accepted, mut improvements) = (0, 0);
    let t0 = cfg.initial_temperature.max(1e-9);
    let cooling = (cfg.final_temperature.max(1e-9) / t0).powf(1.0 / cfg.iterations.max(1) as f64);
    let mut temperature = t0;
    let mut cells = current.cells().to_vec();
    for _ in 0..cfg.iterations {
        let k = rng.random_range(0..n * n);
        let d = Direction::ALL[rng.random_range(0..8)];
        let roll: f64 = rng.random();
        temperature *= cooling;
        if d == cells[k] {
            continue;
        }
        let old = cells[k];
        cells[k] = d;
        let candidate = Board::from_parts_unchecked(n, cells.clone());
        let next = objective(&candidate);
        let delta = (next - score) as f64;
        if delta >= 0.0 || roll < (delta / temperature).exp() {
            accepted += 1;
            current = candidate;
            score = next;
            if score > best_score {
                improvements += 1;
                best_score = score;
                best = current.clone();
            }
        } else {
            cells[k] = old;
        }
    }
    debug_assert_eq!(current.cells(), &cells[..]);
    Ok(RestartOutcome {
        best,
        best_length: best_score.max(0) as usize,
        accepted,
        improvements,
    })
}

/// Simulated annealing over single-cell redraws with BFS length as the
/// objective and unsolvable boards scored -1. Restarts run in parallel on
/// their own keystreams; the best restart wins, lower index on ties.
pub fn long_board_search(n: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    check_size(n, 5)?;
    if cfg.restarts == 0 {
        return Err(Error::Parameter("at least one restart is required".into()));
    }
    if let Some(b) = &cfg.resume {
        if b.n() != n {
            return Err(Error::SizeMismatch {
                left: b.n(),
                right: n,
            });
        }
    }
    let outcomes = par::map_range(cfg.workers, 0..cfg.restarts as u64, |r| {
        anneal(n, r as usize, cfg)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let winner = outcomes
        .iter()
        .enumerate()
        .max_by_key(|(r, o)| (o.best_length, std::cmp::Reverse(*r)))
        .map(|(_, o)| o)
        .expect("at least one restart");
    let best_length = winner.best_length;
    let verified = shortest_length(&winner.best);
    if best_length > 0 && verified != Some(best_length) {
        return Err(Error::ConstructionFailed(format!(
            "search reported length {best_length} but the board solves to {verified:?}"
        )));
    }
    Ok(SearchReport {
        n,
        best_board: winner.best.clone(),
        best_length,
        ratio: best_length as f64 / n as f64,
        iterations: cfg.iterations * cfg.restarts as u64,
        restarts: cfg.restarts,
        seed: cfg.seed,
        accepted_moves: outcomes.iter().map(|o| o.accepted).sum(),
        improvements: outcomes.iter().map(|o| o.improvements).sum(),
        restart_best: outcomes.iter().map(|o| o.best_length).collect(),
    })
}
