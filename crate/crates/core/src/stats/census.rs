//! Exhaustive enumeration of all 8^9 boards of size 3.
//!
//! Board number `b` holds the code of cell `k` (row-major) in bits
//! `3k..3k+3`. Each board is solved by a bitmask BFS over nine vertices using
//! precomputed `(cell, direction) -> target mask` tables. A seeded random
//! subsample is re-solved by the dense-matrix oracle.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::board::{ray_indices, Board};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::oracle::{self, DenseGraph};
use crate::par;
use crate::rng::stream_rng;
use crate::stats::LengthDistribution;

pub const CENSUS_N: usize = 3;
const CELLS: usize = 9;
const CENTER: usize = 4;
pub const BOARD_COUNT: u64 = 1 << (3 * CELLS);

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub workers: usize,
    /// Fraction of boards re-solved by the oracle.
    pub oracle_fraction: f64,
    pub oracle_seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: 0,
            oracle_fraction: 0.01,
            oracle_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub distribution: LengthDistribution,
    /// Maximum length over solvable boards.
    pub max_length: usize,
    /// Lowest-numbered board attaining `max_length`.
    pub max_witness: u32,
    pub oracle_checked: u64,
    pub oracle_mismatches: u64,
    /// Length distribution of the subsample according to the oracle.
    pub oracle_distribution: LengthDistribution,
    /// The same subsample according to the census kernel.
    pub kernel_distribution: LengthDistribution,
    pub elapsed_ms: u64,
}

impl CensusReport {
    pub fn witness_board(&self) -> Board {
        decode_board(self.max_witness)
    }

    pub fn oracle_agrees(&self) -> bool {
        self.oracle_mismatches == 0 && self.oracle_distribution == self.kernel_distribution
    }
}

fn target_masks() -> [[u16; 8]; CELLS] {
    let mut masks = [[0u16; 8]; CELLS];
    for (cell, row) in masks.iter_mut().enumerate() {
        for dir in Direction::ALL {
            row[dir as usize] = ray_indices(CENSUS_N, cell, dir).fold(0, |m, t| m | 1 << t);
        }
    }
    masks
}

/// Length of board number `b`, 0 when unsolvable.
#[inline]
fn kernel_length(masks: &[[u16; 8]; CELLS], b: u32) -> u8 {
    let center = 1u16 << CENTER;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    for step in 1..=(CELLS as u8 - 1) {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros();
            f &= f - 1;
            next |= masks[v as usize][((b >> (3 * v)) & 7) as usize];
        }
        next &= !seen;
        if next & center != 0 {
            return step;
        }
        if next == 0 {
            return 0;
        }
        seen |= next;
        frontier = next;
    }
    0
}

pub fn decode_board(b: u32) -> Board {
    let cells = (0..CELLS)
        .map(|k| Direction::ALL[((b >> (3 * k)) & 7) as usize])
        .collect();
    Board::from_parts_unchecked(CENSUS_N, cells)
}

pub fn encode_board(board: &Board) -> Option<u32> {
    (board.n() == CENSUS_N).then(|| {
        board
            .cells()
            .iter()
            .enumerate()
            .fold(0u32, |b, (k, d)| b | (d.code() as u32) << (3 * k))
    })
}

#[derive(Default, Clone, Copy)]
struct Tally {
    counts: [u64; CELLS],
    max_len: u8,
    witness: u32,
}

const SHARD_BITS: u32 = 18;

/// Census of every size-3 board.
pub fn exact_census(n: usize, opts: &CensusOptions) -> Result<CensusReport> {
    if n != CENSUS_N {
        return Err(Error::Parameter(format!(
            "exact census is only feasible for n = 3, got {n}"
        )));
    }
    let t0 = Instant::now();
    let masks = target_masks();
    let shards = BOARD_COUNT >> SHARD_BITS;
    let tallies = par::map_range(opts.workers, 0..shards, |s| {
        let mut t = Tally {
            witness: u32::MAX,
            ..Default::default()
        };
        let base = (s << SHARD_BITS) as u32;
        for b in base..base + (1 << SHARD_BITS) {
            let len = kernel_length(&masks, b);
            t.counts[len as usize] += 1;
            if len > t.max_len {
                t.max_len = len;
                t.witness = b;
            }
        }
        t
    });
    let mut counts = [0u64; CELLS];
    let (mut max_len, mut witness) = (0u8, u32::MAX);
    for t in &tallies {
        for (acc, c) in counts.iter_mut().zip(t.counts) {
            *acc += c;
        }
        if t.max_len > max_len {
            max_len = t.max_len;
            witness = t.witness;
        }
    }
    let mut distribution = LengthDistribution::new(CENSUS_N);
    distribution.unsolvable = counts[0];
    distribution.total = BOARD_COUNT;
    for (len, &c) in counts.iter().enumerate().skip(1) {
        if c > 0 {
            distribution.counts.insert(len, c);
        }
    }

    let (oracle_checked, oracle_mismatches, oracle_distribution, kernel_distribution) =
        oracle_subsample(&masks, opts);

    Ok(CensusReport {
        distribution,
        max_length: max_len as usize,
        max_witness: witness,
        oracle_checked,
        oracle_mismatches,
        oracle_distribution,
        kernel_distribution,
        elapsed_ms: t0.elapsed().as_millis() as u64,
    })
}

fn oracle_subsample(
    masks: &[[u16; 8]; CELLS],
    opts: &CensusOptions,
) -> (u64, u64, LengthDistribution, LengthDistribution) {
    let count = (BOARD_COUNT as f64 * opts.oracle_fraction.clamp(0.0, 1.0)).ceil() as u64;
    let mut rng = stream_rng(opts.oracle_seed, 0);
    let picks: Vec<u32> = (0..count)
        .map(|_| rng.random_range(0..BOARD_COUNT as u32))
        .collect();
    let pairs = par::map_chunks(opts.workers, 0..count, 4096, |range| {
        range
            .map(|k| {
                let b = picks[k as usize];
                let kernel = kernel_length(masks, b);
                let graph = DenseGraph::from_board(&decode_board(b));
                let reference = oracle::shortest_length(&graph);
                (kernel, reference)
            })
            .collect::<Vec<_>>()
    });
    let mut mismatches = 0;
    let mut by_oracle = LengthDistribution::new(CENSUS_N);
    let mut by_kernel = LengthDistribution::new(CENSUS_N);
    for (kernel, reference) in pairs.into_iter().flatten() {
        let kernel = (kernel > 0).then_some(kernel as usize);
        if kernel != reference {
            mismatches += 1;
        }
        by_kernel.record(kernel);
        by_oracle.record(reference);
    }
    (count, mismatches, by_oracle, by_kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::random_board_stream;
    use crate::solver::shortest_length;

    #[test]
    fn encode_decode() {
        let b = random_board_stream(3, 5, 0).unwrap();
        let code = encode_board(&b).unwrap();
        assert_eq!(decode_board(code), b);
        assert!(encode_board(&Board::filled(5, Direction::N).unwrap()).is_none());
    }

    #[test]
    fn kernel_matches_bfs() {
        let masks = target_masks();
        for s in 0..5000 {
            let b = random_board_stream(3, 17, s).unwrap();
            let code = encode_board(&b).unwrap();
            let k = kernel_length(&masks, code);
            assert_eq!((k > 0).then_some(k as usize), shortest_length(&b));
        }
    }

    #[test]
    fn rejects_other_sizes() {
        assert!(exact_census(5, &CensusOptions::default()).is_err());
    }
}
