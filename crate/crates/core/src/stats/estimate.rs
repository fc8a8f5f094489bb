//! Seeded Monte Carlo estimators over uniform random boards.
//!
//! Sample `i` is the board drawn from keystream `(seed, i)`, so every
//! estimate depends only on `(n, samples, seed)`.

use std::time::Instant;

use crate::board::{ray_len, Board};
use crate::direction::Direction;
use crate::error::{check_size, Error, Result};
use crate::par;
use crate::rng::CodeStream;
use crate::solver::shortest_length;
use crate::stats::{normal_interval, proportion, wilson_interval, EstimateReport, LengthDistribution};

#[derive(Debug, Clone, Default)]
pub struct EstimateOptions {
    /// Worker threads; 0 uses every available core.
    pub workers: usize,
    /// Report the Wilson score interval instead of the normal one.
    pub wilson: bool,
}

const CHUNK: u64 = 64;

/// Length of sample `stream`, or `None` when unsolvable.
///
/// The corner cell is drawn first; a corner pointing off the board ends the
/// game immediately and the rest of the board is never generated.
pub fn sample_length(n: usize, seed: u64, stream: u64) -> Option<usize> {
    let mut codes = CodeStream::new(seed, stream);
    let corner = codes.next_direction();
    if ray_len(n, 0, corner) == 0 {
        return None;
    }
    let mut cells = vec![Direction::N; n * n];
    cells[0] = corner;
    codes.fill(&mut cells[1..]);
    shortest_length(&Board::from_parts_unchecked(n, cells))
}

fn lengths(n: usize, seed: u64, workers: usize, range: std::ops::Range<u64>) -> Vec<Option<usize>> {
    par::map_chunks(workers, range, CHUNK, |r| {
        r.map(|s| sample_length(n, seed, s)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn estimate_solvable_probability(
    n: usize,
    samples: u64,
    seed: u64,
    opts: &EstimateOptions,
) -> Result<EstimateReport> {
    check_size(n, 3)?;
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    let t0 = Instant::now();
    let mut dist = LengthDistribution::new(n);
    for l in lengths(n, seed, opts.workers, 0..samples) {
        dist.record(l);
    }
    let solvable = dist.solvable();
    let (p, se) = proportion(solvable, samples);
    let ci95 = if opts.wilson {
        wilson_interval(solvable, samples)
    } else {
        normal_interval(p, se)
    };
    Ok(EstimateReport {
        op: "solvable-prob".into(),
        variant: None,
        n,
        samples,
        solvable_samples: solvable,
        estimate: p,
        stderr: se,
        ci95,
        seed,
        workers: Some(par::effective_workers(opts.workers)),
        histogram: dist.counts,
        elapsed_ms: Some(t0.elapsed().as_millis() as u64),
    })
}

/// Mean length of uniform solvable boards: the first `solvable_samples`
/// solvable boards in stream order, i.e. rejection sampling.
pub fn estimate_expected_length(
    n: usize,
    solvable_samples: u64,
    seed: u64,
    opts: &EstimateOptions,
) -> Result<(EstimateReport, LengthDistribution)> {
    check_size(n, 3)?;
    if solvable_samples == 0 {
        return Err(Error::Parameter("solvable_samples must be at least 1".into()));
    }
    let t0 = Instant::now();
    let mut dist = LengthDistribution::new(n);
    let mut next = 0u64;
    'rounds: while dist.solvable() < solvable_samples {
        let missing = solvable_samples - dist.solvable();
        let batch = (missing * 3).max(1024);
        for l in lengths(n, seed, opts.workers, next..next + batch) {
            dist.record(l);
            next += 1;
            if dist.solvable() == solvable_samples {
                break 'rounds;
            }
        }
    }
    let mean = dist.mean_length();
    let se = dist.length_std() / (solvable_samples as f64).sqrt();
    let report = EstimateReport {
        op: "expected-length".into(),
        variant: None,
        n,
        samples: dist.total,
        solvable_samples,
        estimate: mean,
        stderr: se,
        ci95: normal_interval(mean, se),
        seed,
        workers: Some(par::effective_workers(opts.workers)),
        histogram: dist.counts.clone(),
        elapsed_ms: Some(t0.elapsed().as_millis() as u64),
    };
    Ok((report, dist))
}

#[derive(Debug, Clone)]
pub struct SolvableSample {
    pub board: Board,
    pub length: usize,
    /// Stream index of the accepted board.
    pub stream: u64,
    /// Number of unsolvable boards drawn before it.
    pub rejections: u64,
}

/// Uniform draw from the solvable boards of size `n` by rejection.
pub fn sample_solvable_board(n: usize, seed: u64, max_attempts: u64) -> Result<SolvableSample> {
    check_size(n, 3)?;
    for stream in 0..max_attempts {
        if let Some(length) = sample_length(n, seed, stream) {
            let board = crate::board::random_board_stream(n, seed, stream)?;
            return Ok(SolvableSample {
                board,
                length,
                stream,
                rejections: stream,
            });
        }
    }
    Err(Error::BudgetExhausted {
        budget: max_attempts,
    })
}
