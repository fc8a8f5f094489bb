//! Monte Carlo estimators, exact enumeration and closed-form bounds for
//! random boards.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub mod bounds;
pub mod census;
pub mod estimate;

pub use bounds::{
    count_short_boards, expected_length_bracket, length_class_bounds,
    solvable_probability_lower_bound, BoundVariant, LengthBracket, LengthClassBounds,
};
pub use census::{exact_census, CensusOptions, CensusReport};
pub use estimate::{
    estimate_expected_length, estimate_solvable_probability, sample_solvable_board,
    EstimateOptions, SolvableSample,
};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

/// Result of a seeded Monte Carlo run.
///
/// The confidence interval is the normal approximation
/// `estimate ± 1.96 · stderr` unless the Wilson interval was requested.
/// `workers` and `elapsed_ms` describe the run rather than its result and
/// are dropped by [`EstimateReport::without_timing`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub n: usize,
    pub samples: u64,
    pub solvable_samples: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub ci95: [f64; 2],
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub histogram: BTreeMap<usize, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl EstimateReport {
    pub fn without_timing(mut self) -> Self {
        self.workers = None;
        self.elapsed_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Histogram as `length,count` CSV.
    pub fn histogram_csv(&self) -> String {
        histogram_csv(&self.histogram, None)
    }

    /// Number of standard errors separating the estimate from `value`.
    pub fn z_score(&self, value: f64) -> f64 {
        if self.stderr == 0.0 {
            if (self.estimate - value).abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.estimate - value) / self.stderr
        }
    }
}

pub(crate) fn histogram_csv(h: &BTreeMap<usize, u64>, unsolvable: Option<u64>) -> String {
    let mut out = String::from("length,count\n");
    for (len, count) in h {
        out.push_str(&format!("{len},{count}\n"));
    }
    if let Some(u) = unsolvable {
        out.push_str(&format!("unsolvable,{u}\n"));
    }
    out
}

/// Bernoulli proportion with its standard error.
pub fn proportion(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 0.0);
    }
    let p = successes as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

pub fn normal_interval(estimate: f64, stderr: f64) -> [f64; 2] {
    [estimate - Z95 * stderr, estimate + Z95 * stderr]
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> [f64; 2] {
    if trials == 0 {
        return [0.0, 1.0];
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    [center - half, center + half]
}

/// Exact or sampled distribution of board lengths.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LengthDistribution {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
    pub unsolvable: u64,
    pub total: u64,
}

impl LengthDistribution {
    pub fn new(n: usize) -> Self {
        LengthDistribution {
            n,
            ..Default::default()
        }
    }

    pub fn record(&mut self, length: Option<usize>) {
        self.total += 1;
        match length {
            Some(l) => *self.counts.entry(l).or_default() += 1,
            None => self.unsolvable += 1,
        }
    }

    pub fn merge(&mut self, other: &LengthDistribution) {
        for (&l, &c) in &other.counts {
            *self.counts.entry(l).or_default() += c;
        }
        self.unsolvable += other.unsolvable;
        self.total += other.total;
    }

    pub fn solvable(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, length: usize) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    /// Solvable count with length at least `length`.
    pub fn count_at_least(&self, length: usize) -> u64 {
        self.counts.range(length..).map(|(_, c)| c).sum()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn mean_length(&self) -> f64 {
        let s = self.solvable();
        if s == 0 {
            return f64::NAN;
        }
        let sum: u64 = self.counts.iter().map(|(&l, &c)| l as u64 * c).sum();
        sum as f64 / s as f64
    }

    /// Sample standard deviation of the length over solvable boards.
    pub fn length_std(&self) -> f64 {
        let s = self.solvable();
        if s < 2 {
            return 0.0;
        }
        let mean = self.mean_length();
        let ss: f64 = self
            .counts
            .iter()
            .map(|(&l, &c)| c as f64 * (l as f64 - mean).powi(2))
            .sum();
        (ss / (s - 1) as f64).sqrt()
    }

    pub fn is_consistent(&self) -> bool {
        self.solvable() + self.unsolvable == self.total
            && self
                .max_length()
                .is_none_or(|m| m < self.n * self.n)
    }

    pub fn to_csv(&self) -> String {
        histogram_csv(&self.counts, Some(self.unsolvable))
    }
}
