//! Exact closed-form bounds and exact counts of short boards.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::board::{directs, Position};
use crate::direction::Direction;
use crate::error::{check_size, Error, Result};

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `(63/64)^(n-2)`, the probability that none of the independent
/// three-move routes through the top row is open.
fn miss_all_routes(n: usize) -> BigRational {
    num_traits::pow(ratio(63, 64), n - 2)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `(1/8) * (1 + 2 * (1 - (7/8)(63/64)^(n-2)))`.
pub fn solvable_probability_lower_bound(n: usize) -> Result<BigRational> {
    check_size(n, 3)?;
    let one = BigRational::one();
    let conditional = &one - ratio(7, 8) * miss_all_routes(n);
    Ok(ratio(1, 8) * (one + BigRational::from_integer(2.into()) * conditional))
}

/// Bounds on the length distribution of a uniform solvable board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthClassBounds {
    /// `P(length = 1) > 1/3`
    pub len1_lower: BigRational,
    /// `P(length = 2) > 5/32`
    pub len2_lower: BigRational,
    /// `P(length = 3) > (1 - q) * 49/96`
    pub len3_lower: BigRational,
    /// `P(length >= 4) < q * 49/96`
    pub tail_upper: BigRational,
}

impl LengthClassBounds {
    pub fn as_f64(&self) -> [f64; 4] {
        [
            to_f64(&self.len1_lower),
            to_f64(&self.len2_lower),
            to_f64(&self.len3_lower),
            to_f64(&self.tail_upper),
        ]
    }
}

pub fn length_class_bounds(n: usize) -> Result<LengthClassBounds> {
    check_size(n, 3)?;
    let q = miss_all_routes(n);
    let c = ratio(49, 96);
    Ok(LengthClassBounds {
        len1_lower: ratio(1, 3),
        len2_lower: ratio(5, 32),
        len3_lower: (BigRational::one() - &q) * &c,
        tail_upper: q * c,
    })
}

/// Which constant the upper chain of the expected-length bracket uses for
/// the length-3 and tail terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// `49/96` throughout, matching the class bounds.
    #[default]
    Consistent,
    /// `49/64` in the length-3 and tail terms. Its upper value tends to
    /// `1/3 + 5/16 + 147/64`, not 209/96.
    Printed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBracket {
    pub lower: BigRational,
    pub upper: BigRational,
    pub variant: BoundVariant,
}

impl LengthBracket {
    /// The upper value is informative only once it drops below the trivial
    /// bound `n^2 - 1` on any length.
    pub fn upper_is_informative(&self, n: usize) -> bool {
        self.upper < BigRational::from_integer(BigInt::from(n * n - 1))
    }
}

/// The 209/96 limit value as an exact rational.
pub fn limit_expected_length() -> BigRational {
    ratio(209, 96)
}

pub fn expected_length_bracket(n: usize, variant: BoundVariant) -> Result<LengthBracket> {
    check_size(n, 3)?;
    let q = miss_all_routes(n);
    let c96 = ratio(49, 96);
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let lower = ratio(1, 3)
        + &two * ratio(5, 32)
        + &three * (BigRational::one() - &q) * &c96;
    let c_tail = match variant {
        BoundVariant::Consistent => c96.clone(),
        BoundVariant::Printed => ratio(49, 64),
    };
    let n4 = BigRational::from_integer(BigInt::from(n).pow(4));
    let upper = (ratio(1, 3) + &q * &c96)
        + &two * (ratio(5, 32) + &q * &c96)
        + &three * &c_tail
        + n4 * &q * &c_tail;
    Ok(LengthBracket {
        lower,
        upper,
        variant,
    })
}

/// Exact number of size-`n` boards of length exactly `k`, for `k` in {1, 2}.
///
/// Only the cells that can matter are enumerated: the corner, and the cells
/// on its east and south rays that share a line with the center. (The
/// corner's diagonal ray already contains the center, so that branch has
/// length 1.) Every other cell contributes a free factor of 8.
pub fn count_short_boards(n: usize, k: usize) -> Result<BigUint> {
    check_size(n, 3)?;
    if !(1..=2).contains(&k) {
        return Err(Error::Parameter(format!("k must be 1 or 2, got {k}")));
    }
    let c = n.div_ceil(2);
    let start = Position::new(1, 1);
    let center = Position::new(c, c);
    let relevant: Vec<Position> = if k == 1 {
        vec![start]
    } else {
        let mut cells = vec![start];
        for t in 2..=n {
            for p in [Position::new(1, t), Position::new(t, 1)] {
                if collinear_with_center(p, center) {
                    cells.push(p);
                }
            }
        }
        cells
    };
    let r = relevant.len();
    let mut hits: u64 = 0;
    let mut assignment = vec![Direction::N; r];
    for code in 0..8u64.pow(r as u32) {
        let mut x = code;
        for slot in assignment.iter_mut() {
            *slot = Direction::ALL[(x % 8) as usize];
            x /= 8;
        }
        let direct = directs(assignment[0], start, center);
        let length = if direct {
            1
        } else {
            let two_step = relevant.iter().enumerate().skip(1).any(|(idx, &p)| {
                directs(assignment[0], start, p) && directs(assignment[idx], p, center)
            });
            if two_step {
                2
            } else {
                0
            }
        };
        if length == k {
            hits += 1;
        }
    }
    let free = BigUint::from(8u32).pow((n * n - r) as u32);
    Ok(BigUint::from(hits) * free)
}

fn collinear_with_center(p: Position, center: Position) -> bool {
    let di = p.i as i64 - center.i as i64;
    let dj = p.j as i64 - center.j as i64;
    di == 0 || dj == 0 || di.abs() == dj.abs()
}

impl LengthBracket {
    pub fn as_f64(&self) -> (f64, f64) {
        (to_f64(&self.lower), to_f64(&self.upper))
    }
}
