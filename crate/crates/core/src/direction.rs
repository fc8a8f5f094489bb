//! The eight compass winds.
//!
//! Deltas use matrix convention: `N` decreases the row index and `E`
//! increases the column index. The numeric code of a direction is its
//! clockwise index starting from `N`, which is also the digit used by the
//! board text format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Direction {
    N = 0,
    NE = 1,
    E = 2,
    SE = 3,
    S = 4,
    SW = 5,
    W = 6,
    NW = 7,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    const DELTAS: [(i32, i32); 8] = [
        (-1, 0),
        (-1, 1),
        (0, 1),
        (1, 1),
        (1, 0),
        (1, -1),
        (0, -1),
        (-1, -1),
    ];

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn from_code(code: u8) -> Option<Direction> {
        Self::ALL.get(code as usize).copied()
    }

    /// Row and column step `(di, dj)`.
    #[inline]
    pub fn delta(self) -> (i32, i32) {
        Self::DELTAS[self as usize]
    }

    pub fn from_delta(di: i32, dj: i32) -> Option<Direction> {
        Self::DELTAS
            .iter()
            .position(|&d| d == (di, dj))
            .map(|k| Self::ALL[k])
    }

    /// Reflection through the NW-SE line: `(di, dj) -> (dj, di)`.
    pub fn transpose(self) -> Direction {
        let (di, dj) = self.delta();
        Self::from_delta(dj, di).expect("transposed delta is a unit step")
    }

    pub fn opposite(self) -> Direction {
        Self::ALL[(self as usize + 4) % 8]
    }

    pub fn is_diagonal(self) -> bool {
        (self as u8) % 2 == 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::N => "N",
            Direction::NE => "NE",
            Direction::E => "E",
            Direction::SE => "SE",
            Direction::S => "S",
            Direction::SW => "SW",
            Direction::W => "W",
            Direction::NW => "NW",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown direction {s:?}"))
    }
}
