//! Seeded randomness.
//!
//! Every random object is drawn from a ChaCha8 keystream selected by a
//! `(seed, stream)` pair. Cell `k` of a board reads bits `3*(k % 10)..` of
//! keystream word `k / 10`, so a board is a pure function of
//! `(n, seed, stream)` and of nothing else, in particular not of the worker
//! count or the order in which samples are processed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::direction::Direction;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const CODES_PER_WORD: u32 = 10;

/// Sequential reader of 3-bit direction codes from a keystream.
pub struct CodeStream {
    rng: ChaCha8Rng,
    word: u32,
    left: u32,
}

impl CodeStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self::from_rng(stream_rng(seed, stream))
    }

    pub fn from_rng(rng: ChaCha8Rng) -> Self {
        CodeStream {
            rng,
            word: 0,
            left: 0,
        }
    }

    #[inline]
    pub fn next_code(&mut self) -> u8 {
        if self.left == 0 {
            self.word = self.rng.next_u32();
            self.left = CODES_PER_WORD;
        }
        let code = (self.word & 7) as u8;
        self.word >>= 3;
        self.left -= 1;
        code
    }

    #[inline]
    pub fn next_direction(&mut self) -> Direction {
        Direction::ALL[self.next_code() as usize]
    }

    pub fn fill(&mut self, out: &mut [Direction]) {
        for slot in out {
            *slot = self.next_direction();
        }
    }
}
