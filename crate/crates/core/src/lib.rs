//! Arrow boards: odd-size square grids of compass directions on which a
//! token starts in the top-left corner and tries to reach the center by
//! jumping along the arrow of its current cell.
//!
//! The crate covers the exact move relation and text formats ([`board`]),
//! breadth-first solving and graph closures ([`solver`]), board graphs and
//! their symmetries ([`graph`], [`symmetry`]), seeded Monte Carlo estimates
//! and exact enumeration ([`stats`]), long-board constructions and search
//! ([`extremal`]), and the torus, F9 and cube variants ([`extensions`]).

pub mod board;
pub mod direction;
pub mod error;
pub mod extensions;
pub mod extremal;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod solver;
pub mod stats;
pub mod symmetry;

pub use board::{
    parse_board, random_board, random_board_stream, serialize_board, Board, Game, Outcome,
    Position, Topology,
};
pub use direction::Direction;
pub use error::{Error, Result};
pub use solver::{solve, MoveGraph, SolveResult};
