//! Variants of the game: torus boards, boards over the field with nine
//! elements, and three-dimensional cube boards.

pub mod cube;
pub mod f9;
pub mod torus;

pub use cube::{
    estimate_cube_stats, random_cube, solve_cube, CubeBoard, Direction3, Position3,
};
pub use f9::{dir_to_f9, f9_to_dir, gb_add, gb_mul, solve_generalized, GeneralizedBoard, F9};
pub use torus::{
    line_trace, solve_torus, torus_bound_check, torus_spiral, torus_targets, Line, LineKind,
    TorusBoard,
};
