//! Dense-matrix reference computations.
//!
//! These deliberately avoid the ray walking and BFS used by the solver:
//! adjacency comes from the clause-wise directing-to predicate, reachability
//! from Warshall's triple loop, and lengths from boolean matrix powers.
//! They are quadratic-to-cubic in the vertex count and meant for
//! cross-checking small boards.

use crate::board::{directs, Board};
use crate::solver::MoveGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    pub size: usize,
    pub start: usize,
    pub goal: usize,
    pub adj: Vec<Vec<bool>>,
}

impl DenseGraph {
    pub fn from_board(board: &Board) -> Self {
        let size = board.n() * board.n();
        let mut adj = vec![vec![false; size]; size];
        for (u, row) in adj.iter_mut().enumerate() {
            let from = board.position(u);
            let dir = board.at(u);
            for (v, cell) in row.iter_mut().enumerate() {
                *cell = u != v && directs(dir, from, board.position(v));
            }
        }
        DenseGraph {
            size,
            start: 0,
            goal: board.center_index(),
            adj,
        }
    }

    pub fn from_move_graph<G: MoveGraph + ?Sized>(g: &G) -> Self {
        let size = g.vertex_count();
        let mut adj = vec![vec![false; size]; size];
        let mut buf = Vec::new();
        for (u, row) in adj.iter_mut().enumerate() {
            buf.clear();
            g.push_targets(u, &mut buf);
            for &v in &buf {
                row[v] = true;
            }
        }
        DenseGraph {
            size,
            start: g.start_vertex(),
            goal: g.goal_vertex(),
            adj,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|&&b| b).count()
    }
}

/// Transitive closure (paths of length >= 1) by Warshall's algorithm.
pub fn warshall_closure(g: &DenseGraph) -> Vec<Vec<bool>> {
    let mut r = g.adj.clone();
    for k in 0..g.size {
        for i in 0..g.size {
            if r[i][k] {
                for j in 0..g.size {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn bool_step(row: &[bool], adj: &[Vec<bool>], skip: Option<usize>) -> Vec<bool> {
    let size = row.len();
    let mut out = vec![false; size];
    for (u, &on) in row.iter().enumerate() {
        if !on || Some(u) == skip {
            continue;
        }
        for v in 0..size {
            out[v] |= adj[u][v];
        }
    }
    out
}

/// Shortest start-to-goal distance from successive boolean powers of the
/// adjacency matrix, with solvability decided by the Warshall closure.
pub fn shortest_length(g: &DenseGraph) -> Option<usize> {
    if g.start == g.goal {
        return Some(0);
    }
    if !warshall_closure(g)[g.start][g.goal] {
        return None;
    }
    let mut row = vec![false; g.size];
    row[g.start] = true;
    for k in 1..g.size {
        row = bool_step(&row, &g.adj, None);
        if row[g.goal] {
            return Some(k);
        }
    }
    unreachable!("closure says reachable but no power within size-1 steps")
}

/// Exact game lengths up to `cap` from powers of the adjacency matrix with
/// the goal's out-edges removed.
pub fn winning_lengths(g: &DenseGraph, cap: usize) -> Vec<usize> {
    let mut row = vec![false; g.size];
    row[g.start] = true;
    let mut out = Vec::new();
    for k in 1..=cap {
        row = bool_step(&row, &g.adj, Some(g.goal));
        if row[g.goal] {
            out.push(k);
        }
    }
    out
}
