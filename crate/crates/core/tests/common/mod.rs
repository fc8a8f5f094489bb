//! Brute-force reference computations shared by the integration tests.
//!
//! Nothing here touches the library's ray iterators, solver or oracle
//! module: adjacency is rebuilt from direction codes and coordinates alone.

#![allow(dead_code)]

use windrose::Board;

/// `(di, dj)` for direction codes 0..8, clockwise from north.
pub const DELTAS: [(i64, i64); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

/// Does the arrow with `code` at `(i, j)` point at `(k, l)` on a plain board?
pub fn points_at(code: u8, (i, j): (i64, i64), (k, l): (i64, i64)) -> bool {
    let (di, dj) = DELTAS[code as usize];
    let (ei, ej) = (k - i, l - j);
    if (ei, ej) == (0, 0) {
        return false;
    }
    // Same ray iff (ei, ej) = t * (di, dj) for some integer t >= 1.
    let t = if di != 0 { ei / di } else { ej / dj };
    t >= 1 && ei == t * di && ej == t * dj
}

/// Same predicate with both coordinates taken mod n along the line.
pub fn points_at_torus(n: i64, code: u8, (i, j): (i64, i64), (k, l): (i64, i64)) -> bool {
    let (di, dj) = DELTAS[code as usize];
    (1..n).any(|t| (i + t * di).rem_euclid(n) == k && (j + t * dj).rem_euclid(n) == l)
}

pub struct Reference {
    pub size: usize,
    pub start: usize,
    pub goal: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Reference {
    pub fn plain(board: &Board) -> Self {
        Self::build(board, points_at)
    }

    pub fn torus(board: &Board) -> Self {
        let n = board.n() as i64;
        Self::build(board, move |code, a, b| points_at_torus(n, code, a, b))
    }

    fn build(board: &Board, pred: impl Fn(u8, (i64, i64), (i64, i64)) -> bool) -> Self {
        let n = board.n();
        let size = n * n;
        let coords = |v: usize| ((v / n) as i64, (v % n) as i64);
        let adj = (0..size)
            .map(|u| {
                let code = board.cells()[u].code();
                (0..size).map(|v| pred(code, coords(u), coords(v))).collect()
            })
            .collect();
        Reference {
            size,
            start: 0,
            goal: (n / 2) * n + n / 2,
            adj,
        }
    }

    pub fn from_adjacency(adj: Vec<Vec<bool>>, start: usize, goal: usize) -> Self {
        Reference {
            size: adj.len(),
            start,
            goal,
            adj,
        }
    }

    /// All-pairs shortest path lengths (at least one step) by Floyd-Warshall.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let s = self.size;
        let mut d: Vec<Vec<Option<usize>>> = self
            .adj
            .iter()
            .map(|row| row.iter().map(|&e| e.then_some(1)).collect())
            .collect();
        for k in 0..s {
            for i in 0..s {
                let Some(ik) = d[i][k] else { continue };
                for j in 0..s {
                    if let Some(kj) = d[k][j] {
                        if d[i][j].is_none_or(|cur| ik + kj < cur) {
                            d[i][j] = Some(ik + kj);
                        }
                    }
                }
            }
        }
        d
    }

    pub fn shortest(&self) -> Option<usize> {
        if self.start == self.goal {
            return Some(0);
        }
        self.distances()[self.start][self.goal]
    }

    /// Exact game lengths up to `cap`, stepping a reachable set that never
    /// leaves the goal once it is entered.
    pub fn winning_lengths(&self, cap: usize) -> Vec<usize> {
        let mut current = vec![false; self.size];
        current[self.start] = true;
        let mut out = Vec::new();
        for k in 1..=cap {
            let mut next = vec![false; self.size];
            for u in (0..self.size).filter(|&u| current[u] && u != self.goal) {
                for v in 0..self.size {
                    next[v] |= self.adj[u][v];
                }
            }
            if next[self.goal] {
                out.push(k);
            }
            current = next;
        }
        out
    }

    /// Mutual-reachability classes as a canonical labelling: each vertex is
    /// mapped to the smallest vertex in its class.
    pub fn strong_classes(&self) -> Vec<usize> {
        let d = self.distances();
        (0..self.size)
            .map(|u| {
                (0..self.size)
                    .find(|&v| v == u || (d[u][v].is_some() && d[v][u].is_some()))
                    .unwrap()
            })
            .collect()
    }
}

/// Relabel component ids to the smallest member, for comparison with
/// [`Reference::strong_classes`].
pub fn canonical_classes(component: &[usize]) -> Vec<usize> {
    component
        .iter()
        .map(|c| component.iter().position(|x| x == c).unwrap())
        .collect()
}
