//! The double-rooted graph of a board and its degree analytics.

use std::fmt::Write as _;

use serde::Serialize;

use crate::board::{ray_indices, Board, Position};
use crate::direction::Direction;
use crate::error::{check_size, Result};
use crate::extremal::{extremal_degree_board, DegreeMode};
use crate::solver::MoveGraph;

/// Directed graph on the positions of a board, rooted at the start corner
/// and at the center. Vertices are flat row-major indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardGraph {
    n: usize,
    /// Out-neighbours of each vertex in ray order.
    adjacency: Vec<Vec<usize>>,
}

pub fn build_graph(board: &Board) -> BoardGraph {
    let n = board.n();
    let adjacency = (0..n * n)
        .map(|v| ray_indices(n, v, board.at(v)).collect())
        .collect();
    BoardGraph { n, adjacency }
}

impl BoardGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> Position {
        Position::new(1, 1)
    }

    pub fn end(&self) -> Position {
        let c = self.n.div_ceil(2);
        Position::new(c, c)
    }

    pub fn position(&self, v: usize) -> Position {
        Position::new(v / self.n + 1, v % self.n + 1)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Edges as `(from, to)` flat-index pairs, sources in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ts)| ts.iter().map(move |&v| (u, v)))
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.adjacency.len()];
        for (_, v) in self.edges() {
            d[v] += 1;
        }
        d
    }
}

impl MoveGraph for BoardGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn start_vertex(&self) -> usize {
        0
    }

    fn goal_vertex(&self) -> usize {
        let c = self.n / 2;
        c * self.n + c
    }

    fn push_targets(&self, v: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.adjacency[v]);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    pub position: Position,
    pub rule: &'static str,
    pub value: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
    /// Chebyshev distance of each vertex to the center.
    pub distance: Vec<usize>,
    pub edges: usize,
    pub violations: Vec<DegreeViolation>,
}

/// Degrees of every vertex, checked against
/// `(n-1)/2 - d(v) <= Out(v) <= (n-1)/2 + d(v)`, `Out(center) = (n-1)/2`,
/// `Out((1,1))` in `{0, n-1}` and `In(v) <= 4(n-1)`.
pub fn degree_report(board: &Board) -> DegreeReport {
    let g = build_graph(board);
    let n = board.n();
    let half = (n - 1) / 2;
    let out_degree = g.out_degrees();
    let in_degree = g.in_degrees();
    let distance: Vec<usize> = (0..n * n)
        .map(|v| board.position(v).center_distance(n))
        .collect();
    let mut violations = Vec::new();
    let mut flag = |v: usize, rule, value, bound| {
        violations.push(DegreeViolation {
            position: board.position(v),
            rule,
            value,
            bound,
        })
    };
    for v in 0..n * n {
        let (out, d) = (out_degree[v], distance[v]);
        if out + d < half {
            flag(v, "out-below", out, half - d);
        }
        if out > half + d {
            flag(v, "out-above", out, half + d);
        }
        if in_degree[v] > 4 * (n - 1) {
            flag(v, "in-above", in_degree[v], 4 * (n - 1));
        }
    }
    let center = board.center_index();
    if out_degree[center] != half {
        flag(center, "center-out", out_degree[center], half);
    }
    if out_degree[0] != 0 && out_degree[0] != n - 1 {
        flag(0, "start-out", out_degree[0], n - 1);
    }
    DegreeReport {
        n,
        edges: g.edge_count(),
        out_degree,
        in_degree,
        distance,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InDegreeReport {
    pub n: usize,
    pub bound: usize,
    pub max_in: usize,
    /// Vertices whose in-degree equals the bound.
    pub saturated: Vec<Position>,
    pub violations: Vec<String>,
}

impl InDegreeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `In(v) <= 4(n-1)`, and a vertex meeting the bound is the center with
/// out-degree `(n-1)/2`.
pub fn in_degree_constraint_check(board: &Board) -> InDegreeReport {
    let n = board.n();
    let report = degree_report(board);
    let bound = 4 * (n - 1);
    let mut saturated = Vec::new();
    let mut violations = Vec::new();
    for v in 0..n * n {
        let pos = board.position(v);
        let indeg = report.in_degree[v];
        if indeg > bound {
            violations.push(format!("In{pos} = {indeg} exceeds {bound}"));
        }
        if indeg == bound {
            saturated.push(pos);
            if report.distance[v] != 0 {
                violations.push(format!("In{pos} = {bound} but d{pos} = {}", report.distance[v]));
            }
            if report.out_degree[v] != (n - 1) / 2 {
                violations.push(format!(
                    "In{pos} = {bound} but Out{pos} = {}",
                    report.out_degree[v]
                ));
            }
        }
    }
    InDegreeReport {
        n,
        bound,
        max_in: report.in_degree.iter().copied().max().unwrap_or(0),
        saturated,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeTotals {
    pub n: usize,
    /// `(n-1)/2 + (n^2-1)(n-3)/6`
    pub min: u64,
    /// `(n-1)/2 + (n^2-1)(5n-3)/6`
    pub max: u64,
    /// Edge count of the constructed minimum-degree board.
    pub min_counted: u64,
    /// Edge count of the constructed maximum-degree board.
    pub max_counted: u64,
    /// `(n^3 - 3n^2 + 5n - 3)/6`, the printed closed form.
    pub printed_min: u64,
    /// `(5n^3 - 3n^2 + n - 3)/6`, the printed closed form.
    pub printed_max: u64,
}

impl EdgeTotals {
    pub fn counted_matches_closed_form(&self) -> bool {
        self.min == self.min_counted && self.max == self.max_counted
    }
}

/// Smallest and largest possible edge totals over all boards of size `n`.
///
/// The printed closed forms count the center's contribution as `n-1`; both
/// exceed the attained extremes by exactly `(n-1)/2`.
pub fn extremal_edge_totals(n: usize) -> Result<EdgeTotals> {
    check_size(n, 3)?;
    let m = n as u64;
    let half = (m - 1) / 2;
    let count = |mode| -> Result<u64> {
        Ok(build_graph(&extremal_degree_board(n, mode)?).edge_count() as u64)
    };
    Ok(EdgeTotals {
        n,
        min: half + (m * m - 1) * (m - 3) / 6,
        max: half + (m * m - 1) * (5 * m - 3) / 6,
        min_counted: count(DegreeMode::Min)?,
        max_counted: count(DegreeMode::Max)?,
        printed_min: (m * m * m + 5 * m - 3 * m * m - 3) / 6,
        printed_max: (5 * m * m * m + m - 3 * m * m - 3) / 6,
    })
}

fn node_id(p: Position) -> String {
    format!("\"{}_{}\"", p.i, p.j)
}

/// Graphviz DOT text. The start corner is drawn as a double circle and the
/// center as a filled double octagon.
pub fn export_dot(graph: &BoardGraph) -> String {
    let mut out = String::from("digraph board {\n");
    let (start, end) = (graph.start(), graph.end());
    for v in 0..graph.vertex_count() {
        let p = graph.position(v);
        let style = if p == start {
            ", shape=doublecircle"
        } else if p == end {
            ", shape=doubleoctagon, style=filled"
        } else {
            ""
        };
        writeln!(out, "  {} [label=\"{}\"{}];", node_id(p), p, style).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(
            out,
            "  {} -> {};",
            node_id(graph.position(u)),
            node_id(graph.position(v))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Number of vertices at each Chebyshev distance from the center.
pub fn distance_profile(n: usize) -> Vec<usize> {
    let mut counts = vec![0; n.div_ceil(2)];
    for i in 1..=n {
        for j in 1..=n {
            counts[Position::new(i, j).center_distance(n)] += 1;
        }
    }
    counts
}

/// Largest and smallest out-degree available to a cell over all eight
/// directions.
pub fn out_degree_range(n: usize, index: usize) -> (usize, usize) {
    let lens = Direction::ALL.map(|d| crate::board::ray_len(n, index, d));
    (
        *lens.iter().min().expect("eight directions"),
        *lens.iter().max().expect("eight directions"),
    )
}
