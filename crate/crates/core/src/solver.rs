//! Breadth-first solving, reachability, condensation and the set of
//! achievable winning-game lengths.
//!
//! Everything here works on any [`MoveGraph`]: plain boards, torus boards,
//! generalized F9 boards and cube boards all reuse the same search.

use std::collections::{BTreeSet, VecDeque};

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::board::{ray_indices, Board, Position};

/// A finite directed graph with a start vertex and a goal vertex.
pub trait MoveGraph {
    fn vertex_count(&self) -> usize;
    fn start_vertex(&self) -> usize;
    fn goal_vertex(&self) -> usize;
    /// Append the out-neighbours of `v` to `out` in canonical order.
    fn push_targets(&self, v: usize, out: &mut Vec<usize>);
}

impl MoveGraph for Board {
    fn vertex_count(&self) -> usize {
        self.n() * self.n()
    }

    fn start_vertex(&self) -> usize {
        0
    }

    fn goal_vertex(&self) -> usize {
        self.center_index()
    }

    #[inline]
    fn push_targets(&self, v: usize, out: &mut Vec<usize>) {
        out.extend(ray_indices(self.n(), v, self.at(v)));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult<P> {
    pub solvable: bool,
    pub length: Option<usize>,
    pub witness: Option<Vec<P>>,
    pub visited_count: usize,
}

impl<P> SolveResult<P> {
    pub fn map_witness<Q>(self, f: impl FnMut(P) -> Q) -> SolveResult<Q> {
        SolveResult {
            solvable: self.solvable,
            length: self.length,
            witness: self.witness.map(|w| w.into_iter().map(f).collect()),
            visited_count: self.visited_count,
        }
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, k: usize) -> bool {
        self.0[k >> 6] >> (k & 63) & 1 == 1
    }

    /// Set bit `k`, returning whether it was previously clear.
    #[inline]
    fn insert(&mut self, k: usize) -> bool {
        let w = &mut self.0[k >> 6];
        let m = 1u64 << (k & 63);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }

    fn clear(&mut self) {
        self.0.iter_mut().for_each(|w| *w = 0);
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Shortest start-to-goal path as a vertex sequence.
///
/// Vertices are expanded FIFO and neighbours in canonical order; the search
/// stops as soon as the goal is discovered, which is the vertex and parent
/// it would have when first dequeued.
pub fn shortest_path<G: MoveGraph + ?Sized>(g: &G) -> SolveResult<usize> {
    let (start, goal) = (g.start_vertex(), g.goal_vertex());
    if start == goal {
        return SolveResult {
            solvable: true,
            length: Some(0),
            witness: Some(vec![start]),
            visited_count: 1,
        };
    }
    const UNSEEN: u32 = u32::MAX;
    let mut parent = vec![UNSEEN; g.vertex_count()];
    parent[start] = start as u32;
    let mut queue = VecDeque::from([start]);
    let mut visited = 1;
    let mut buf = Vec::new();
    while let Some(v) = queue.pop_front() {
        buf.clear();
        g.push_targets(v, &mut buf);
        for &t in &buf {
            if parent[t] != UNSEEN {
                continue;
            }
            parent[t] = v as u32;
            visited += 1;
            if t == goal {
                let mut path = vec![goal];
                let mut cur = goal;
                while cur != start {
                    cur = parent[cur] as usize;
                    path.push(cur);
                }
                path.reverse();
                return SolveResult {
                    solvable: true,
                    length: Some(path.len() - 1),
                    witness: Some(path),
                    visited_count: visited,
                };
            }
            queue.push_back(t);
        }
    }
    SolveResult {
        solvable: false,
        length: None,
        witness: None,
        visited_count: visited,
    }
}

/// Length of a shortest winning game, without building a witness.
pub fn shortest_length<G: MoveGraph + ?Sized>(g: &G) -> Option<usize> {
    let (start, goal) = (g.start_vertex(), g.goal_vertex());
    if start == goal {
        return Some(0);
    }
    let mut seen = Bits::new(g.vertex_count());
    seen.insert(start);
    let mut frontier = vec![start];
    let mut next = Vec::new();
    let mut buf = Vec::new();
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        next.clear();
        for &v in &frontier {
            buf.clear();
            g.push_targets(v, &mut buf);
            for &t in &buf {
                if seen.insert(t) {
                    if t == goal {
                        return Some(depth);
                    }
                    next.push(t);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    None
}

/// Solve a plain board.
pub fn solve(board: &Board) -> SolveResult<Position> {
    shortest_path(board).map_witness(|k| board.position(k))
}

/// Square boolean matrix over vertices; entry `(u, v)` is true when a
/// directed path of length at least one leads from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachMatrix {
    size: usize,
    cells: Vec<bool>,
}

impl ReachMatrix {
    pub fn new(size: usize) -> Self {
        ReachMatrix {
            size,
            cells: vec![false; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.cells[u * self.size + v]
    }

    pub fn set(&mut self, u: usize, v: usize, value: bool) {
        self.cells[u * self.size + v] = value;
    }

    pub fn all_true(&self) -> bool {
        self.cells.iter().all(|&b| b)
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }
}

/// Raw graph reachability from every vertex (the goal keeps its out-edges).
pub fn reachability_closure<G: MoveGraph + ?Sized>(g: &G) -> ReachMatrix {
    let size = g.vertex_count();
    let mut m = ReachMatrix::new(size);
    let mut seen = Bits::new(size);
    let mut stack = Vec::new();
    let mut buf = Vec::new();
    for u in 0..size {
        seen.clear();
        stack.clear();
        stack.push(u);
        while let Some(v) = stack.pop() {
            buf.clear();
            g.push_targets(v, &mut buf);
            for &t in &buf {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        for v in seen.iter() {
            m.set(u, v, true);
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condensation {
    /// Component id of each vertex.
    pub component: Vec<usize>,
    pub components: usize,
    /// Deduplicated edges between distinct components.
    pub dag_edges: Vec<(usize, usize)>,
}

impl Condensation {
    pub fn is_point(&self) -> bool {
        self.components == 1
    }
}

pub fn condensation<G: MoveGraph + ?Sized>(g: &G) -> Condensation {
    let size = g.vertex_count();
    let mut graph = DiGraph::<(), ()>::with_capacity(size, 0);
    let nodes: Vec<_> = (0..size).map(|_| graph.add_node(())).collect();
    let mut buf = Vec::new();
    for v in 0..size {
        buf.clear();
        g.push_targets(v, &mut buf);
        for &t in &buf {
            graph.add_edge(nodes[v], nodes[t], ());
        }
    }
    let sccs = tarjan_scc(&graph);
    let mut component = vec![0; size];
    for (c, scc) in sccs.iter().enumerate() {
        for node in scc {
            component[node.index()] = c;
        }
    }
    let mut edges = BTreeSet::new();
    for e in graph.raw_edges() {
        let (a, b) = (component[e.source().index()], component[e.target().index()]);
        if a != b {
            edges.insert((a, b));
        }
    }
    let dag_edges: Vec<_> = edges.into_iter().collect();
    let mut dag = DiGraph::<(), ()>::new();
    let cnodes: Vec<_> = (0..sccs.len()).map(|_| dag.add_node(())).collect();
    for &(a, b) in &dag_edges {
        dag.add_edge(cnodes[a], cnodes[b], ());
    }
    assert!(toposort(&dag, None).is_ok(), "condensation must be acyclic");
    Condensation {
        component,
        components: sccs.len(),
        dag_edges,
    }
}

/// Whether every position can reach every position.
pub fn is_all_to_all<G: MoveGraph + ?Sized>(g: &G) -> bool {
    condensation(g).is_point()
}

/// Every `k <= cap` such that some game reaches the goal in exactly `k`
/// turns without touching the goal earlier. The goal's out-edges are
/// dropped, and walks may otherwise revisit vertices.
pub fn winning_lengths<G: MoveGraph + ?Sized>(g: &G, cap: usize) -> BTreeSet<usize> {
    let size = g.vertex_count();
    let (start, goal) = (g.start_vertex(), g.goal_vertex());
    let mut lengths = BTreeSet::new();
    let mut current = Bits::new(size);
    current.insert(start);
    let mut next = Bits::new(size);
    let mut buf = Vec::new();
    for k in 1..=cap {
        next.clear();
        let mut any = false;
        for v in current.iter() {
            if v == goal {
                continue;
            }
            buf.clear();
            g.push_targets(v, &mut buf);
            for &t in &buf {
                next.insert(t);
                any = true;
            }
        }
        if !any {
            break;
        }
        if next.get(goal) {
            lengths.insert(k);
        }
        std::mem::swap(&mut current, &mut next);
    }
    lengths
}
