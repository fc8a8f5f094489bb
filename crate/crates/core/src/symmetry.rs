//! Reflection, position-and-direction relabelings, rooted-graph isomorphism
//! and the falsification scan for board symmetries.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::board::{ray_len, Board};
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::graph::build_graph;
use crate::par;
use crate::rng::CodeStream;
use crate::solver::{shortest_length, MoveGraph};

/// Reflection through the main diagonal: `R(A)[i][j] = transpose(A[j][i])`.
pub fn reflect(board: &Board) -> Board {
    let n = board.n();
    let cells = (0..n * n)
        .map(|k| board.at((k % n) * n + k / n).transpose())
        .collect();
    Board::from_parts_unchecked(n, cells)
}

/// The action `S(A)[p] = tau(A[sigma(p)])`, with `sigma` on flat indices and
/// `tau` indexed by direction code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryCandidate {
    pub label: String,
    pub sigma: Vec<usize>,
    pub tau: [Direction; 8],
}

impl SymmetryCandidate {
    pub fn identity(n: usize) -> Self {
        SymmetryCandidate {
            label: "Id".into(),
            sigma: (0..n * n).collect(),
            tau: Direction::ALL,
        }
    }

    /// The reflection `R` as a candidate: `sigma(i,j) = (j,i)`, `tau = transpose`.
    pub fn reflection(n: usize) -> Self {
        SymmetryCandidate {
            label: "R".into(),
            sigma: (0..n * n).map(|k| (k % n) * n + k / n).collect(),
            tau: Direction::ALL.map(Direction::transpose),
        }
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.sigma.len()];
        let positions = self
            .sigma
            .iter()
            .all(|&s| s < seen.len() && !std::mem::replace(&mut seen[s], true));
        let mut dirs = [false; 8];
        let directions = self
            .tau
            .iter()
            .all(|d| !std::mem::replace(&mut dirs[d.code() as usize], true));
        positions && directions
    }

    /// The candidate acting as `self` after `other`: `self(other(A))`.
    pub fn compose(&self, other: &SymmetryCandidate) -> SymmetryCandidate {
        SymmetryCandidate {
            label: format!("{}*{}", self.label, other.label),
            sigma: self.sigma.iter().map(|&k| other.sigma[k]).collect(),
            tau: other.tau.map(|d| self.tau[d.code() as usize]),
        }
    }

    pub fn inverse(&self) -> SymmetryCandidate {
        let mut sigma = vec![0; self.sigma.len()];
        for (k, &s) in self.sigma.iter().enumerate() {
            sigma[s] = k;
        }
        let mut tau = Direction::ALL;
        for d in Direction::ALL {
            tau[self.tau[d.code() as usize].code() as usize] = d;
        }
        SymmetryCandidate {
            label: format!("{}^-1", self.label),
            sigma,
            tau,
        }
    }
}

pub fn apply_symmetry(cand: &SymmetryCandidate, board: &Board) -> Result<Board> {
    let n = board.n();
    if cand.size() != n * n {
        return Err(Error::SizeMismatch {
            left: cand.size(),
            right: n * n,
        });
    }
    let cells = cand
        .sigma
        .iter()
        .map(|&s| cand.tau[board.at(s).code() as usize])
        .collect();
    Ok(Board::from_parts_unchecked(n, cells))
}

/// Outcome of an isomorphism test. A witness maps each vertex of the first
/// graph to a vertex of the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism {
    Isomorphic(Vec<usize>),
    NotIsomorphic,
}

impl Isomorphism {
    pub fn holds(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }
}

pub const DEFAULT_ISO_BUDGET: u64 = 5_000_000;

struct Dense {
    size: usize,
    start: usize,
    goal: usize,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    adj: Vec<bool>,
}

impl Dense {
    fn new<G: MoveGraph + ?Sized>(g: &G) -> Self {
        let size = g.vertex_count();
        let mut out = vec![Vec::new(); size];
        let mut inc = vec![Vec::new(); size];
        let mut adj = vec![false; size * size];
        for (u, row) in out.iter_mut().enumerate() {
            g.push_targets(u, row);
            for &v in row.iter() {
                inc[v].push(u);
                adj[u * size + v] = true;
            }
        }
        Dense {
            size,
            start: g.start_vertex(),
            goal: g.goal_vertex(),
            out,
            inc,
            adj,
        }
    }

    fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.size + v]
    }

    fn distances(&self, from: usize, forward: bool) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.size];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let next = if forward { &self.out[v] } else { &self.inc[v] };
            for &t in next {
                if dist[t] == usize::MAX {
                    dist[t] = dist[v] + 1;
                    queue.push_back(t);
                }
            }
        }
        dist
    }
}

/// Colour refinement run jointly on both graphs so colour ids are shared.
fn refine(a: &Dense, b: &Dense) -> (Vec<usize>, Vec<usize>) {
    let seed = |g: &Dense| -> Vec<(usize, usize, usize, usize, bool, bool)> {
        let from_start = g.distances(g.start, true);
        let to_goal = g.distances(g.goal, false);
        (0..g.size)
            .map(|v| {
                (
                    g.out[v].len(),
                    g.inc[v].len(),
                    from_start[v],
                    to_goal[v],
                    v == g.start,
                    v == g.goal,
                )
            })
            .collect()
    };
    let (sa, sb) = (seed(a), seed(b));
    let mut ids = BTreeMap::new();
    for key in sa.iter().chain(&sb) {
        let next = ids.len();
        ids.entry(*key).or_insert(next);
    }
    let mut ca: Vec<usize> = sa.iter().map(|k| ids[k]).collect();
    let mut cb: Vec<usize> = sb.iter().map(|k| ids[k]).collect();
    let mut classes = ids.len();
    loop {
        let signature = |g: &Dense, c: &[usize], v: usize| {
            let mut outs: Vec<usize> = g.out[v].iter().map(|&t| c[t]).collect();
            let mut ins: Vec<usize> = g.inc[v].iter().map(|&t| c[t]).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            (c[v], outs, ins)
        };
        let fa: Vec<_> = (0..a.size).map(|v| signature(a, &ca, v)).collect();
        let fb: Vec<_> = (0..b.size).map(|v| signature(b, &cb, v)).collect();
        let mut ids = BTreeMap::new();
        for key in fa.iter().chain(&fb) {
            let next = ids.len();
            ids.entry(key.clone()).or_insert(next);
        }
        let na: Vec<usize> = fa.iter().map(|k| ids[k]).collect();
        let nb: Vec<usize> = fb.iter().map(|k| ids[k]).collect();
        let stable = ids.len() == classes;
        classes = ids.len();
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Rooted isomorphism between two move graphs: a bijection that maps start
/// to start, goal to goal and edges exactly onto edges.
///
/// Vertices are first coloured by out- and in-degree and by their distances
/// from the start and to the goal, then refined by neighbour colours;
/// backtracking only pairs vertices of equal colour. More than `budget`
/// search nodes yields [`Error::BudgetExhausted`].
pub fn graphs_isomorphic<G: MoveGraph + ?Sized, H: MoveGraph + ?Sized>(
    g: &G,
    h: &H,
    budget: u64,
) -> Result<Isomorphism> {
    let (a, b) = (Dense::new(g), Dense::new(h));
    if a.size != b.size {
        return Err(Error::SizeMismatch {
            left: a.size,
            right: b.size,
        });
    }
    let edges = |d: &Dense| d.out.iter().map(Vec::len).sum::<usize>();
    if edges(&a) != edges(&b) {
        return Ok(Isomorphism::NotIsomorphic);
    }
    let (ca, cb) = refine(&a, &b);
    if histogram(&ca) != histogram(&cb) {
        return Ok(Isomorphism::NotIsomorphic);
    }
    let class_size = histogram(&ca);
    let mut order: Vec<usize> = (0..a.size).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));
    let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..b.size {
        by_color.entry(cb[v]).or_default().push(v);
    }
    let mut search = Search {
        a: &a,
        b: &b,
        order: &order,
        candidates: &by_color,
        ca: &ca,
        map: vec![usize::MAX; a.size],
        used: vec![false; b.size],
        nodes: 0,
        budget,
    };
    if search.extend(0)? {
        Ok(Isomorphism::Isomorphic(search.map))
    } else {
        Ok(Isomorphism::NotIsomorphic)
    }
}

struct Search<'a> {
    a: &'a Dense,
    b: &'a Dense,
    order: &'a [usize],
    candidates: &'a HashMap<usize, Vec<usize>>,
    ca: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let u = self.order[depth];
        for &v in &self.candidates[&self.ca[u]] {
            if self.used[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                });
            }
            let consistent = self.order[..depth].iter().all(|&w| {
                let x = self.map[w];
                self.a.edge(u, w) == self.b.edge(v, x) && self.a.edge(w, u) == self.b.edge(x, v)
            }) && self.a.edge(u, u) == self.b.edge(v, v);
            if !consistent {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[v] = false;
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }
}

/// Whether the board graphs of `a` and `b` are isomorphic as double-rooted
/// graphs.
pub fn is_isomorphic(a: &Board, b: &Board, budget: u64) -> Result<Isomorphism> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    graphs_isomorphic(a, b, budget)
}

/// Check a claimed isomorphism edge for edge.
pub fn verify_isomorphism<G: MoveGraph + ?Sized, H: MoveGraph + ?Sized>(
    g: &G,
    h: &H,
    map: &[usize],
) -> bool {
    let size = g.vertex_count();
    if h.vertex_count() != size || map.len() != size {
        return false;
    }
    let mut hit = vec![false; size];
    if !map.iter().all(|&v| v < size && !std::mem::replace(&mut hit[v], true)) {
        return false;
    }
    if map[g.start_vertex()] != h.start_vertex() || map[g.goal_vertex()] != h.goal_vertex() {
        return false;
    }
    let (a, b) = (Dense::new(g), Dense::new(h));
    (0..size).all(|u| (0..size).all(|v| a.edge(u, v) == b.edge(map[u], map[v])))
}

/// The transpose map `(i,j) -> (j,i)` on flat indices.
pub fn transpose_map(n: usize) -> Vec<usize> {
    (0..n * n).map(|k| (k % n) * n + k / n).collect()
}

/// For every cell, the directions grouped by identical target sets. On a
/// plain board two directions coincide exactly when both rays are empty.
pub fn trivial_change_classes(board: &Board) -> Vec<Vec<Vec<Direction>>> {
    let n = board.n();
    (0..n * n)
        .map(|cell| {
            let mut dead = Vec::new();
            let mut classes = Vec::new();
            for d in Direction::ALL {
                if ray_len(n, cell, d) == 0 {
                    dead.push(d);
                } else {
                    classes.push(vec![d]);
                }
            }
            if !dead.is_empty() {
                classes.push(dead);
            }
            classes.sort_by_key(|c| c[0]);
            classes
        })
        .collect()
}

/// The eight symmetries of the square acting on boards: each moves cells
/// geometrically and rotates or reflects their arrows with them.
pub fn dihedral_candidates(n: usize) -> Vec<SymmetryCandidate> {
    type Linear = fn(i32, i32) -> (i32, i32);
    let maps: [(&str, Linear); 8] = [
        ("Id", |x, y| (x, y)),
        ("rot90", |x, y| (y, -x)),
        ("rot180", |x, y| (-x, -y)),
        ("rot270", |x, y| (-y, x)),
        ("flip-rows", |x, y| (-x, y)),
        ("flip-cols", |x, y| (x, -y)),
        ("R", |x, y| (y, x)),
        ("anti-R", |x, y| (-y, -x)),
    ];
    let c = (n / 2) as i32;
    maps.iter()
        .map(|&(label, g)| {
            // A board moved by g has at g(p) the arrow g(A[p]); as an
            // action S(A)[q] = tau(A[sigma(q)]) that is sigma = g^-1, tau = g.
            let mut sigma = vec![0; n * n];
            for p in 0..n * n {
                let (x, y) = ((p / n) as i32 - c, (p % n) as i32 - c);
                let (gx, gy) = g(x, y);
                let q = ((gx + c) as usize) * n + (gy + c) as usize;
                sigma[q] = p;
            }
            let tau = Direction::ALL.map(|d| {
                let (di, dj) = d.delta();
                let (a, b) = g(di, dj);
                Direction::from_delta(a, b).expect("linear part permutes unit steps")
            });
            SymmetryCandidate {
                label: label.into(),
                sigma,
                tau,
            }
        })
        .collect()
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The scan family: the dihedral candidates followed by every direction
/// permutation paired with the identity and with the transpose position
/// map, without duplicates.
pub fn scan_family(n: usize) -> Vec<SymmetryCandidate> {
    let mut family = dihedral_candidates(n);
    let mut seen: std::collections::HashSet<(Vec<usize>, [Direction; 8])> = family
        .iter()
        .map(|c| (c.sigma.clone(), c.tau))
        .collect();
    let sigmas = [
        ("id", (0..n * n).collect::<Vec<_>>()),
        ("T", transpose_map(n)),
    ];
    let mut perm: [u8; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
    loop {
        let tau = perm.map(|c| Direction::ALL[c as usize]);
        let code: String = perm.iter().map(|c| char::from(b'0' + c)).collect();
        for (name, sigma) in &sigmas {
            if seen.insert((sigma.clone(), tau)) {
                family.push(SymmetryCandidate {
                    label: format!("sigma={name},tau={code}"),
                    sigma: sigma.clone(),
                    tau,
                });
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    family
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub candidates: usize,
    pub survivors: Vec<String>,
    /// Candidates ruled out by solvability, length or degree multisets.
    pub eliminated_by_invariants: usize,
    /// Candidates ruled out only by the full isomorphism test.
    pub eliminated_by_isomorphism: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Survives,
    Invariant,
    Isomorphism,
}

fn invariants(b: &Board) -> (Option<usize>, Vec<usize>, Vec<usize>) {
    let g = build_graph(b);
    let mut out = g.out_degrees();
    let mut inc = g.in_degrees();
    out.sort_unstable();
    inc.sort_unstable();
    (shortest_length(b), out, inc)
}

fn judge(cand: &SymmetryCandidate, n: usize, samples: u64, seed: u64, stream: u64) -> Verdict {
    let mut codes = CodeStream::new(seed, stream);
    let mut cells = vec![Direction::N; n * n];
    for _ in 0..samples {
        codes.fill(&mut cells);
        let a = Board::from_parts_unchecked(n, cells.clone());
        let b = apply_symmetry(cand, &a).expect("family matches board size");
        if invariants(&a) != invariants(&b) {
            return Verdict::Invariant;
        }
        match is_isomorphic(&a, &b, DEFAULT_ISO_BUDGET) {
            Ok(Isomorphism::Isomorphic(_)) => {}
            // an undecided pair is not evidence either way; keep scanning
            Err(Error::BudgetExhausted { .. }) => {}
            _ => return Verdict::Isomorphism,
        }
    }
    Verdict::Survives
}

/// Candidates `S` for which `S(A)` is isomorphic to `A` on every sampled
/// board. Candidate `k` draws its boards from keystream `(seed, k)`.
/// Survival is evidence only.
pub fn symmetry_scan(
    n: usize,
    family: &[SymmetryCandidate],
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<ScanReport> {
    crate::error::check_size(n, 3)?;
    if let Some(bad) = family.iter().find(|c| c.size() != n * n || !c.is_bijective()) {
        return Err(Error::Parameter(format!(
            "candidate {} is not a bijection on a size-{n} board",
            bad.label
        )));
    }
    let verdicts = par::map_slice(workers, family, |k, cand| {
        judge(cand, n, samples, seed, k as u64)
    });
    let count = |v| verdicts.iter().filter(|&&x| x == v).count();
    Ok(ScanReport {
        n,
        samples,
        seed,
        candidates: family.len(),
        survivors: family
            .iter()
            .zip(&verdicts)
            .filter(|(_, &v)| v == Verdict::Survives)
            .map(|(c, _)| c.label.clone())
            .collect(),
        eliminated_by_invariants: count(Verdict::Invariant),
        eliminated_by_isomorphism: count(Verdict::Isomorphism),
    })
}
