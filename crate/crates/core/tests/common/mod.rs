//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tilt::grid::{step, Board, Cell, Configuration, DirSet, Direction, GeometryClass};
use tilt::sat::{CnfFormula, Literal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const LABELS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// Random board up to `max_h`×`max_w` with about `fill` blocked and at most
/// `max_tiles` single-letter tiles; `None` when no cell is open.
pub fn random_config(r: &mut impl Rng, max_h: usize, max_w: usize, max_tiles: usize, fill: f64) -> Option<Configuration> {
    let (h, w) = (r.gen_range(1..=max_h), r.gen_range(1..=max_w));
    let blocked: Vec<Cell> =
        (0..h).flat_map(|row| (0..w).map(move |col| Cell::new(row, col))).filter(|_| r.gen_bool(fill)).collect();
    let board = Board::from_blocked(h, w, blocked).ok()?;
    let mut open: Vec<Cell> = board.open_cells().collect();
    if open.is_empty() {
        return None;
    }
    open.shuffle(r);
    let k = r.gen_range(0..=max_tiles.min(open.len()));
    let tiles = open[..k]
        .iter()
        .enumerate()
        .map(|(i, c)| ((LABELS[i] as char).to_string(), *c))
        .collect();
    Some(Configuration::new(board, tiles).unwrap())
}

fn key(c: &Configuration) -> Vec<(String, Cell)> {
    c.tiles.iter().map(|(k, v)| (k.clone(), *v)).collect()
}

/// Every configuration reachable from `start`, by plain BFS over `step`.
pub fn reachable(start: &Configuration, dirs: DirSet, limit: usize) -> Option<Vec<Configuration>> {
    let mut seen: HashSet<Vec<(String, Cell)>> = HashSet::from([key(start)]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        for d in dirs.iter() {
            let n = step(&c, d);
            if seen.insert(key(&n)) {
                if out.len() >= limit {
                    return None;
                }
                out.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    Some(out)
}

/// Shortest number of steps to a configuration satisfying `goal`.
pub fn shortest(start: &Configuration, dirs: DirSet, goal: impl Fn(&Configuration) -> bool) -> Option<usize> {
    let mut seen: HashSet<Vec<(String, Cell)>> = HashSet::from([key(start)]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        if goal(&c) {
            return Some(d);
        }
        for dir in dirs.iter() {
            let n = step(&c, dir);
            if seen.insert(key(&n)) {
                queue.push_back((n, d + 1));
            }
        }
    }
    None
}

/// Union-find over cell indices.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

fn contiguous(line: &[bool]) -> bool {
    match (line.iter().position(|x| *x), line.iter().rposition(|x| *x)) {
        (Some(a), Some(b)) => line[a..=b].iter().all(|x| *x),
        _ => true,
    }
}

/// Classification straight from the definitions, using union-find over a
/// board padded with a blocked ring that stands for the exterior.
pub fn classify_oracle(b: &Board) -> GeometryClass {
    let (h, w) = (b.height(), b.width());
    let (ph, pw) = (h + 2, w + 2);
    let blocked = |r: usize, c: usize| r == 0 || c == 0 || r == ph - 1 || c == pw - 1 || b.is_blocked(Cell::new(r - 1, c - 1));
    let mut dsu = Dsu::new(ph * pw);
    for r in 0..ph {
        for c in 0..pw {
            for (dr, dc) in [(0, 1), (1, 0)] {
                let (r2, c2) = (r + dr, c + dc);
                if r2 < ph && c2 < pw && blocked(r, c) == blocked(r2, c2) {
                    dsu.union(r * pw + c, r2 * pw + c2);
                }
            }
        }
    }
    let open: Vec<usize> = (0..ph * pw).filter(|i| !blocked(i / pw, i % pw)).collect();
    if open.is_empty() {
        return GeometryClass::Disconnected;
    }
    let root = dsu.find(open[0]);
    if open.iter().any(|i| dsu.find(*i) != root) {
        return GeometryClass::Disconnected;
    }
    let exterior = dsu.find(0);
    if (0..ph * pw).any(|i| blocked(i / pw, i % pw) && dsu.find(i) != exterior) {
        return GeometryClass::Connected;
    }
    let row = |r: usize| (0..w).map(|c| b.is_open(Cell::new(r, c))).collect::<Vec<_>>();
    let col = |c: usize| (0..h).map(|r| b.is_open(Cell::new(r, c))).collect::<Vec<_>>();
    let rows = (0..h).all(|r| contiguous(&row(r)));
    let cols = (0..w).all(|c| contiguous(&col(c)));
    match (rows, cols) {
        (false, false) => GeometryClass::Simple,
        (true, false) | (false, true) => GeometryClass::Monotone,
        (true, true) => {
            let cells: Vec<Cell> = b.open_cells().collect();
            let rs = cells.iter().map(|c| c.row);
            let cs = cells.iter().map(|c| c.col);
            let area = (rs.clone().max().unwrap() - rs.min().unwrap() + 1) * (cs.clone().max().unwrap() - cs.min().unwrap() + 1);
            if area == cells.len() {
                GeometryClass::Rectangular
            } else {
                GeometryClass::Convex
            }
        }
    }
}

fn lit(x: i32) -> Literal {
    if x > 0 {
        Literal::pos(x as usize)
    } else {
        Literal::neg((-x) as usize)
    }
}

fn formula(n: usize, clauses: &[[i32; 3]]) -> CnfFormula {
    CnfFormula::new(n, clauses.iter().map(|c| [lit(c[0]), lit(c[1]), lit(c[2])]).collect()).unwrap()
}

type Canon = Vec<[i32; 3]>;

fn canonical(n: usize, f: &[[i32; 3]]) -> Canon {
    let perms: Vec<Vec<i32>> = match n {
        1 => vec![vec![1]],
        _ => vec![vec![1, 2], vec![2, 1]],
    };
    let mut best: Option<Canon> = None;
    for p in &perms {
        for signs in 0..(1 << n) {
            let map = |x: i32| {
                let v = x.unsigned_abs() as usize - 1;
                let s = if signs >> v & 1 == 1 { -1 } else { 1 };
                p[v] * s * x.signum()
            };
            let mut g: Canon = f
                .iter()
                .map(|c| {
                    let mut c = c.map(map);
                    c.sort();
                    c
                })
                .collect();
            g.sort();
            if best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
    }
    best.unwrap()
}

/// All formulas over N ≤ 2 variables with one or two clauses, clauses taken
/// as literal multisets and formulas as clause multisets, one representative
/// per orbit under variable permutation and sign flips. Variables may go
/// unused.
pub fn canonical_suite() -> Vec<CnfFormula> {
    let mut out: BTreeMap<(usize, Canon), ()> = BTreeMap::new();
    for n in 1..=2usize {
        let mut lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
        lits.sort();
        let mut clauses = Vec::new();
        for i in 0..lits.len() {
            for j in i..lits.len() {
                for k in j..lits.len() {
                    clauses.push([lits[i], lits[j], lits[k]]);
                }
            }
        }
        for a in 0..clauses.len() {
            out.insert((n, canonical(n, &[clauses[a]])), ());
            for b in a..clauses.len() {
                out.insert((n, canonical(n, &[clauses[a], clauses[b]])), ());
            }
        }
    }
    out.into_keys().map(|(n, f)| formula(n, &f)).collect()
}

/// Twenty single-clause formulas over three variables from a fixed seed.
pub fn random_suite() -> Vec<CnfFormula> {
    let mut r = rng(7);
    (0..20)
        .map(|_| {
            let c: [i32; 3] = std::array::from_fn(|_| r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 });
            formula(3, &[c])
        })
        .collect()
}

pub fn desk_suite() -> Vec<CnfFormula> {
    let mut v = canonical_suite();
    v.extend(random_suite());
    v
}

pub fn all_dirs() -> Vec<Direction> {
    Direction::ALL.to_vec()
}
