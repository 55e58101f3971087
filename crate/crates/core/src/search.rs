//! Breadth-first search over configurations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grid::{apply_sequence, step_indices, Board, Cell, Configuration, DirSet, Direction, StepScratch};
use crate::occupancy::OccupancyQuery;

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone)]
pub enum ProblemInstance {
    Occupancy(OccupancyQuery),
    Relocation { config: Configuration, tile: String, goal: Cell, dirs: DirSet },
    Reconfiguration { config: Configuration, target: Configuration, dirs: DirSet },
}

impl ProblemInstance {
    pub fn config(&self) -> &Configuration {
        match self {
            ProblemInstance::Occupancy(q) => &q.config,
            ProblemInstance::Relocation { config, .. } => config,
            ProblemInstance::Reconfiguration { config, .. } => config,
        }
    }

    pub fn dirs(&self) -> DirSet {
        match self {
            ProblemInstance::Occupancy(q) => q.dirs,
            ProblemInstance::Relocation { dirs, .. } => *dirs,
            ProblemInstance::Reconfiguration { dirs, .. } => *dirs,
        }
    }

    pub fn with_dirs(&self, dirs: DirSet) -> Self {
        let mut out = self.clone();
        match &mut out {
            ProblemInstance::Occupancy(q) => q.dirs = dirs,
            ProblemInstance::Relocation { dirs: d, .. } => *d = dirs,
            ProblemInstance::Reconfiguration { dirs: d, .. } => *d = dirs,
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        self.config().validate()?;
        if self.dirs().is_empty() {
            return Err(Error::Instance("empty direction set".into()));
        }
        let board = &self.config().board;
        let check_goal = |g: Cell| -> Result<()> {
            if !board.in_bounds(g) {
                return Err(Error::OutOfBounds(g));
            }
            if board.is_blocked(g) {
                return Err(Error::GoalBlocked(g));
            }
            Ok(())
        };
        match self {
            ProblemInstance::Occupancy(q) => check_goal(q.goal),
            ProblemInstance::Relocation { config, tile, goal, .. } => {
                if !config.tiles.contains_key(tile) {
                    return Err(Error::Instance(format!("unknown tile '{tile}'")));
                }
                check_goal(*goal)
            }
            ProblemInstance::Reconfiguration { config, target, .. } => {
                target.validate()?;
                if target.board != config.board {
                    return Err(Error::Instance("target board differs from start board".into()));
                }
                if !target.tiles.keys().eq(config.tiles.keys()) {
                    return Err(Error::Instance("target label set differs from start".into()));
                }
                Ok(())
            }
        }
    }

    /// Goal predicate on a configuration.
    pub fn is_goal(&self, c: &Configuration, labeled: bool) -> bool {
        match self {
            ProblemInstance::Occupancy(q) => c.tiles.values().any(|v| *v == q.goal),
            ProblemInstance::Relocation { tile, goal, .. } => c.tiles.get(tile) == Some(goal),
            ProblemInstance::Reconfiguration { target, .. } => {
                if labeled {
                    c.tiles == target.tiles
                } else {
                    c.same_occupancy(target)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Solvable(Vec<Direction>),
    Unsolvable,
    Exhausted(usize),
}

impl SolveResult {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveResult::Solvable(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub budget: usize,
    /// Enables the dead-state prunes; off gives the plain BFS oracle.
    pub prune: bool,
    /// Compare reconfiguration targets by label (default) or by occupancy only.
    pub labeled: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET, prune: true, labeled: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub expanded: usize,
    pub visited: usize,
}

pub fn solve(inst: &ProblemInstance) -> Result<SolveResult> {
    Ok(solve_with(inst, &SolveOptions::default())?.0)
}

/// Per-instance data the BFS needs in index form.
struct Compiled<'a> {
    board: &'a Board,
    dirs: Vec<Direction>,
    /// Target index per tile slot, or usize::MAX when unconstrained.
    target: Vec<usize>,
    /// Relocation tile slot and goal index.
    reloc: Option<(usize, usize)>,
    occupancy_goal: Option<usize>,
    labeled: bool,
    /// Cells from which the goal is statically reachable (relocation only).
    can_reach: Option<Vec<bool>>,
    /// Per tile slot, cells from which its labeled target is statically reachable.
    tile_reach: Vec<Vec<bool>>,
    south_east: bool,
}

impl Compiled<'_> {
    fn is_goal(&self, pos: &[usize]) -> bool {
        if let Some((slot, g)) = self.reloc {
            return pos[slot] == g;
        }
        if let Some(g) = self.occupancy_goal {
            return pos.contains(&g);
        }
        if self.labeled {
            pos == self.target.as_slice()
        } else {
            let mut a = pos.to_vec();
            let mut b = self.target.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
    }

    /// True when the state provably cannot lead to a goal.
    fn dead(&self, pos: &[usize]) -> bool {
        let w = self.board.width();
        if self.south_east {
            // Under {S,E} rows and columns never decrease.
            let past = |p: usize, t: usize| p / w > t / w || p % w > t % w;
            if let Some((slot, g)) = self.reloc {
                if past(pos[slot], g) {
                    return true;
                }
            } else if self.labeled && self.occupancy_goal.is_none() {
                if pos.iter().zip(&self.target).any(|(p, t)| past(*p, *t)) {
                    return true;
                }
            }
        }
        if pos.iter().zip(&self.tile_reach).any(|(p, reach)| !reach[*p]) {
            return true;
        }
        if let (Some((slot, g)), Some(reach)) = (self.reloc, &self.can_reach) {
            if !reach[pos[slot]] {
                return true;
            }
            if let Some(k) = pos.iter().position(|p| *p == g) {
                if k != slot && self.stuck_forever(pos, k) {
                    return true;
                }
            }
        }
        false
    }

    /// Greatest set of tiles that block each other (or sit against concrete)
    /// in every allowed direction; none of them can ever move again.
    fn stuck_forever(&self, pos: &[usize], k: usize) -> bool {
        let mut frozen = vec![true; pos.len()];
        loop {
            let mut changed = false;
            for t in 0..pos.len() {
                if !frozen[t] {
                    continue;
                }
                let free = self.dirs.iter().any(|d| match self.board.open_neighbor(pos[t], *d) {
                    None => false,
                    Some(n) => !pos.iter().zip(&frozen).any(|(p, f)| *f && *p == n),
                });
                if free {
                    frozen[t] = false;
                    changed = true;
                }
            }
            if !changed || !frozen[k] {
                return frozen[k];
            }
        }
    }
}

fn static_reach(board: &Board, goal: usize, dirs: &[Direction]) -> Vec<bool> {
    let mut seen = vec![false; board.len()];
    seen[goal] = true;
    let mut stack = vec![goal];
    while let Some(i) = stack.pop() {
        for d in dirs {
            if let Some(j) = board.open_neighbor(i, d.opposite()) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen
}

/// Shortest certificate by BFS; among equally short ones the lexicographically
/// smallest in N < E < S < W order.
pub fn solve_with(inst: &ProblemInstance, opts: &SolveOptions) -> Result<(SolveResult, SolveStats)> {
    inst.validate()?;
    let config = inst.config();
    let board = &config.board;
    let labels: Vec<&String> = config.tiles.keys().collect();
    let start: Vec<usize> = config.tiles.values().map(|c| board.index(*c)).collect();
    let dirs: Vec<Direction> = inst.dirs().iter().collect();
    let south_east = opts.prune && inst.dirs() == DirSet::SE;
    let mut comp = Compiled {
        board,
        dirs: dirs.clone(),
        target: vec![usize::MAX; start.len()],
        reloc: None,
        occupancy_goal: None,
        labeled: opts.labeled,
        can_reach: None,
        tile_reach: Vec::new(),
        south_east,
    };
    match inst {
        ProblemInstance::Occupancy(q) => comp.occupancy_goal = Some(board.index(q.goal)),
        ProblemInstance::Relocation { tile, goal, .. } => {
            let slot = labels.iter().position(|l| *l == tile).unwrap();
            let g = board.index(*goal);
            comp.reloc = Some((slot, g));
            if opts.prune {
                comp.can_reach = Some(static_reach(board, g, &dirs));
            }
        }
        ProblemInstance::Reconfiguration { target, .. } => {
            comp.target = target.tiles.values().map(|c| board.index(*c)).collect();
            if opts.prune && opts.labeled {
                comp.tile_reach = comp.target.iter().map(|t| static_reach(board, *t, &dirs)).collect();
            }
        }
    }

    let mut stats = SolveStats::default();
    if comp.is_goal(&start) {
        stats.visited = 1;
        return Ok((SolveResult::Solvable(Vec::new()), stats));
    }
    let n = start.len();
    let mut arena: Vec<usize> = start.clone();
    let mut parent: Vec<(u32, Direction)> = vec![(u32::MAX, Direction::N)];
    let mut index: HashMap<Box<[usize]>, u32> = HashMap::new();
    index.insert(start.clone().into_boxed_slice(), 0);
    if opts.prune && comp.dead(&start) {
        stats.visited = 1;
        return Ok((SolveResult::Unsolvable, stats));
    }
    let mut scratch = StepScratch::default();
    let mut next = vec![0usize; n];
    let mut head = 0usize;
    while head < parent.len() {
        let cur = head;
        head += 1;
        stats.expanded += 1;
        for &d in &dirs {
            next.copy_from_slice(&arena[cur * n..(cur + 1) * n]);
            step_indices(board, &mut next, d, &mut scratch);
            if next[..] == arena[cur * n..(cur + 1) * n] || index.contains_key(next.as_slice()) {
                continue;
            }
            if comp.is_goal(&next) {
                let mut seq = vec![d];
                let mut at = cur as u32;
                while at != 0 {
                    let (p, pd) = parent[at as usize];
                    seq.push(pd);
                    at = p;
                }
                seq.reverse();
                stats.visited = parent.len() + 1;
                return Ok((SolveResult::Solvable(seq), stats));
            }
            if opts.prune && comp.dead(&next) {
                continue;
            }
            if parent.len() >= opts.budget {
                stats.visited = parent.len();
                return Ok((SolveResult::Exhausted(opts.budget), stats));
            }
            let id = parent.len() as u32;
            index.insert(next.clone().into_boxed_slice(), id);
            arena.extend_from_slice(&next);
            parent.push((cur as u32, d));
        }
    }
    stats.visited = parent.len();
    Ok((SolveResult::Unsolvable, stats))
}

/// Upper bound on the shortest certificate length: n(l+w) for two orthogonal
/// directions, (nl+1)(w²+1) for three, none for four. With one direction the
/// two-direction bound applies a fortiori; opposite pairs get none.
pub fn depth_bound(inst: &ProblemInstance) -> Option<usize> {
    let c = inst.config();
    let (n, l, w) = (c.tiles.len(), c.board.height(), c.board.width());
    bound_for(inst.dirs(), n, l, w)
}

pub fn bound_for(dirs: DirSet, n: usize, l: usize, w: usize) -> Option<usize> {
    let has = |d| dirs.contains(d);
    match dirs.len() {
        1 => Some(n * (l + w)),
        2 if has(Direction::N) != has(Direction::S) => Some(n * (l + w)),
        3 => {
            // The missing direction fixes which axis is one-way; the other
            // axis is the one tiles may sweep back and forth.
            let vertical_pair = has(Direction::N) && has(Direction::S);
            let (l, w) = if vertical_pair { (w, l) } else { (l, w) };
            Some((n * l + 1) * (w * w + 1))
        }
        _ => None,
    }
}

/// Simulates `seq` and checks the instance's goal predicate.
pub fn verify_certificate(inst: &ProblemInstance, seq: &[Direction]) -> Result<bool> {
    inst.validate()?;
    if let Some(d) = seq.iter().find(|d| !inst.dirs().contains(**d)) {
        return Err(Error::Instance(format!("direction {} is not in the allowed set {}", d.as_char(), inst.dirs())));
    }
    let end = apply_sequence(inst.config(), seq);
    Ok(inst.is_goal(&end, true))
}
