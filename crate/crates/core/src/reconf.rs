//! 3SAT to labeled reconfiguration on a connected board with directions {S,E}.
//!
//! Variable tiles of every clause ride east along the top chamber of their
//! clause gadget. Round `j` (for variable `x_{n+1-j}`) is `E⁴` followed by
//! `S E` (true) or `E S` (false); the south press drops whichever tile stands
//! over the 1-wide gap at column `5n`, so a true round drops `x_i` tiles and
//! a false round drops `¬x_i` tiles. The south limiter allows at most `n`
//! south presses before its tile reaches the post assignment zone, and the
//! south forcer needs one south press inside every round's two-press window,
//! so every variable receives exactly one value.
//!
//! ```text
//! top chamber  ..x..x....................   row 0, wall past column 10n+2
//!                        |          t ee    gap at 5n; trap t, exits e
//!                        |          t  |
//! bottom chamber         ...............    then the staircase down to
//!                                      ..   the reconfiguration zone
//!                                       .......
//!                                         *  *  *   goal notches
//! ```
//!
//! After the rounds only east presses are allowed until the limiter tile
//! stands over its goal, which packs the remaining top tiles against the
//! wall. The closing south press drops the two eastmost into the exits; a
//! third is the westmost and falls into the trap. Clauses with fewer than
//! three distinct literals are padded with tiles seeded off the round
//! positions, which never drop.

use std::collections::BTreeMap;

use crate::grid::{Board, Cell, Configuration, DirSet};
use crate::sat::{CnfFormula, Literal};
use crate::search::ProblemInstance;

/// Label of the south limiter tile.
pub const LIMITER_TILE: &str = "L";
/// Goal notch offsets along the reconfiguration zone.
const NOTCHES: [usize; 3] = [2, 5, 8];
const ZONE_LEN: usize = 9;
/// Seed columns for padding tiles; never over the gap in a round window.
const PAD_COLUMNS: [usize; 4] = [3, 4, 8, 9];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfGadget {
    /// Local footprint; open cells belong to the gadget.
    pub footprint: Board,
    pub seed_tiles: BTreeMap<String, Cell>,
    pub goal_marks: BTreeMap<String, Cell>,
}

impl ReconfGadget {
    fn from_cells(cells: &[(usize, usize)], seeds: BTreeMap<String, Cell>, goals: BTreeMap<String, Cell>) -> Self {
        let h = cells.iter().map(|c| c.0).max().unwrap() + 1;
        let w = cells.iter().map(|c| c.1).max().unwrap() + 1;
        let mut footprint = Board::solid(h, w);
        for &(r, c) in cells {
            footprint.set_open(Cell::new(r, c));
        }
        ReconfGadget { footprint, seed_tiles: seeds, goal_marks: goals }
    }
}

/// Column of the gap under the top chamber.
pub fn assignment_column(n: usize) -> usize {
    5 * n
}

/// Easternmost top chamber column.
pub fn wall_column(n: usize) -> usize {
    10 * n + 2
}

/// East presses before the south press of round `j` (1-based) under `s_t`.
pub fn window_start(j: usize) -> usize {
    5 * j - 1
}

/// East presses before the closing south press; also the limiter's width.
pub fn closing_column(n: usize) -> usize {
    wall_column(n) + 2
}

pub fn staircase_steps(m: usize) -> usize {
    3 * (m - 1) + 2
}

/// Top chamber seed column of a literal tile.
pub fn seed_column(l: Literal) -> usize {
    5 * (l.var - 1) + usize::from(l.positive)
}

pub fn literal_label(m: usize, l: Literal) -> String {
    format!("c{m}{}{}", if l.positive { "p" } else { "n" }, l.var)
}

/// Room of `n+1` rows; the goal notch hangs under its east column and a dead
/// row runs under the rest. Any south press beyond the `n`-th before the
/// tile reaches column `C-1` drops it into the dead row.
pub fn make_south_limiter(n: usize) -> ReconfGadget {
    assert!(n >= 1);
    let c = closing_column(n);
    let mut cells: Vec<(usize, usize)> = (0..=n).flat_map(|r| (0..=c).map(move |col| (r, col))).collect();
    cells.extend((0..c - 1).map(|col| (n + 1, col)));
    cells.push((n + 1, c));
    let seeds = BTreeMap::from([(LIMITER_TILE.to_string(), Cell::new(0, 0))]);
    let goals = BTreeMap::from([(LIMITER_TILE.to_string(), Cell::new(n + 1, c))]);
    ReconfGadget::from_cells(&cells, seeds, goals)
}

/// One corridor per round with a pair of tiles on its west end and a 3-wide
/// gap under the round's window; a pair that passes the gap never comes back.
pub fn make_south_forcer(n: usize) -> ReconfGadget {
    assert!(n >= 1);
    let c = closing_column(n);
    let mut cells = Vec::new();
    let mut seeds = BTreeMap::new();
    let mut goals = BTreeMap::new();
    for j in 1..=n {
        let r = 3 * (j - 1);
        let g = window_start(j);
        cells.extend((0..=c).map(|col| (r, col)));
        cells.extend((g..g + 3).map(|col| (r + 1, col)));
        for (k, tag) in ["a", "b"].iter().enumerate() {
            let label = format!("F{j}{tag}");
            seeds.insert(label.clone(), Cell::new(r, k));
            goals.insert(label, Cell::new(r + 1, g + 1 + k));
        }
    }
    ReconfGadget::from_cells(&cells, seeds, goals)
}

/// Clause gadget for the `m`-th clause (1-based) of a formula on `n` variables.
pub fn make_clause_gadget(m: usize, n: usize, clause: &[Literal]) -> ReconfGadget {
    assert!(m >= 1 && n >= 1);
    assert!(clause.iter().all(|l| l.var >= 1 && l.var <= n), "literal out of range");
    let (x, a, r) = (wall_column(n), assignment_column(n), n + 3);
    let mut cells: Vec<(usize, usize)> = (0..=x).map(|c| (0, c)).collect();
    cells.extend([(1, a), (1, x - 2), (2, x - 2), (1, x - 1), (1, x)]);
    for row in 2..r {
        cells.extend([(row, a), (row, x)]);
    }
    // Bottom chamber, then the staircase.
    let xe = x + 2;
    cells.extend((a..=xe).map(|c| (r, c)));
    let k = staircase_steps(m);
    for i in 1..=k {
        cells.extend([(r + i, xe + i - 1), (r + i, xe + i)]);
    }
    let (zr, z0) = (r + k, xe + k);
    cells.extend((z0..=z0 + ZONE_LEN).map(|c| (zr, c)));
    cells.extend(NOTCHES.iter().map(|o| (zr + 1, z0 + o)));

    let mut by_col: BTreeMap<usize, String> = BTreeMap::new();
    for l in clause {
        by_col.entry(seed_column(*l)).or_insert_with(|| literal_label(m, *l));
    }
    for col in PAD_COLUMNS {
        if by_col.len() >= 3 {
            break;
        }
        by_col.entry(col).or_insert_with(|| format!("c{m}d{col}"));
    }
    // Westmost seed takes the eastmost notch.
    let mut seeds = BTreeMap::new();
    let mut goals = BTreeMap::new();
    for ((col, label), o) in by_col.into_iter().zip(NOTCHES.iter().rev()) {
        seeds.insert(label.clone(), Cell::new(0, col));
        goals.insert(label, Cell::new(zr + 1, z0 + o));
    }
    ReconfGadget::from_cells(&cells, seeds, goals)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfLayout {
    pub clause_gadgets: Vec<ReconfGadget>,
    pub south_limiter: ReconfGadget,
    pub south_forcer: ReconfGadget,
    /// Top-left corner of every gadget on the board: limiter, forcer, clauses.
    pub origins: Vec<Cell>,
    pub start: Configuration,
    pub target: Configuration,
}

/// Stacks the gadgets top to bottom, one blocked row apart, with their
/// northwest corners joined by an open connector down column 0. Tiles never
/// move west, so none enters the connector.
pub fn layout(f: &CnfFormula) -> ReconfLayout {
    let n = f.num_vars;
    let clause_gadgets: Vec<ReconfGadget> =
        f.clauses.iter().enumerate().map(|(i, c)| make_clause_gadget(i + 1, n, c)).collect();
    let south_limiter = make_south_limiter(n);
    let south_forcer = make_south_forcer(n);
    let all: Vec<&ReconfGadget> =
        [&south_limiter, &south_forcer].into_iter().chain(clause_gadgets.iter()).collect();

    let mut origins = Vec::with_capacity(all.len());
    let mut row = 0;
    for g in &all {
        origins.push(Cell::new(row, 1));
        row += g.footprint.height() + 1;
    }
    let height = row - 1;
    let width = all.iter().map(|g| g.footprint.width()).max().unwrap() + 1;
    let mut board = Board::solid(height, width);
    let shift = |o: Cell, c: Cell| Cell::new(o.row + c.row, o.col + c.col);
    let mut tiles = BTreeMap::new();
    let mut goals = BTreeMap::new();
    for (g, &o) in all.iter().zip(&origins) {
        for c in g.footprint.open_cells() {
            board.set_open(shift(o, c));
        }
        tiles.extend(g.seed_tiles.iter().map(|(k, c)| (k.clone(), shift(o, *c))));
        goals.extend(g.goal_marks.iter().map(|(k, c)| (k.clone(), shift(o, *c))));
    }
    for r in 0..=origins.last().unwrap().row {
        board.set_open(Cell::new(r, 0));
    }
    let start = Configuration { board: board.clone(), tiles };
    let target = Configuration { board, tiles: goals };
    ReconfLayout { clause_gadgets, south_limiter, south_forcer, origins, start, target }
}

pub fn compile_reconfiguration(f: &CnfFormula) -> ProblemInstance {
    let lay = layout(f);
    ProblemInstance::Reconfiguration { config: lay.start, target: lay.target, dirs: DirSet::SE }
}
