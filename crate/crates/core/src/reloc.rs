//! 3SAT to relocation on a monotone board with directions {S,E}.
//!
//! Every gadget but the Goal is the base lane below plus optional pockets.
//! Gadgets are bound foot-to-head into a single staircase chain
//! `⟨G_A, G_F, S_V⟩`: the assignment section carrying the relocation tile,
//! one clause chain per clause, and the validation section ending in the Goal.
//!
//! ```text
//! h . . .      h=(0,0) a=(1,0) b=(1,1) c=(1,2) d=(1,3) e=(2,3) f=(3,3)
//! a b c d
//! . . . e
//! . . . f
//! ```
//!
//! All tiles, the relocation tile included, start on lane heads and therefore
//! advance in lockstep, one gadget per round. A round is the transit word
//! `S E³ S²` optionally flagged by an extra `S` while tiles stand on `a` (true
//! word `S² E³ S²`) or on `b` (false word `S E S E² S²`). Positive, Negative
//! and Notch gadgets open the pockets under `a`, `b` or both; a flagged press
//! drops a tile standing above into the pocket for good.
//!
//! The Goal replaces the lane after `b` with a store row of `N` cells and a
//! drop to location `b` under lane cell `b`:
//!
//! ```text
//! h
//! a b
//! . . s s ..   store row (2, 0..N+2); s = store cells
//!   b          location b = (3,1)
//! ```
//!
//! A validation tile under the true or false word ends in the store; under
//! both flags, or under the transit word, it drops to location b. The store
//! holds exactly `N` tiles, so any tile beyond the `N` validators ends on b.

use std::collections::BTreeMap;

use crate::grid::{Board, Cell, Configuration, DirSet};
use crate::sat::{CnfFormula, Literal};
use crate::search::ProblemInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Start,
    Assignment,
    Positive,
    Negative,
    Buffer,
    Notch,
    Goal(usize),
}

/// Label of the relocation tile.
pub const RELOCATION_TILE: &str = "r";
/// Goal mark of the relocation tile's target inside the Goal gadget.
pub const GOAL_MARK: &str = "b";
/// Start mark of the relocation tile inside the Start gadget.
pub const START_MARK: &str = "a";

/// Lane cells shared by every gadget but the Goal, foot last.
const LANE: [(usize, usize); 7] = [(0, 0), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3), (3, 3)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    /// Local footprint; open cells belong to the gadget.
    pub footprint: Board,
    pub head: Cell,
    /// `None` for the Goal, which ends the chain.
    pub foot: Option<Cell>,
    pub seed_tiles: BTreeMap<String, Cell>,
    pub goal_marks: BTreeMap<String, Cell>,
}

impl Gadget {
    pub fn open_cells(&self) -> Vec<Cell> {
        self.footprint.open_cells().collect()
    }

    /// Row and column shift from head to foot.
    pub fn displacement(&self) -> (usize, usize) {
        let f = self.foot.expect("gadget has a foot");
        (f.row - self.head.row, f.col - self.head.col)
    }
}

/// Cells in the Goal's validator store: one per variable.
pub fn goal_store_len(n: usize) -> usize {
    n
}

pub fn make_gadget(kind: GadgetKind) -> Gadget {
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut foot = Some(Cell::new(3, 3));
    let mut marks = BTreeMap::new();
    let mut seeds = BTreeMap::new();
    match kind {
        GadgetKind::Start | GadgetKind::Assignment => {
            cells.extend(LANE);
            if kind == GadgetKind::Start {
                marks.insert(START_MARK.to_string(), Cell::new(0, 0));
                seeds.insert(RELOCATION_TILE.to_string(), Cell::new(0, 0));
            }
        }
        GadgetKind::Buffer => cells.extend(LANE),
        GadgetKind::Positive => {
            cells.extend(LANE);
            cells.push((2, 0));
        }
        GadgetKind::Negative => {
            cells.extend(LANE);
            cells.push((2, 1));
        }
        GadgetKind::Notch => {
            cells.extend(LANE);
            cells.extend([(2, 0), (2, 1)]);
        }
        GadgetKind::Goal(n) => {
            assert!(n >= 1, "Goal gadget needs N >= 1");
            cells.extend([(0, 0), (1, 0), (1, 1)]);
            cells.extend((0..goal_store_len(n) + 2).map(|c| (2, c)));
            cells.push((3, 1));
            marks.insert(GOAL_MARK.to_string(), Cell::new(3, 1));
            foot = None;
        }
    }
    let h = cells.iter().map(|c| c.0).max().unwrap() + 1;
    let w = cells.iter().map(|c| c.1).max().unwrap() + 1;
    let mut footprint = Board::solid(h, w);
    for (r, c) in cells {
        footprint.set_open(Cell::new(r, c));
    }
    Gadget { kind, footprint, head: Cell::new(0, 0), foot, seed_tiles: seeds, goal_marks: marks }
}

/// Gadgets bound foot-to-head, with the global offset of each gadget's
/// local origin.
#[derive(Debug, Clone, Default)]
pub struct Chain {
    pub gadgets: Vec<Gadget>,
    pub offsets: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BindError {
    #[error("gadget {0} has no foot to bind to")]
    NoFoot(usize),
}

impl Chain {
    pub fn of(kinds: &[GadgetKind]) -> Self {
        let mut c = Chain::default();
        for k in kinds {
            c.push(make_gadget(*k)).expect("only the Goal lacks a foot and it ends a chain");
        }
        c
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    /// Global position of the last gadget's foot.
    pub fn foot(&self) -> Option<Cell> {
        let (g, o) = (self.gadgets.last()?, self.offsets.last()?);
        g.foot.map(|f| Cell::new(o.row + f.row, o.col + f.col))
    }

    pub fn push(&mut self, g: Gadget) -> Result<(), BindError> {
        let origin = match self.gadgets.last() {
            None => Cell::new(0, 0),
            Some(_) => self.foot().ok_or(BindError::NoFoot(self.gadgets.len() - 1))?,
        };
        // The head is at local (0,0), so the origin is the attachment cell.
        self.offsets.push(Cell::new(origin.row - g.head.row, origin.col - g.head.col));
        self.gadgets.push(g);
        Ok(())
    }

    pub fn head_of(&self, i: usize) -> Cell {
        let (g, o) = (&self.gadgets[i], self.offsets[i]);
        Cell::new(o.row + g.head.row, o.col + g.head.col)
    }

    /// Open cells of the whole chain in global coordinates.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (g, o) in self.gadgets.iter().zip(&self.offsets) {
            for c in g.open_cells() {
                out.push(Cell::new(o.row + c.row, o.col + c.col));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Concatenates two chains; `b`'s first head lands on `a`'s last foot.
pub fn bind(a: &Chain, b: &Chain) -> Result<Chain, BindError> {
    let mut out = a.clone();
    for g in &b.gadgets {
        out.push(g.clone())?;
    }
    Ok(out)
}

/// Section sizes of a compiled board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelocLayout {
    /// Gadget kinds of G_A's four sections.
    pub assignment: [Vec<GadgetKind>; 4],
    /// Per clause, gadget kinds of S1..S5.
    pub clauses: Vec<[Vec<GadgetKind>; 5]>,
    pub validation: Vec<GadgetKind>,
    /// Index of each gadget in the chain where each section starts.
    pub chain_len: usize,
}

impl RelocLayout {
    pub fn formula_len(&self) -> usize {
        self.clauses.iter().map(|c| c.iter().map(Vec::len).sum::<usize>()).sum()
    }
}

pub fn layout(f: &CnfFormula) -> RelocLayout {
    use GadgetKind::*;
    let n = f.num_vars;
    let validation: Vec<GadgetKind> = std::iter::repeat_n(Buffer, n - 1).chain([Goal(n)]).collect();
    let clauses: Vec<[Vec<GadgetKind>; 5]> = f
        .clauses
        .iter()
        .map(|clause| {
            let literal_section = |l: Literal| -> Vec<GadgetKind> {
                (1..=n)
                    .map(|i| match (i == l.var, l.positive) {
                        (true, true) => Positive,
                        (true, false) => Negative,
                        _ => Buffer,
                    })
                    .collect()
            };
            let s4: Vec<GadgetKind> = std::iter::repeat_n(Buffer, 2 * n).chain([Notch]).collect();
            [
                literal_section(clause[0]),
                literal_section(clause[1]),
                literal_section(clause[2]),
                s4,
                vec![Buffer; 2 * n + 1],
            ]
        })
        .collect();
    let formula_len: usize = clauses.iter().map(|c| c.iter().map(Vec::len).sum::<usize>()).sum();
    let v = validation.len() + formula_len;
    let s1: Vec<GadgetKind> = std::iter::once(Start).chain(std::iter::repeat_n(Assignment, n - 1)).collect();
    let s3: Vec<GadgetKind> =
        (1..=2 * n + 1).map(|i| if i == 1 || i == n + 1 || i == 2 * n + 1 { Assignment } else { Notch }).collect();
    let assignment = [s1, vec![Notch; 2 * n], s3, vec![Notch; v]];
    let chain_len = assignment.iter().map(Vec::len).sum::<usize>() + formula_len + validation.len();
    RelocLayout { assignment, clauses, validation, chain_len }
}

/// A compiled relocation board with its chain for inspection.
#[derive(Debug, Clone)]
pub struct CompiledRelocation {
    pub instance: ProblemInstance,
    pub layout: RelocLayout,
    pub chain: Chain,
}

pub fn compile_relocation(f: &CnfFormula) -> ProblemInstance {
    compile_relocation_full(f).instance
}

pub fn compile_relocation_full(f: &CnfFormula) -> CompiledRelocation {
    let lay = layout(f);
    let mut kinds: Vec<GadgetKind> = Vec::with_capacity(lay.chain_len);
    for s in &lay.assignment {
        kinds.extend(s);
    }
    // Literal tile j of clause m starts at the head of that clause's S_j;
    // validators at the head of every validation gadget.
    let mut seeds: Vec<(usize, String)> = Vec::new();
    for (m, sections) in lay.clauses.iter().enumerate() {
        for (j, s) in sections.iter().enumerate() {
            if j < 3 {
                seeds.push((kinds.len(), format!("c{}l{}", m + 1, j + 1)));
            }
            kinds.extend(s);
        }
    }
    for k in 0..lay.validation.len() {
        seeds.push((kinds.len() + k, format!("v{}", k + 1)));
    }
    kinds.extend(&lay.validation);
    let chain = Chain::of(&kinds);

    let cells = chain.cells();
    // One blocked margin row/column on every side.
    let height = cells.iter().map(|c| c.row).max().unwrap() + 3;
    let width = cells.iter().map(|c| c.col).max().unwrap() + 3;
    let mut board = Board::solid(height, width);
    let shift = |c: Cell| Cell::new(c.row + 1, c.col + 1);
    for c in &cells {
        board.set_open(shift(*c));
    }
    let mut tiles = BTreeMap::new();
    for (i, label) in seeds {
        tiles.insert(label, shift(chain.head_of(i)));
    }
    let start = &chain.gadgets[0];
    let o = chain.offsets[0];
    let a = start.seed_tiles[RELOCATION_TILE];
    tiles.insert(RELOCATION_TILE.to_string(), shift(Cell::new(o.row + a.row, o.col + a.col)));
    let last = chain.gadgets.len() - 1;
    let b = chain.gadgets[last].goal_marks[GOAL_MARK];
    let ol = chain.offsets[last];
    let goal = shift(Cell::new(ol.row + b.row, ol.col + b.col));
    let config = Configuration::new(board, tiles).expect("compiled configuration is valid");
    let instance =
        ProblemInstance::Relocation { config, tile: RELOCATION_TILE.to_string(), goal, dirs: DirSet::SE };
    CompiledRelocation { instance, layout: lay, chain }
}
