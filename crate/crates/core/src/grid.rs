//! Boards, configurations and the step transformation.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Row 0 is north, column 0 is west.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    N,
    E,
    S,
    W,
}

impl Direction {
    /// Lexicographic order N < E < S < W, also the BFS tie-break order.
    pub const ALL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    pub fn opposite(self) -> Self {
        match self {
            Direction::N => Direction::S,
            Direction::S => Direction::N,
            Direction::E => Direction::W,
            Direction::W => Direction::E,
        }
    }

    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::N => (-1, 0),
            Direction::S => (1, 0),
            Direction::E => (0, 1),
            Direction::W => (0, -1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::N => 'N',
            Direction::E => 'E',
            Direction::S => 'S',
            Direction::W => 'W',
        }
    }

    pub fn from_char(c: char) -> Result<Self, Error> {
        match c {
            'N' => Ok(Direction::N),
            'E' => Ok(Direction::E),
            'S' => Ok(Direction::S),
            'W' => Ok(Direction::W),
            _ => Err(Error::Direction(c)),
        }
    }
}

/// A set of directions, kept in N,E,S,W order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DirSet(u8);

impl DirSet {
    pub const SE: DirSet = DirSet(0b0110);
    pub const WSE: DirSet = DirSet(0b1110);
    pub const ALL: DirSet = DirSet(0b1111);

    pub fn bit(d: Direction) -> u8 {
        1 << (d as u8)
    }

    pub fn from_bits(bits: u8) -> Self {
        DirSet(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, d: Direction) -> bool {
        self.0 & Self::bit(d) != 0
    }

    pub fn insert(&mut self, d: Direction) {
        self.0 |= Self::bit(d);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Direction> {
        Direction::ALL.into_iter().filter(move |d| self.contains(*d))
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut set = DirSet::default();
        for c in s.chars() {
            set.insert(Direction::from_char(c)?);
        }
        if set.is_empty() {
            return Err(Error::Parse("empty direction set".into()));
        }
        Ok(set)
    }
}

impl fmt::Display for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.iter() {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

pub type StepSequence = Vec<Direction>;

pub fn parse_sequence(s: &str) -> Result<StepSequence, Error> {
    s.chars().filter(|c| !c.is_whitespace()).map(Direction::from_char).collect()
}

pub fn format_sequence(seq: &[Direction]) -> String {
    seq.iter().map(|d| d.as_char()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Board {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
}

impl Board {
    /// An all-open board.
    pub fn open(height: usize, width: usize) -> Self {
        assert!(height > 0 && width > 0, "board dimensions must be positive");
        Board { width, height, blocked: vec![false; width * height] }
    }

    /// An all-blocked board; callers carve open cells with `set_open`.
    pub fn solid(height: usize, width: usize) -> Self {
        assert!(height > 0 && width > 0, "board dimensions must be positive");
        Board { width, height, blocked: vec![true; width * height] }
    }

    pub fn from_blocked(height: usize, width: usize, blocked: impl IntoIterator<Item = Cell>) -> Result<Self, Error> {
        let mut b = Board::open(height, width);
        for c in blocked {
            if !b.in_bounds(c) {
                return Err(Error::OutOfBounds(c));
            }
            b.set_blocked(c, true);
        }
        if b.open_count() == 0 {
            return Err(Error::Parse("board has no open cell".into()));
        }
        Ok(b)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.row < self.height && c.col < self.width
    }

    pub fn index(&self, c: Cell) -> usize {
        c.row * self.width + c.col
    }

    pub fn cell(&self, idx: usize) -> Cell {
        Cell::new(idx / self.width, idx % self.width)
    }

    pub fn is_blocked(&self, c: Cell) -> bool {
        !self.in_bounds(c) || self.blocked[self.index(c)]
    }

    pub fn is_open(&self, c: Cell) -> bool {
        !self.is_blocked(c)
    }

    pub fn set_blocked(&mut self, c: Cell, blocked: bool) {
        let i = self.index(c);
        self.blocked[i] = blocked;
    }

    pub fn set_open(&mut self, c: Cell) {
        self.set_blocked(c, false);
    }

    pub fn open_count(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height).flat_map(move |r| (0..self.width).map(move |c| Cell::new(r, c)))
    }

    pub fn open_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(move |c| self.is_open(*c))
    }

    pub fn blocked_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(move |c| self.is_blocked(*c))
    }

    /// Neighbour of `c` in direction `d`, if it lies on the board.
    pub fn neighbor(&self, c: Cell, d: Direction) -> Option<Cell> {
        let (dr, dc) = d.delta();
        let r = c.row.checked_add_signed(dr)?;
        let k = c.col.checked_add_signed(dc)?;
        let n = Cell::new(r, k);
        self.in_bounds(n).then_some(n)
    }

    /// Neighbour index in direction `d` if it is open.
    pub fn open_neighbor(&self, idx: usize, d: Direction) -> Option<usize> {
        let n = self.neighbor(self.cell(idx), d)?;
        (!self.blocked[self.index(n)]).then(|| self.index(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub board: Board,
    pub tiles: BTreeMap<String, Cell>,
}

impl Configuration {
    pub fn new(board: Board, tiles: BTreeMap<String, Cell>) -> Result<Self, Error> {
        let c = Configuration { board, tiles };
        c.validate()?;
        Ok(c)
    }

    pub fn empty(board: Board) -> Self {
        Configuration { board, tiles: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.board.open_count() == 0 {
            return Err(Error::Parse("board has no open cell".into()));
        }
        let mut seen = vec![false; self.board.len()];
        for (label, &c) in &self.tiles {
            if label.is_empty() {
                return Err(Error::Parse("empty tile label".into()));
            }
            if !self.board.in_bounds(c) {
                return Err(Error::OutOfBounds(c));
            }
            if self.board.is_blocked(c) {
                return Err(Error::TileOnBlocked(label.clone(), c));
            }
            let i = self.board.index(c);
            if seen[i] {
                return Err(Error::Overlap(c));
            }
            seen[i] = true;
        }
        Ok(())
    }

    pub fn tile_at(&self, c: Cell) -> Option<&str> {
        self.tiles.iter().find(|(_, v)| **v == c).map(|(k, _)| k.as_str())
    }

    /// Compare tile sets ignoring labels.
    pub fn same_occupancy(&self, other: &Configuration) -> bool {
        let mut a: Vec<Cell> = self.tiles.values().copied().collect();
        let mut b: Vec<Cell> = other.tiles.values().copied().collect();
        a.sort();
        b.sort();
        self.board == other.board && a == b
    }
}

/// Reusable buffers for `step_indices`.
#[derive(Debug, Default, Clone)]
pub struct StepScratch {
    order: Vec<usize>,
    stay: Vec<bool>,
}

/// Moves every tile one unit in `d` unless it is blocked by concrete or by a
/// tile that is itself blocked. Operates on cell indices in place.
///
/// Tiles are swept front-to-back along `d`: the front-most tile of every line
/// is decided first, so a single pass reaches the fixpoint.
pub fn step_indices(board: &Board, pos: &mut [usize], d: Direction, scratch: &mut StepScratch) {
    let w = board.width();
    let key = |i: usize| -> isize {
        let (r, c) = ((i / w) as isize, (i % w) as isize);
        match d {
            Direction::N => r,
            Direction::S => -r,
            Direction::W => c,
            Direction::E => -c,
        }
    };
    scratch.order.clear();
    scratch.order.extend(0..pos.len());
    scratch.order.sort_unstable_by_key(|&t| key(pos[t]));
    if scratch.stay.len() != board.len() {
        scratch.stay = vec![false; board.len()];
    }
    for &t in &scratch.order {
        let frozen = match board.open_neighbor(pos[t], d) {
            None => true,
            Some(x) => scratch.stay[x],
        };
        if frozen {
            scratch.stay[pos[t]] = true;
        }
    }
    for p in pos.iter_mut() {
        if scratch.stay[*p] {
            scratch.stay[*p] = false;
        } else {
            *p = board.open_neighbor(*p, d).expect("unfrozen tile has an open neighbour");
        }
    }
}

pub fn step(config: &Configuration, d: Direction) -> Configuration {
    let labels: Vec<&String> = config.tiles.keys().collect();
    let mut pos: Vec<usize> = config.tiles.values().map(|c| config.board.index(*c)).collect();
    let mut scratch = StepScratch::default();
    step_indices(&config.board, &mut pos, d, &mut scratch);
    let tiles = labels
        .into_iter()
        .zip(pos)
        .map(|(l, p)| (l.clone(), config.board.cell(p)))
        .collect();
    Configuration { board: config.board.clone(), tiles }
}

/// Worklist form of the same fixpoint: repeatedly freeze any tile whose
/// target is concrete or frozen, in arbitrary order, until nothing changes.
pub fn step_worklist(config: &Configuration, d: Direction) -> Configuration {
    let board = &config.board;
    let cells: Vec<Cell> = config.tiles.values().copied().collect();
    let mut frozen = vec![false; cells.len()];
    let mut queue: VecDeque<usize> = (0..cells.len()).rev().collect();
    let mut changed = true;
    while changed {
        changed = false;
        for _ in 0..queue.len() {
            let t = queue.pop_front().unwrap();
            if frozen[t] {
                continue;
            }
            let block = match board.neighbor(cells[t], d) {
                None => true,
                Some(n) if board.is_blocked(n) => true,
                Some(n) => cells.iter().zip(&frozen).any(|(c, f)| *f && *c == n),
            };
            if block {
                frozen[t] = true;
                changed = true;
            } else {
                queue.push_back(t);
            }
        }
    }
    let tiles = config
        .tiles
        .keys()
        .zip(cells.iter().zip(&frozen))
        .map(|(l, (c, f))| {
            let c = if *f { *c } else { board.neighbor(*c, d).unwrap() };
            (l.clone(), c)
        })
        .collect();
    Configuration { board: board.clone(), tiles }
}

pub fn apply_sequence(config: &Configuration, seq: &[Direction]) -> Configuration {
    seq.iter().fold(config.clone(), |c, d| step(&c, *d))
}

/// Every configuration visited by `seq`, starting with `config`.
pub fn trace(config: &Configuration, seq: &[Direction]) -> Vec<Configuration> {
    let mut out = Vec::with_capacity(seq.len() + 1);
    out.push(config.clone());
    for d in seq {
        let next = step(out.last().unwrap(), *d);
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeometryClass {
    Disconnected,
    Connected,
    Simple,
    Monotone,
    Convex,
    Rectangular,
}

pub fn is_connected(board: &Board) -> bool {
    let Some(start) = board.open_cells().next() else {
        return false;
    };
    let mut seen = vec![false; board.len()];
    let mut queue = VecDeque::from([board.index(start)]);
    seen[board.index(start)] = true;
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        for d in Direction::ALL {
            if let Some(j) = board.open_neighbor(i, d) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
    }
    count == board.open_count()
}

/// True when some blocked component cannot reach the board border through
/// blocked cells.
pub fn has_hole(board: &Board) -> bool {
    let mut seen = vec![false; board.len()];
    let mut queue = VecDeque::new();
    for c in board.blocked_cells() {
        if c.row == 0 || c.col == 0 || c.row + 1 == board.height() || c.col + 1 == board.width() {
            let i = board.index(c);
            seen[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for d in Direction::ALL {
            if let Some(n) = board.neighbor(board.cell(i), d) {
                let j = board.index(n);
                if board.is_blocked(n) && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    board.blocked_cells().any(|c| !seen[board.index(c)])
}

fn runs_contiguous(mut line: impl Iterator<Item = bool>) -> bool {
    // open* then closed* then open* would be two runs; allow at most one.
    let mut state = 0;
    for open in line.by_ref() {
        state = match (state, open) {
            (0, true) => 1,
            (0, false) => 0,
            (1, true) => 1,
            (1, false) => 2,
            (2, false) => 2,
            _ => return false,
        };
    }
    true
}

pub fn rows_contiguous(board: &Board) -> bool {
    (0..board.height()).all(|r| runs_contiguous((0..board.width()).map(|c| board.is_open(Cell::new(r, c)))))
}

pub fn cols_contiguous(board: &Board) -> bool {
    (0..board.width()).all(|c| runs_contiguous((0..board.height()).map(|r| board.is_open(Cell::new(r, c)))))
}

pub fn classify(board: &Board) -> GeometryClass {
    if !is_connected(board) {
        return GeometryClass::Disconnected;
    }
    if has_hole(board) {
        return GeometryClass::Connected;
    }
    let rows = rows_contiguous(board);
    let cols = cols_contiguous(board);
    if !(rows || cols) {
        return GeometryClass::Simple;
    }
    if !(rows && cols) {
        return GeometryClass::Monotone;
    }
    let open: Vec<Cell> = board.open_cells().collect();
    let (r0, r1) = (open.iter().map(|c| c.row).min().unwrap(), open.iter().map(|c| c.row).max().unwrap());
    let (c0, c1) = (open.iter().map(|c| c.col).min().unwrap(), open.iter().map(|c| c.col).max().unwrap());
    if (r1 - r0 + 1) * (c1 - c0 + 1) == open.len() {
        GeometryClass::Rectangular
    } else {
        GeometryClass::Convex
    }
}

/// Parses the text format: `#` blocked, `.` open, any alphanumeric char a
/// tile with that label.
pub fn parse_board(text: &str) -> Result<Configuration, Error> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::Parse("empty board".into()));
    }
    let width = lines[0].chars().count();
    let mut board = Board::open(lines.len(), width.max(1));
    let mut tiles = BTreeMap::new();
    for (r, line) in lines.iter().enumerate() {
        if line.chars().count() != width {
            return Err(Error::Parse(format!("ragged line {}", r + 1)));
        }
        for (c, ch) in line.chars().enumerate() {
            let cell = Cell::new(r, c);
            match ch {
                '#' => board.set_blocked(cell, true),
                '.' => {}
                ch if ch.is_ascii_alphanumeric() => {
                    if tiles.insert(ch.to_string(), cell).is_some() {
                        return Err(Error::Parse(format!("duplicate label '{ch}'")));
                    }
                }
                ch => return Err(Error::Parse(format!("unexpected character '{ch}' at {cell}"))),
            }
        }
    }
    Configuration::new(board, tiles)
}

/// Inverse of `parse_board`. Multi-character labels print as their first
/// character, so only single-char labelled configurations round-trip.
pub fn serialize_board(config: &Configuration) -> String {
    let b = &config.board;
    let mut grid: Vec<Vec<char>> = (0..b.height())
        .map(|r| (0..b.width()).map(|c| if b.is_blocked(Cell::new(r, c)) { '#' } else { '.' }).collect())
        .collect();
    for (label, c) in &config.tiles {
        grid[c.row][c.col] = label.chars().next().unwrap_or('?');
    }
    let mut out = String::with_capacity(b.len() + b.height());
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    out
}
