//! Linear-time occupancy: can any tile be brought onto a goal cell?
//!
//! A reverse BFS from the goal finds the nearest tile; the shortest path from
//! that tile is itself a working step sequence, because every other tile only
//! moves in the same direction and can never block the nearest tile first.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::grid::{Cell, Configuration, DirSet, Direction, StepSequence};

#[derive(Debug, Clone)]
pub struct OccupancyQuery {
    pub config: Configuration,
    pub goal: Cell,
    pub dirs: DirSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyOutcome {
    pub witness: Option<StepSequence>,
    /// Cells dequeued by the BFS; never exceeds the board size.
    pub dequeued: usize,
}

pub fn solve_occupancy(q: &OccupancyQuery) -> Result<Option<StepSequence>> {
    Ok(solve_occupancy_counted(q)?.witness)
}

pub fn solve_occupancy_counted(q: &OccupancyQuery) -> Result<OccupancyOutcome> {
    let board = &q.config.board;
    if !board.in_bounds(q.goal) {
        return Err(Error::OutOfBounds(q.goal));
    }
    if board.is_blocked(q.goal) {
        return Err(Error::GoalBlocked(q.goal));
    }
    let mut tile = vec![false; board.len()];
    for c in q.config.tiles.values() {
        tile[board.index(*c)] = true;
    }
    let g = board.index(q.goal);
    if tile[g] {
        return Ok(OccupancyOutcome { witness: Some(Vec::new()), dequeued: 0 });
    }
    // parent[c] = direction a tile at c takes toward the goal.
    let mut parent: Vec<Option<Direction>> = vec![None; board.len()];
    let mut seen = vec![false; board.len()];
    seen[g] = true;
    let mut queue = VecDeque::from([g]);
    let mut dequeued = 0;
    while let Some(i) = queue.pop_front() {
        dequeued += 1;
        for d in Direction::ALL {
            if !q.dirs.contains(d) {
                continue;
            }
            let Some(j) = board.open_neighbor(i, d.opposite()) else {
                continue;
            };
            if seen[j] {
                continue;
            }
            seen[j] = true;
            parent[j] = Some(d);
            if tile[j] {
                let mut seq = Vec::new();
                let mut c = j;
                while c != g {
                    let d = parent[c].unwrap();
                    seq.push(d);
                    c = board.open_neighbor(c, d).unwrap();
                }
                return Ok(OccupancyOutcome { witness: Some(seq), dequeued });
            }
            queue.push_back(j);
        }
    }
    Ok(OccupancyOutcome { witness: None, dequeued })
}
