//! Versioned JSON instance files.
//!
//! ```json
//! { "v": 1, "problem": "relocation", "board": "a..\n", "tiles": {"r1": [0, 1]},
//!   "tile": "a", "goal": [0, 2], "dirs": "SE" }
//! ```
//!
//! Tiles may be written into the board text (one-character labels) or listed
//! under `tiles`; a reconfiguration's `target` is a label→cell map.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{parse_board, serialize_board, Board, Cell, Configuration, DirSet};
use crate::occupancy::OccupancyQuery;
use crate::search::ProblemInstance;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub v: u32,
    pub problem: String,
    pub board: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tiles: BTreeMap<String, [usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<BTreeMap<String, [usize; 2]>>,
    pub dirs: String,
}

fn cell(p: [usize; 2]) -> Cell {
    Cell::new(p[0], p[1])
}

fn pair(c: Cell) -> [usize; 2] {
    [c.row, c.col]
}

/// Board text with geometry only.
fn geometry_text(board: &Board) -> String {
    serialize_board(&Configuration::empty(board.clone()))
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: InstanceFile = serde_json::from_str(text)?;
        if f.v != SCHEMA_VERSION {
            return Err(Error::Instance(format!("unsupported schema version {}", f.v)));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let mut config = parse_board(&self.board)?;
        for (label, p) in &self.tiles {
            if config.tiles.insert(label.clone(), cell(*p)).is_some() {
                return Err(Error::Instance(format!("tile '{label}' given twice")));
            }
        }
        config.validate()?;
        let dirs = DirSet::parse(&self.dirs)?;
        let goal = || self.goal.map(cell).ok_or_else(|| Error::Instance("missing goal".into()));
        let inst = match self.problem.as_str() {
            "occupancy" => ProblemInstance::Occupancy(OccupancyQuery { config, goal: goal()?, dirs }),
            "relocation" => {
                let tile = self.tile.clone().ok_or_else(|| Error::Instance("missing tile".into()))?;
                ProblemInstance::Relocation { config, tile, goal: goal()?, dirs }
            }
            "reconfiguration" => {
                let t = self.target.as_ref().ok_or_else(|| Error::Instance("missing target".into()))?;
                let target = Configuration {
                    board: config.board.clone(),
                    tiles: t.iter().map(|(k, v)| (k.clone(), cell(*v))).collect(),
                };
                ProblemInstance::Reconfiguration { config, target, dirs }
            }
            other => return Err(Error::Instance(format!("unknown problem kind '{other}'"))),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_instance(inst: &ProblemInstance) -> Self {
        let config = inst.config();
        let tiles = config.tiles.iter().map(|(k, v)| (k.clone(), pair(*v))).collect();
        let mut f = InstanceFile {
            v: SCHEMA_VERSION,
            problem: String::new(),
            board: geometry_text(&config.board),
            tiles,
            tile: None,
            goal: None,
            target: None,
            dirs: inst.dirs().to_string(),
        };
        match inst {
            ProblemInstance::Occupancy(q) => {
                f.problem = "occupancy".into();
                f.goal = Some(pair(q.goal));
            }
            ProblemInstance::Relocation { tile, goal, .. } => {
                f.problem = "relocation".into();
                f.tile = Some(tile.clone());
                f.goal = Some(pair(*goal));
            }
            ProblemInstance::Reconfiguration { target, .. } => {
                f.problem = "reconfiguration".into();
                f.target = Some(target.tiles.iter().map(|(k, v)| (k.clone(), pair(*v))).collect());
            }
        }
        f
    }
}

/// FNV-1a over the canonical JSON form; identifies an instance in reports.
pub fn digest(inst: &ProblemInstance) -> String {
    let text = serde_json::to_string(&InstanceFile::from_instance(inst)).expect("instance serializes");
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"v":1,"problem":"relocation","board":"a..\n.#.\n","tiles":{"rt":[1,0]},"tile":"a","goal":[0,2],"dirs":"SE"}"#;
        let f = InstanceFile::from_json(text).unwrap();
        let inst = f.to_instance().unwrap();
        assert_eq!(inst.config().tiles.len(), 2);
        let back = InstanceFile::from_instance(&inst).to_instance().unwrap();
        assert_eq!(back.config(), inst.config());
        assert_eq!(digest(&back), digest(&inst));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(InstanceFile::from_json(r#"{"v":2,"problem":"occupancy","board":".","dirs":"S"}"#).is_err());
        let f = InstanceFile::from_json(r#"{"v":1,"problem":"relocation","board":"a.","dirs":"E"}"#).unwrap();
        assert!(f.to_instance().is_err());
        let f = InstanceFile::from_json(r#"{"v":1,"problem":"occupancy","board":"a.","goal":[0,1],"dirs":"X"}"#).unwrap();
        assert!(matches!(f.to_instance(), Err(Error::Direction('X'))));
    }
}
