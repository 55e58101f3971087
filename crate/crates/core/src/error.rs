use crate::grid::Cell;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid direction character '{0}'")]
    Direction(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cell {0} is outside the board")]
    OutOfBounds(Cell),
    #[error("tile '{0}' sits on blocked cell {1}")]
    TileOnBlocked(String, Cell),
    #[error("two tiles share cell {0}")]
    Overlap(Cell),
    #[error("goal cell {0} is blocked")]
    GoalBlocked(Cell),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("formula has {0} variables; the brute-force oracle accepts at most {1}")]
    TooManyVars(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
