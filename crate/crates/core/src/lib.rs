//! The single-step tilt model.
//!
//! Every tile on a board moves one cell per step in a globally chosen
//! direction unless concrete or a blocked tile stops it. The crate provides
//! the step engine, board geometry classes, the linear-time occupancy
//! decision, exhaustive relocation/reconfiguration search, and compilers from
//! 3SAT into relocation and reconfiguration boards.

pub mod error;
pub mod grid;
pub mod instance;
pub mod occupancy;
pub mod reconf;
pub mod reloc;
pub mod render;
pub mod sat;
pub mod search;

pub use error::{Error, Result};
pub use grid::{Board, Cell, Configuration, DirSet, Direction, GeometryClass, StepSequence};
pub use search::{ProblemInstance, SolveOptions, SolveResult};
