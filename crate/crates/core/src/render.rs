//! Deterministic ASCII and SVG renderings.

use std::fmt::Write;

use crate::grid::{serialize_board, Cell, Configuration};
use crate::search::ProblemInstance;

const CELL: usize = 12;

/// Goal cells of an instance, for marking.
pub fn goal_cells(inst: &ProblemInstance) -> Vec<Cell> {
    match inst {
        ProblemInstance::Occupancy(q) => vec![q.goal],
        ProblemInstance::Relocation { goal, .. } => vec![*goal],
        ProblemInstance::Reconfiguration { target, .. } => target.tiles.values().copied().collect(),
    }
}

/// Text grid; empty goal cells are shown as `*`.
pub fn ascii(config: &Configuration, goals: &[Cell]) -> String {
    let text = serialize_board(config);
    let w = config.board.width() + 1;
    let mut bytes: Vec<char> = text.chars().collect();
    for g in goals {
        let i = g.row * w + g.col;
        if bytes[i] == '.' {
            bytes[i] = '*';
        }
    }
    bytes.into_iter().collect()
}

pub fn svg(config: &Configuration, goals: &[Cell]) -> String {
    let b = &config.board;
    let (w, h) = (b.width() * CELL, b.height() * CELL);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();
    for c in b.blocked_cells() {
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="#555555"/>"##,
            c.col * CELL,
            c.row * CELL
        )
        .unwrap();
    }
    for g in goals {
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="none" stroke="#d03030" stroke-width="2"/>"##,
            g.col * CELL,
            g.row * CELL
        )
        .unwrap();
    }
    for (label, c) in &config.tiles {
        let (x, y) = (c.col * CELL, c.row * CELL);
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" rx="2" fill="#3070c0"/>"##,
            x + 1,
            y + 1,
            CELL - 2,
            CELL - 2
        )
        .unwrap();
        writeln!(
            out,
            r##"<title>{}</title>"##,
            label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
