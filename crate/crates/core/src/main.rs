use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tilt::grid::{format_sequence, parse_board, parse_sequence, serialize_board, trace, Cell, DirSet};
use tilt::instance::{digest, InstanceFile};
use tilt::occupancy::{solve_occupancy, OccupancyQuery};
use tilt::render;
use tilt::sat::{brute_force_sat, parse_dimacs};
use tilt::search::{solve_with, ProblemInstance, SolveOptions, SolveResult, DEFAULT_BUDGET};
use tilt::{reconf, reloc};

#[derive(Parser)]
#[command(name = "tilt", version, about = "Single-step tilt model toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Relocation,
    Reconfig,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a step sequence to a text board.
    Simulate {
        board: PathBuf,
        /// Directions over "NESW".
        seq: String,
        /// Print every intermediate configuration.
        #[arg(long)]
        trace: bool,
    },
    /// Solve an instance file by breadth-first search.
    Solve {
        instance: PathBuf,
        /// Override the instance's direction set.
        #[arg(long)]
        dirs: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        no_prune: bool,
        /// Compare reconfiguration targets by occupancy instead of label.
        #[arg(long)]
        unlabeled: bool,
        /// Worker threads; the search is deterministic and runs on one.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Linear-time occupancy decision on a text board.
    Occupancy {
        board: PathBuf,
        #[arg(long, value_parser = parse_cell)]
        goal: Cell,
        #[arg(long, default_value = "NESW")]
        dirs: String,
    },
    /// Compile a DIMACS formula into an instance file.
    Reduce {
        family: Family,
        formula: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile, solve and compare with the brute-force SAT oracle.
    Verify {
        family: Family,
        formula: PathBuf,
        #[arg(long)]
        dirs: Option<String>,
    },
    /// Render an instance as ASCII, or SVG with --svg.
    Render {
        instance: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    let r = r.trim().parse().map_err(|_| format!("bad row '{r}'"))?;
    let c = c.trim().parse().map_err(|_| format!("bad column '{c}'"))?;
    Ok(Cell::new(r, c))
}

#[derive(Serialize)]
struct RunReport {
    instance: String,
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_len: Option<usize>,
    nodes_expanded: usize,
    wall_ms: u128,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<ProblemInstance> {
    Ok(InstanceFile::from_json(&read(path)?)?.to_instance()?)
}

fn compile(family: Family, path: &Path) -> anyhow::Result<ProblemInstance> {
    let f = parse_dimacs(&read(path)?)?;
    Ok(match family {
        Family::Relocation => reloc::compile_relocation(&f),
        Family::Reconfig => reconf::compile_reconfiguration(&f),
    })
}

fn run_solve(inst: &ProblemInstance, opts: &SolveOptions) -> anyhow::Result<(RunReport, u8)> {
    let t = Instant::now();
    let (res, stats) = solve_with(inst, opts)?;
    let wall_ms = t.elapsed().as_millis();
    let (result, code, cert) = match &res {
        SolveResult::Solvable(seq) => ("solvable", 0, Some(format_sequence(seq))),
        SolveResult::Unsolvable => ("unsolvable", 1, None),
        SolveResult::Exhausted(_) => ("exhausted", 2, None),
    };
    let report = RunReport {
        instance: digest(inst),
        result,
        certificate_len: cert.as_ref().map(String::len),
        certificate: cert,
        nodes_expanded: stats.expanded,
        wall_ms,
    };
    Ok((report, code))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Simulate { board, seq, trace: show } => {
            let config = parse_board(&read(&board)?)?;
            let seq = parse_sequence(&seq)?;
            let states = trace(&config, &seq);
            if show {
                for (i, c) in states.iter().enumerate() {
                    let label = if i == 0 { "start".to_string() } else { format!("{} {}", i, seq[i - 1].as_char()) };
                    println!("-- {label}");
                    print!("{}", serialize_board(c));
                }
            } else {
                print!("{}", serialize_board(states.last().unwrap()));
            }
            Ok(0)
        }
        Cmd::Solve { instance, dirs, budget, no_prune, unlabeled, threads } => {
            if threads == 0 {
                bail!("--threads must be at least 1");
            }
            let mut inst = load_instance(&instance)?;
            if let Some(d) = dirs {
                inst = inst.with_dirs(DirSet::parse(&d)?);
            }
            let opts = SolveOptions { budget, prune: !no_prune, labeled: !unlabeled };
            let (report, code) = run_solve(&inst, &opts)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(code)
        }
        Cmd::Occupancy { board, goal, dirs } => {
            let config = parse_board(&read(&board)?)?;
            let q = OccupancyQuery { config, goal, dirs: DirSet::parse(&dirs)? };
            match solve_occupancy(&q)? {
                Some(seq) => {
                    println!("reachable: {}", format_sequence(&seq));
                    Ok(0)
                }
                None => {
                    println!("unreachable");
                    Ok(1)
                }
            }
        }
        Cmd::Reduce { family, formula, output } => {
            let inst = compile(family, &formula)?;
            let json = InstanceFile::from_instance(&inst).to_json();
            match output {
                Some(p) => {
                    fs::write(&p, json + "\n").with_context(|| format!("writing {}", p.display()))?;
                    print!("{}", render::ascii(inst.config(), &render::goal_cells(&inst)));
                }
                None => println!("{json}"),
            }
            Ok(0)
        }
        Cmd::Verify { family, formula, dirs } => {
            let f = parse_dimacs(&read(&formula)?)?;
            let sat = brute_force_sat(&f)?.is_some();
            let mut inst = compile(family, &formula)?;
            if let Some(d) = dirs {
                inst = inst.with_dirs(DirSet::parse(&d)?);
            }
            let (report, _) = run_solve(&inst, &SolveOptions::default())?;
            let solvable = match report.result {
                "solvable" => true,
                "unsolvable" => false,
                _ => bail!("search budget exhausted; no verdict"),
            };
            let yn = |b: bool| if b { "yes" } else { "no" };
            let verdict = if sat == solvable { "MATCH" } else { "MISMATCH" };
            println!("{verdict} (sat: {}, solvable: {})", yn(sat), yn(solvable));
            Ok(if sat == solvable { 0 } else { 1 })
        }
        Cmd::Render { instance, svg } => {
            let inst = load_instance(&instance)?;
            let goals = render::goal_cells(&inst);
            match svg {
                Some(p) => fs::write(&p, render::svg(inst.config(), &goals))
                    .with_context(|| format!("writing {}", p.display()))?,
                None => print!("{}", render::ascii(inst.config(), &goals)),
            }
            Ok(0)
        }
    }
}
