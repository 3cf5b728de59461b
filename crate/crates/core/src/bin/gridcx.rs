use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gridcx::analysis::{table, write_csv};
use gridcx::complex::{ComplexOptions, StateComplex, DEFAULT_MAX_DIM};
use gridcx::exploration::{explore_with_budget, DEFAULT_BUDGET};
use gridcx::{check_all, parse_grid, pattern_scan, shortest_path, to_dot, Error, ExportBundle, Gridworld, State};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "gridcx", version, about = "State complexes of gridworlds and their link condition")]
struct Cli {
    /// Maximum number of states explored.
    #[arg(long, global = true, env = "GRIDCX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the complex of a grid file and write it as JSON.
    Build {
        grid: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_cube_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summary statistics for an empty room, one CSV row per agent count.
    Table {
        /// Room size as WxH.
        #[arg(long, value_parser = parse_room)]
        room: (usize, usize),
        /// A single count `k` or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_agents)]
        agents: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report every state whose link fails the flag condition.
    CheckLinks {
        grid: PathBuf,
        /// Print a line for every state, not only failing ones.
        #[arg(long)]
        all: bool,
    },
    /// List knight and 2-step-bishop patterns in the state of a grid file.
    PatternScan { grid: PathBuf },
    /// Shortest path between the states of two grid files on the same floorplan.
    Path { from: PathBuf, to: PathBuf },
    /// Convert a JSON bundle to DOT.
    ExportDot {
        bundle: PathBuf,
        #[arg(long)]
        color_by_generator: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_room(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: usize = w.trim().parse().map_err(|e| format!("width: {e}"))?;
    let h: usize = h.trim().parse().map_err(|e| format!("height: {e}"))?;
    if w == 0 || h == 0 {
        return Err("room dimensions must be positive".into());
    }
    Ok((w, h))
}

fn parse_agents(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|e| format!("agents: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("agents: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Bundle(_) | Error::Json(_) => EXIT_PARSE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_FAILURE,
    }
}

fn read_grid(path: &Path) -> Result<(Gridworld, State), Error> {
    let text = fs::read_to_string(path)?;
    Ok(parse_grid(&text)?)
}

fn complex(path: &Path, budget: usize, max_dim: usize) -> Result<(State, StateComplex), Error> {
    let (g, s) = read_grid(path)?;
    let sg = explore_with_budget(&g, &s, budget)?;
    let options = ComplexOptions {
        max_dim,
        budget,
        ..ComplexOptions::default()
    };
    Ok((s, StateComplex::build(sg, options)?))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    let budget = cli.budget;
    match cli.command {
        Command::Build { grid, max_cube_dim, out } => {
            let (s, cx) = complex(&grid, budget, max_cube_dim)?;
            let reports = check_all(&cx)?;
            let bundle = ExportBundle::new(&cx, &s, &reports, &[]);
            emit(out.as_deref(), &bundle.to_json()?)
        }
        Command::Table { room: (w, h), agents: (a, b), out } => {
            let g = Gridworld::room(w, h);
            let rows = table(&g, a..=b, budget);
            for (k, r) in &rows {
                if let Err(e) = r {
                    eprintln!("gridcx: row {k}: {e}");
                }
            }
            let mut buf = Vec::new();
            write_csv(&mut buf, &rows)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf))
        }
        Command::CheckLinks { grid, all } => {
            let (_, cx) = complex(&grid, budget, DEFAULT_MAX_DIM)?;
            let sg = cx.graph();
            let reports = check_all(&cx)?;
            let mut out = io::stdout().lock();
            let mut total = 0;
            for r in &reports {
                total += r.tabulated_failures;
                if all || !r.npc {
                    writeln!(
                        out,
                        "{} {} empty-triangles={} empty-tetrahedra={} hollow-4-cliques={} tabulated={}",
                        sg.key(r.base),
                        if r.npc { "npc" } else { "failing" },
                        r.empty_2simplices.len(),
                        r.empty_3simplices.len(),
                        r.hollow_4cliques.len(),
                        r.tabulated_failures,
                    )?;
                }
            }
            let failing = reports.iter().filter(|r| !r.npc).count();
            let tabulated = reports.iter().filter(|r| r.tabulated_failures > 0).count();
            writeln!(
                out,
                "states={} failing={} tabulated-failing={} tabulated-failures={}",
                reports.len(),
                failing,
                tabulated,
                total
            )?;
            Ok(())
        }
        Command::PatternScan { grid } => {
            let (g, s) = read_grid(&grid)?;
            let mut out = io::stdout().lock();
            for hit in pattern_scan(&g, &s)? {
                let cells: Vec<String> = hit.cells().iter().map(|&i| g.cell(i).to_string()).collect();
                writeln!(out, "{:?} {}", hit.kind, cells.join(" "))?;
            }
            Ok(())
        }
        Command::Path { from, to } => {
            let (g, s) = read_grid(&from)?;
            let (g2, t) = read_grid(&to)?;
            if g != g2 {
                return Err(Error::UnknownState(t.key()));
            }
            let sg = explore_with_budget(&g, &s, budget)?;
            let target = sg.find(&t).ok_or_else(|| Error::Unreachable {
                from: s.key(),
                to: t.key(),
            })?;
            let p = shortest_path(&sg, 0, target)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{}", sg.key(p.states[0]))?;
            for (gen, &v) in p.generators.iter().zip(&p.states[1..]) {
                writeln!(out, "{} {}", gen.describe(&g), sg.key(v))?;
            }
            Ok(())
        }
        Command::ExportDot { bundle, color_by_generator, out } => {
            let b = ExportBundle::from_json(&fs::read_to_string(bundle)?)?;
            emit(out.as_deref(), &to_dot(&b, color_by_generator))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gridcx: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
