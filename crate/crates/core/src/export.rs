//! JSON bundles and DOT output.
//!
//! Everything in a bundle refers to states by canonical key and to cells by
//! `[row, col]`, so a bundle can be read without this crate. The schema is
//! versioned by `format_version`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::StatsRow;
use crate::complex::{ComplexOptions, SquareKind, StateComplex};
use crate::error::{Error, Result};
use crate::exploration::{Edge, StateGraph, DEFAULT_BUDGET};
use crate::generators::{Action, Dance, Generator, GeneratorKind};
use crate::grid::{Cell, Gridworld, State};
use crate::links::{DefectReport, Verdict};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEcho {
    pub width: usize,
    pub height: usize,
    /// The initial state as grid text, one string per row.
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ActionRecord {
    Move { support: Vec<[usize; 2]> },
    Pushpull { support: Vec<[usize; 2]> },
    Dance { support: Vec<[usize; 2]> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub generator: ActionRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRecord {
    /// `"commuting"` or `"dance"`.
    pub kind: String,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub dim: usize,
    pub l: usize,
    pub m: usize,
    pub base: String,
    pub witnesses: Vec<ActionRecord>,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub state: String,
    pub npc: bool,
    pub verdict: Verdict,
    pub failure_count: usize,
    pub tabulated_failures: usize,
    pub empty_2simplices: Vec<Vec<ActionRecord>>,
    pub empty_3simplices: Vec<Vec<ActionRecord>>,
    pub hollow_4cliques: Vec<Vec<ActionRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub agents: usize,
    pub states: usize,
    pub pct_npc: u64,
    pub dances: usize,
    pub commuting_moves: usize,
    pub fail_total: usize,
    pub fail_mean: String,
    pub fail_max: usize,
}

impl From<&StatsRow> for StatsRecord {
    fn from(r: &StatsRow) -> Self {
        StatsRecord {
            agents: r.agents,
            states: r.states,
            pct_npc: r.pct_npc,
            dances: r.dances,
            commuting_moves: r.commuting_moves,
            fail_total: r.fail_total,
            fail_mean: crate::analysis::format_centi(r.fail_mean_centi),
            fail_max: r.fail_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub format_version: u32,
    pub grid: GridEcho,
    pub max_cube_dim: usize,
    pub dances: bool,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub squares: Vec<SquareRecord>,
    pub cubes: Vec<CubeRecord>,
    pub reports: Vec<ReportRecord>,
    pub stats: Vec<StatsRecord>,
}

fn cells(g: &Gridworld, ids: &[usize]) -> Vec<[usize; 2]> {
    ids.iter()
        .map(|&i| {
            let c = g.cell(i);
            [c.row, c.col]
        })
        .collect()
}

pub fn action_record(g: &Gridworld, a: &Action) -> ActionRecord {
    let support = cells(g, a.support());
    match a {
        Action::Gen(x) => match x.kind() {
            GeneratorKind::Move => ActionRecord::Move { support },
            GeneratorKind::PushPull => ActionRecord::Pushpull { support },
        },
        Action::Dance(_) => ActionRecord::Dance { support },
    }
}

fn ids(g: &Gridworld, support: &[[usize; 2]]) -> Result<Vec<usize>> {
    support
        .iter()
        .map(|&[row, col]| {
            g.id(Cell::new(row, col))
                .ok_or_else(|| Error::Bundle(format!("cell ({row},{col}) is not a floor cell")))
        })
        .collect()
}

pub fn action_from_record(g: &Gridworld, r: &ActionRecord) -> Result<Action> {
    let bad = || Error::Bundle(format!("malformed support in {r:?}"));
    Ok(match r {
        ActionRecord::Move { support } => match ids(g, support)?[..] {
            [a, b] => Action::Gen(Generator::moving(a, b)),
            _ => return Err(bad()),
        },
        ActionRecord::Pushpull { support } => match ids(g, support)?[..] {
            [a, b, c] => Action::Gen(Generator::push_pull([a, b, c])),
            _ => return Err(bad()),
        },
        ActionRecord::Dance { support } => match ids(g, support)?[..] {
            [a, b, c, d] => Action::Dance(Dance::new([a, b, c, d])),
            _ => return Err(bad()),
        },
    })
}

fn gen_records(g: &Gridworld, gens: &[Generator]) -> Vec<ActionRecord> {
    gens.iter().map(|x| action_record(g, &Action::Gen(*x))).collect()
}

pub fn report_record(sg: &StateGraph, r: &DefectReport) -> ReportRecord {
    let g = sg.grid();
    ReportRecord {
        state: sg.key(r.base),
        npc: r.npc,
        verdict: r.verdict,
        failure_count: r.failure_count,
        tabulated_failures: r.tabulated_failures,
        empty_2simplices: r.empty_2simplices.iter().map(|t| gen_records(g, t)).collect(),
        empty_3simplices: r.empty_3simplices.iter().map(|t| gen_records(g, t)).collect(),
        hollow_4cliques: r.hollow_4cliques.iter().map(|t| gen_records(g, t)).collect(),
    }
}

impl ExportBundle {
    /// Collects a complex, its per-state reports and optional summary rows.
    /// `initial` is echoed as the grid.
    pub fn new(
        cx: &StateComplex,
        initial: &State,
        reports: &[DefectReport],
        stats: &[StatsRow],
    ) -> Self {
        let sg = cx.graph();
        let g = sg.grid();
        let keys: Vec<String> = (0..sg.len()).map(|v| sg.key(v)).collect();
        ExportBundle {
            format_version: FORMAT_VERSION,
            grid: GridEcho {
                width: g.width(),
                height: g.height(),
                rows: g.render(initial).lines().map(str::to_owned).collect(),
            },
            max_cube_dim: cx.max_dim(),
            dances: cx.has_dances(),
            edges: sg
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    source: keys[e.a].clone(),
                    target: keys[e.b].clone(),
                    generator: action_record(g, &Action::Gen(e.generator)),
                })
                .collect(),
            squares: cx
                .squares()
                .iter()
                .map(|s| SquareRecord {
                    kind: match s.kind {
                        SquareKind::CommutingMoves => "commuting",
                        SquareKind::Dance => "dance",
                    }
                    .to_owned(),
                    vertices: s.vertices.iter().map(|&v| keys[v].clone()).collect(),
                })
                .collect(),
            cubes: cx
                .cubes()
                .iter()
                .map(|c| CubeRecord {
                    dim: c.dim(),
                    l: c.l(),
                    m: c.m(),
                    base: keys[c.base].clone(),
                    witnesses: c.witnesses.iter().map(|w| action_record(g, w)).collect(),
                    vertices: c.vertices.iter().map(|&v| keys[v].clone()).collect(),
                })
                .collect(),
            reports: reports.iter().map(|r| report_record(sg, r)).collect(),
            stats: stats.iter().map(StatsRecord::from).collect(),
            vertices: keys,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let b: ExportBundle = serde_json::from_str(text)?;
        if b.format_version != FORMAT_VERSION {
            return Err(Error::Bundle(format!(
                "unsupported format_version {}",
                b.format_version
            )));
        }
        Ok(b)
    }

    /// Every key used by an edge, square, cube or report is a vertex.
    pub fn is_closed(&self) -> bool {
        let keys: std::collections::HashSet<&str> =
            self.vertices.iter().map(String::as_str).collect();
        let has = |k: &String| keys.contains(k.as_str());
        self.edges.iter().all(|e| has(&e.source) && has(&e.target))
            && self.squares.iter().all(|s| s.vertices.iter().all(has))
            && self
                .cubes
                .iter()
                .all(|c| has(&c.base) && c.vertices.iter().all(has))
            && self.reports.iter().all(|r| has(&r.state))
    }

    /// Rebuilds the gridworld, initial state and complex.
    pub fn to_complex(&self) -> Result<(Gridworld, State, StateComplex)> {
        let text = self.grid.rows.join("\n");
        let (g, initial) = crate::grid::parse_grid(&text)?;
        let states = self
            .vertices
            .iter()
            .map(|k| g.state_from_key(k))
            .collect::<Result<Vec<_>>>()?;
        let lookup: std::collections::HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, k)| (k.as_str(), i))
            .collect();
        let find = |k: &str| {
            lookup
                .get(k)
                .copied()
                .ok_or_else(|| Error::Bundle(format!("unknown vertex {k:?}")))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let Action::Gen(generator) = action_from_record(&g, &e.generator)? else {
                return Err(Error::Bundle("edge labelled by a dance".into()));
            };
            edges.push(Edge {
                a: find(&e.source)?,
                b: find(&e.target)?,
                generator,
            });
        }
        let sg = StateGraph::from_parts(g.clone(), states, edges)?;
        let mut cubes = Vec::with_capacity(self.cubes.len());
        for c in &self.cubes {
            let ws = c
                .witnesses
                .iter()
                .map(|w| action_from_record(&g, w))
                .collect::<Result<Vec<_>>>()?;
            cubes.push((find(&c.base)?, ws));
        }
        let options = ComplexOptions {
            max_dim: self.max_cube_dim,
            dances: self.dances,
            budget: DEFAULT_BUDGET,
        };
        let cx = StateComplex::from_parts(sg, options, cubes)?;
        Ok((g, initial, cx))
    }
}

/// DOT text for the state graph of a bundle. Vertex ids are canonical keys;
/// with `color_by_generator` Moves are maroon and Push/Pulls orange.
pub fn to_dot(bundle: &ExportBundle, color_by_generator: bool) -> String {
    let mut out = String::from("graph state_complex {\n");
    for v in &bundle.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for e in &bundle.edges {
        let _ = write!(out, "  \"{}\" -- \"{}\"", e.source, e.target);
        if color_by_generator {
            let color = match e.generator {
                ActionRecord::Pushpull { .. } => "orange",
                _ => "maroon",
            };
            let _ = write!(out, " [color={color}]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
