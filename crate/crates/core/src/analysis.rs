//! State counts, summary rows and symmetry checks for agent-only rooms.

use std::collections::HashSet;
use std::io::Write;

use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{build_complex, ComplexOptions, SquareKind, StateComplex};
use crate::error::{Error, Result};
use crate::exploration::{explore_with_budget, StateGraph};
use crate::grid::{Gridworld, Label, State};
use crate::links::{check_all, DefectReport};

/// Number of states with `k` agents and `j` objects on `n` cells:
/// `C(n, k) * C(n - k, j)`.
pub fn state_count(n: usize, k: usize, j: usize) -> Result<BigUint> {
    if k + j > n {
        return Err(Error::TooManyLabels { n, k, j });
    }
    let n_big = BigUint::from(n);
    let rest = BigUint::from(n - k);
    Ok(binomial(n_big, BigUint::from(k)) * binomial(rest, BigUint::from(j)))
}

/// Every labelling with `k` agents and `j` objects, reachable or not, in
/// lexicographic key order.
pub fn enumerate_states(g: &Gridworld, k: usize, j: usize) -> Result<Vec<State>> {
    let n = g.len();
    if k + j > n {
        return Err(Error::TooManyLabels { n, k, j });
    }
    fn rec(labels: &mut Vec<Label>, n: usize, k: usize, j: usize, out: &mut Vec<State>) {
        let placed = labels.len();
        if placed == n {
            out.push(State::new(labels.clone()));
            return;
        }
        let free = n - placed - k - j;
        // key order: '.' < 'A' < 'O'
        for (label, ok) in [(Label::Floor, free > 0), (Label::Agent, k > 0), (Label::Object, j > 0)] {
            if ok {
                labels.push(label);
                let (k2, j2) = match label {
                    Label::Agent => (k - 1, j),
                    Label::Object => (k, j - 1),
                    Label::Floor => (k, j),
                };
                rec(labels, n, k2, j2, out);
                labels.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, k, j, &mut out);
    Ok(out)
}

/// One row of the per-agent-count summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsRow {
    pub agents: usize,
    pub states: usize,
    /// States whose tabulated failure count is zero.
    pub npc_states: usize,
    pub pct_npc: u64,
    pub dances: usize,
    pub commuting_moves: usize,
    pub fail_total: usize,
    /// Mean failures per state in hundredths, rounded half-up.
    pub fail_mean_centi: u64,
    pub fail_max: usize,
    /// States failing the strict flag check, bishop tetrahedra included.
    pub strict_failing_states: usize,
}

pub const CSV_HEADER: [&str; 8] = [
    "agents",
    "states",
    "pct_npc",
    "dances",
    "commuting_moves",
    "fail_total",
    "fail_mean",
    "fail_max",
];

/// `round(100 * num / den)` with halves rounded up.
pub fn percent_half_up(num: usize, den: usize) -> u64 {
    let (num, den) = (num as u64, den as u64);
    (200 * num + den) / (2 * den)
}

/// Formats hundredths with at most two decimals and no trailing zeros.
pub fn format_centi(centi: u64) -> String {
    let (whole, frac) = (centi / 100, centi % 100);
    match frac {
        0 => whole.to_string(),
        f if f % 10 == 0 => format!("{whole}.{}", f / 10),
        f => format!("{whole}.{f:02}"),
    }
}

impl StatsRow {
    pub fn from_reports(agents: usize, cx: &StateComplex, reports: &[DefectReport]) -> Self {
        let states = reports.len();
        let npc_states = reports.iter().filter(|r| r.tabulated_failures == 0).count();
        let fail_total: usize = reports.iter().map(|r| r.tabulated_failures).sum();
        StatsRow {
            agents,
            states,
            npc_states,
            pct_npc: percent_half_up(npc_states, states),
            dances: cx.dance_squares(),
            commuting_moves: cx.commuting_squares(),
            fail_total,
            fail_mean_centi: percent_half_up(fail_total, states),
            fail_max: reports.iter().map(|r| r.tabulated_failures).max().unwrap_or(0),
            strict_failing_states: reports.iter().filter(|r| !r.npc).count(),
        }
    }

    pub fn fail_mean(&self) -> f64 {
        self.fail_mean_centi as f64 / 100.0
    }

    pub fn record(&self) -> [String; 8] {
        [
            self.agents.to_string(),
            self.states.to_string(),
            self.pct_npc.to_string(),
            self.dances.to_string(),
            self.commuting_moves.to_string(),
            self.fail_total.to_string(),
            format_centi(self.fail_mean_centi),
            self.fail_max.to_string(),
        ]
    }
}

/// Explores from a `k`-agent placement, builds the complex and checks every
/// link.
pub fn table_row(g: &Gridworld, k: usize, budget: usize) -> Result<StatsRow> {
    let s0 = g.packed_state(k, 0)?;
    let sg = explore_with_budget(g, &s0, budget)?;
    stats_for_graph(sg, k, budget)
}

pub fn stats_for_graph(sg: StateGraph, k: usize, budget: usize) -> Result<StatsRow> {
    let cx = StateComplex::build(
        sg,
        ComplexOptions {
            budget,
            ..Default::default()
        },
    )?;
    let reports = check_all(&cx)?;
    Ok(StatsRow::from_reports(k, &cx, &reports))
}

/// One row per agent count, computed in parallel.
pub fn table(g: &Gridworld, agents: impl IntoIterator<Item = usize>, budget: usize) -> Vec<(usize, Result<StatsRow>)> {
    let ks: Vec<usize> = agents.into_iter().collect();
    ks.par_iter().map(|&k| (k, table_row(g, k, budget))).collect()
}

/// Writes rows as CSV. Rows that failed are written with only the agent
/// count filled in.
pub fn write_csv<W: Write>(out: W, rows: &[(usize, Result<StatsRow>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for (k, row) in rows {
        match row {
            Ok(r) => w.write_record(r.record()).map_err(io)?,
            Err(_) => {
                let mut rec = vec![String::new(); 8];
                rec[0] = k.to_string();
                w.write_record(rec).map_err(io)?
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Whether agent/floor inversion maps `a` onto `b`: vertices to vertices,
/// edges to edges with the same generator, commuting squares to commuting
/// squares.
pub fn inversion_isomorphic(a: &StateComplex, b: &StateComplex) -> bool {
    let (ga, gb) = (a.graph(), b.graph());
    if ga.len() != gb.len() || ga.edges().len() != gb.edges().len() {
        return false;
    }
    let map: Option<Vec<usize>> = ga.states().iter().map(|s| gb.find(&s.inverted())).collect();
    let Some(map) = map else {
        return false;
    };
    let edges_ok = ga.edges().iter().all(|e| {
        gb.edge_between(map[e.a], map[e.b])
            .is_some_and(|f| f.generator == e.generator)
    });
    let commuting = |cx: &StateComplex, m: Option<&[usize]>| -> HashSet<Vec<usize>> {
        cx.squares()
            .iter()
            .filter(|s| s.kind == SquareKind::CommutingMoves)
            .map(|s| {
                let mut v: Vec<usize> = s
                    .vertices
                    .iter()
                    .map(|&x| m.map_or(x, |m| m[x]))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    };
    edges_ok && commuting(a, Some(&map)) == commuting(b, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub cells: usize,
    pub rows: Vec<StatsRow>,
    /// `states(k) == states(n - k)` for all k.
    pub states_symmetric: bool,
    /// `commuting(k) == commuting(n - k)` for all k.
    pub commuting_symmetric: bool,
    /// `dances(k) == dances(n - 2 - k)`, with out-of-range counts taken as 0.
    pub dances_symmetric: bool,
    /// `dances(k) == dances(n - k)` for all k; false once anything dances.
    pub dances_inversion_symmetric: bool,
    /// `fail_total(k) == fail_total(n - k)` for all k.
    pub failures_symmetric: bool,
    /// Per k, whether inversion maps the k-agent complex onto the
    /// (n - k)-agent complex.
    pub inversion_isomorphic: Vec<bool>,
}

/// Compares every agent count of an agent-only room with its mirror counts.
pub fn symmetry_report(g: &Gridworld, budget: usize) -> Result<SymmetryReport> {
    let n = g.len();
    let complexes: Vec<StateComplex> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let sg = explore_with_budget(g, &g.packed_state(k, 0)?, budget)?;
            build_complex(sg, 4)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<StatsRow> = complexes
        .par_iter()
        .enumerate()
        .map(|(k, cx)| Ok(StatsRow::from_reports(k, cx, &check_all(cx)?)))
        .collect::<Result<_>>()?;
    let mirror = |f: &dyn Fn(&StatsRow) -> usize| (0..=n).all(|k| f(&rows[k]) == f(&rows[n - k]));
    let dances_symmetric = (0..=n).all(|k| {
        let other = n as i64 - 2 - k as i64;
        let expect = if (0..=n as i64).contains(&other) {
            rows[other as usize].dances
        } else {
            0
        };
        rows[k].dances == expect
    });
    Ok(SymmetryReport {
        cells: n,
        states_symmetric: mirror(&|r| r.states),
        commuting_symmetric: mirror(&|r| r.commuting_moves),
        dances_symmetric,
        dances_inversion_symmetric: mirror(&|r| r.dances),
        failures_symmetric: mirror(&|r| r.fail_total),
        inversion_isomorphic: (0..=n)
            .map(|k| inversion_isomorphic(&complexes[k], &complexes[n - k]))
            .collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exploration::DEFAULT_BUDGET;

    #[test]
    fn counts() {
        assert_eq!(state_count(9, 2, 0).unwrap(), BigUint::from(36u32));
        assert_eq!(state_count(9, 1, 1).unwrap(), BigUint::from(72u32));
        assert!(state_count(3, 2, 2).is_err());
        let big = state_count(100, 50, 0).unwrap();
        assert_eq!(big.to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn rounding() {
        assert_eq!(percent_half_up(28, 36), 78);
        assert_eq!(percent_half_up(1, 2), 50);
        assert_eq!(percent_half_up(1, 8), 13);
        assert_eq!(percent_half_up(32, 36), 89);
        assert_eq!(format_centi(89), "0.89");
        assert_eq!(format_centi(0), "0");
        assert_eq!(format_centi(150), "1.5");
        assert_eq!(format_centi(205), "2.05");
    }

    #[test]
    fn enumeration_matches_count() {
        let g = Gridworld::room(3, 2);
        let all = enumerate_states(&g, 2, 1).unwrap();
        assert_eq!(all.len(), 60);
        let keys: Vec<String> = all.iter().map(State::key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn empty_room_row() {
        let row = table_row(&Gridworld::room(3, 3), 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(row.record(), ["0", "1", "100", "0", "0", "0", "0", "0"]);
    }

    #[test]
    fn two_by_two_row() {
        let row = table_row(&Gridworld::room(2, 2), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(row.record().join(","), "2,6,100,0,2,0,0,0");
    }

    #[test]
    fn csv_marks_failed_rows() {
        let g = Gridworld::room(2, 2);
        let rows = vec![(1, table_row(&g, 1, DEFAULT_BUDGET)), (2, table_row(&g, 2, 3))];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "agents,states,pct_npc,dances,commuting_moves,fail_total,fail_mean,fail_max\n\
             1,4,100,1,0,0,0,0\n\
             2,,,,,,,\n"
        );
    }
}
