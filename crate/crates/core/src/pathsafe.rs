//! Shortest routes in the state graph and collision-safe batching of
//! simultaneous actions.

use std::collections::VecDeque;

use crate::complex::StateComplex;
use crate::error::{Error, Result};
use crate::exploration::StateGraph;
use crate::generators::{Action, Generator};
use crate::grid::State;
use crate::links::{build_link, check_link};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub states: Vec<usize>,
    /// `generators[i]` takes `states[i]` to `states[i + 1]`.
    pub generators: Vec<Generator>,
}

impl Path {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Breadth-first distances to `target`; `usize::MAX` where unreachable.
pub fn distances_to(sg: &StateGraph, target: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; sg.len()];
    dist[target] = 0;
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in sg.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A minimum-length path from `a` to `b`. Among shortest paths the one whose
/// sequence of state keys is lexicographically smallest is returned.
pub fn shortest_path(sg: &StateGraph, a: usize, b: usize) -> Result<Path> {
    if a >= sg.len() || b >= sg.len() {
        return Err(Error::UnknownState(format!("#{}", a.max(b))));
    }
    let dist = distances_to(sg, b);
    if dist[a] == usize::MAX {
        return Err(Error::Unreachable {
            from: sg.key(a),
            to: sg.key(b),
        });
    }
    let mut path = Path {
        states: vec![a],
        generators: Vec::new(),
    };
    let mut v = a;
    while v != b {
        let (w, e) = sg
            .neighbours(v)
            .iter()
            .filter(|&&(w, _)| dist[w] + 1 == dist[v])
            .min_by_key(|&&(w, _)| sg.key(w))
            .copied()
            .expect("a neighbour one step closer exists");
        path.states.push(w);
        path.generators.push(sg.edge(e).generator);
        v = w;
    }
    Ok(path)
}

/// Runs one action: a generator once, a dance as one full circuit of the
/// block ending where it started.
pub fn execute(action: &Action, s: &State) -> Result<State> {
    match action {
        Action::Gen(g) => g.apply(s),
        Action::Dance(d) => {
            let circuit = d.circuit(s).ok_or(Error::NotAdmissible {
                cell: d.support()[0],
            })?;
            let mut t = s.clone();
            for m in circuit {
                m.apply_in_place(&mut t)?;
            }
            Ok(t)
        }
    }
}

/// Runs a batch in the given order.
pub fn execute_batch(batch: &[Action], s: &State) -> Result<State> {
    batch.iter().try_fold(s.clone(), |t, a| execute(a, &t))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelPlan {
    pub start: State,
    /// Each batch commutes at the state reached after the earlier batches.
    pub batches: Vec<Vec<Action>>,
    /// Requests that stopped being admissible after earlier batches ran.
    pub stranded: Vec<Action>,
}

impl ParallelPlan {
    pub fn final_state(&self) -> Result<State> {
        self.batches
            .iter()
            .try_fold(self.start.clone(), |s, b| execute_batch(b, &s))
    }
}

/// Packs `requested` into batches that can run simultaneously.
///
/// Dances are taken before generators, each group in request order. A
/// dance ends where it started, so it never strands a later request. An
/// item joins the current batch when its support is disjoint from every
/// member and the link generators of the enlarged batch do not contain an
/// empty simplex of the current state's link. Everything else is deferred
/// to a later batch, which starts from the state left by the previous one.
pub fn plan_parallel(cx: &StateComplex, s: usize, requested: &[Action]) -> Result<ParallelPlan> {
    let sg = cx.graph();
    if s >= sg.len() {
        return Err(Error::UnknownState(format!("#{s}")));
    }
    let start = sg.state(s).clone();
    for a in requested {
        if !a.is_admissible(&start) {
            return Err(Error::NotAdmissible {
                cell: a.support()[0],
            });
        }
    }
    let mut plan = ParallelPlan {
        start: start.clone(),
        batches: Vec::new(),
        stranded: Vec::new(),
    };
    let mut current = start;
    let (mut remaining, gens): (Vec<Action>, Vec<Action>) =
        requested.iter().partition(|a| matches!(a, Action::Dance(_)));
    remaining.extend(gens);
    while !remaining.is_empty() {
        let v = sg
            .find(&current)
            .ok_or_else(|| Error::UnknownState(current.key()))?;
        let report = check_link(&build_link(cx, v)?);
        let empty: Vec<Vec<Generator>> = report
            .empty_2simplices
            .iter()
            .map(|t| t.to_vec())
            .chain(report.empty_3simplices.iter().map(|t| t.to_vec()))
            .collect();
        let mut batch: Vec<Action> = Vec::new();
        let mut deferred = Vec::new();
        for item in remaining {
            if !item.is_admissible(&current) {
                plan.stranded.push(item);
                continue;
            }
            let disjoint = batch.iter().all(|b| b.is_disjoint(&item));
            let safe = disjoint && {
                let gens: Vec<Generator> = batch
                    .iter()
                    .chain(std::iter::once(&item))
                    .flat_map(|a| a.moves_at(&current))
                    .collect();
                !empty.iter().any(|e| e.iter().all(|g| gens.contains(g)))
            };
            if safe {
                batch.push(item);
            } else {
                deferred.push(item);
            }
        }
        if batch.is_empty() {
            plan.stranded.extend(deferred);
            break;
        }
        current = execute_batch(&batch, &current)?;
        plan.batches.push(batch);
        remaining = deferred;
    }
    Ok(plan)
}
