//! Breadth-first construction of the state graph.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::generators::{enumerate_generators, Generator};
use crate::grid::{Gridworld, State};

/// Default cap on the number of explored states.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Reads the vertex budget from `GRIDCX_BUDGET`, falling back to
/// [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> usize {
    std::env::var("GRIDCX_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// An undirected edge with `a < b`, realised by `generator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub generator: Generator,
}

/// The reachable component of a state under Moves and Push/Pulls.
///
/// Vertex ids follow BFS discovery order.
#[derive(Debug, Clone)]
pub struct StateGraph {
    grid: Gridworld,
    states: Vec<State>,
    index: HashMap<State, usize>,
    edges: Vec<Edge>,
    /// `(neighbour, edge id)` per vertex, in generator order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl StateGraph {
    /// Assembles a graph from explicit parts. Edges are normalised so that
    /// `a < b`; duplicates and inconsistent edges are rejected.
    pub fn from_parts(grid: Gridworld, states: Vec<State>, edges: Vec<Edge>) -> Result<Self> {
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            grid.check_state(s)?;
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Bundle(format!("duplicate state {}", s.key())));
            }
        }
        let mut g = StateGraph {
            grid,
            adjacency: vec![Vec::new(); states.len()],
            states,
            index,
            edges: Vec::with_capacity(edges.len()),
        };
        for e in edges {
            let (a, b) = (e.a.min(e.b), e.a.max(e.b));
            if b >= g.states.len() || a == b {
                return Err(Error::Bundle(format!("bad edge {a}-{b}")));
            }
            match e.generator.apply(&g.states[a]) {
                Ok(t) if t == g.states[b] => {}
                _ => {
                    return Err(Error::Bundle(format!(
                        "edge {a}-{b} is not realised by its generator"
                    )))
                }
            }
            g.push_edge(a, b, e.generator);
        }
        for adj in &mut g.adjacency {
            adj.sort_by_key(|&(_, e)| e);
        }
        Ok(g)
    }

    fn push_edge(&mut self, a: usize, b: usize, generator: Generator) {
        let id = self.edges.len();
        self.edges.push(Edge { a, b, generator });
        self.adjacency[a].push((b, id));
        self.adjacency[b].push((a, id));
    }

    pub fn grid(&self) -> &Gridworld {
        &self.grid
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, v: usize) -> &State {
        &self.states[v]
    }

    pub fn key(&self, v: usize) -> String {
        self.states[v].key()
    }

    pub fn find(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn find_key(&self, key: &str) -> Result<usize> {
        State::from_key(key)
            .and_then(|s| self.find(&s))
            .ok_or_else(|| Error::UnknownState(key.to_owned()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// `(neighbour, edge id)` pairs at `v`.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Generators labelling the edges at `v`, sorted.
    pub fn generators_at(&self, v: usize) -> Vec<Generator> {
        let mut out: Vec<Generator> = self.adjacency[v]
            .iter()
            .map(|&(_, e)| self.edges[e].generator)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&Edge> {
        self.adjacency[a]
            .iter()
            .find(|&&(n, _)| n == b)
            .map(|&(_, e)| &self.edges[e])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_between(a, b).is_some()
    }
}

/// The canonical vertex key of a state.
pub fn canonical_key(s: &State) -> String {
    s.key()
}

/// Explores from `s0` with the budget from the environment.
pub fn explore(g: &Gridworld, s0: &State) -> Result<StateGraph> {
    explore_with_budget(g, s0, budget_from_env())
}

/// Breadth-first search over admissible generators.
///
/// Vertices are numbered in discovery order and generators are tried in
/// their sorted order, so the output is fully deterministic. Fails with
/// [`Error::BudgetExceeded`] once more than `budget` states are found.
pub fn explore_with_budget(g: &Gridworld, s0: &State, budget: usize) -> Result<StateGraph> {
    g.check_state(s0)?;
    let mut sg = StateGraph {
        grid: g.clone(),
        states: vec![s0.clone()],
        index: HashMap::from([(s0.clone(), 0)]),
        edges: Vec::new(),
        adjacency: vec![Vec::new()],
    };
    let mut todo = VecDeque::from([0usize]);
    while let Some(v) = todo.pop_front() {
        let here = sg.states[v].clone();
        for phi in enumerate_generators(g, &here) {
            let next = phi.apply(&here)?;
            let w = match sg.index.get(&next) {
                Some(&w) => w,
                None => {
                    if sg.states.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            limit: budget,
                            explored: sg.states.len(),
                        });
                    }
                    let w = sg.states.len();
                    sg.index.insert(next.clone(), w);
                    sg.states.push(next);
                    sg.adjacency.push(Vec::new());
                    todo.push_back(w);
                    w
                }
            };
            // vertices are dequeued in id order, so an edge to an earlier
            // vertex was already added from the other side
            if w > v {
                sg.push_edge(v, w, phi);
            }
        }
    }
    Ok(sg)
}
