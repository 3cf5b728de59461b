//! The modified state complex.
//!
//! Squares are found twice: by classifying the 4-cycles of the state graph,
//! and as the 2-dimensional members of the cube list. Cubes of every
//! dimension are discovered per state from support-disjoint sets of
//! generators and dances, so each one carries its `(l, m)` decomposition
//! with `dim = l + 2m`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exploration::{StateGraph, DEFAULT_BUDGET};
use crate::generators::{enumerate_dances, Action, Dance, Generator, GeneratorKind};
use crate::grid::State;

/// Default cube cap. Link failures live in link dimensions 2 and 3, which
/// only need cubes up to dimension 4.
pub const DEFAULT_MAX_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SquareKind {
    CommutingMoves,
    Dance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    /// In cycle order, starting from the smallest id.
    pub vertices: [usize; 4],
    pub kind: SquareKind,
    /// Two generators, or one dance.
    pub witnesses: Vec<Action>,
}

impl Square {
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v = self.vertices.to_vec();
        v.sort_unstable();
        v
    }
}

/// An n-cube spanned by `l` commuting generators and `m` dances at `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    /// The smallest vertex id of the cube.
    pub base: usize,
    /// Sorted, pairwise support-disjoint, all admissible at every vertex.
    pub witnesses: Vec<Action>,
    /// Sorted vertex ids, `2^dim` of them.
    pub vertices: Vec<usize>,
}

impl Cube {
    pub fn l(&self) -> usize {
        self.witnesses.iter().filter(|w| matches!(w, Action::Gen(_))).count()
    }

    pub fn m(&self) -> usize {
        self.witnesses.len() - self.l()
    }

    pub fn dim(&self) -> usize {
        self.l() + 2 * self.m()
    }

    pub fn square_kind(&self) -> Option<SquareKind> {
        match (self.l(), self.m()) {
            (2, 0) => Some(SquareKind::CommutingMoves),
            (0, 1) => Some(SquareKind::Dance),
            _ => None,
        }
    }

    /// The faces of the cube as `(witnesses, sorted vertex ids)`.
    ///
    /// A generator gives two faces, one per local state; a dance gives four,
    /// one per constituent Move.
    pub fn faces(&self, sg: &StateGraph) -> Vec<(Vec<Action>, Vec<usize>)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for (i, w) in self.witnesses.iter().enumerate() {
            let rest: Vec<Action> = self
                .witnesses
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, a)| *a)
                .collect();
            match w {
                Action::Gen(g) => {
                    for side in 0..2 {
                        let verts: Vec<usize> = self
                            .vertices
                            .iter()
                            .copied()
                            .filter(|&v| g.matching_local(sg.state(v)) == Some(side))
                            .collect();
                        out.push((rest.clone(), verts));
                    }
                }
                Action::Dance(d) => {
                    for mv in d.constituent_moves() {
                        let verts: Vec<usize> = self
                            .vertices
                            .iter()
                            .copied()
                            .filter(|&v| {
                                d.dancer(sg.state(v))
                                    .is_some_and(|c| mv.support().contains(&c))
                            })
                            .collect();
                        let mut ws = rest.clone();
                        ws.push(Action::Gen(mv));
                        ws.sort_unstable();
                        out.push((ws, verts));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexOptions {
    pub max_dim: usize,
    /// Fill dance squares (the modified complex) or not (the original one).
    pub dances: bool,
    /// Cap on the number of stored cubes.
    pub budget: usize,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            max_dim: DEFAULT_MAX_DIM,
            dances: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StateComplex {
    graph: StateGraph,
    options: ComplexOptions,
    squares: Vec<Square>,
    cubes: Vec<Cube>,
    by_vertices: HashMap<Vec<usize>, usize>,
    incidence: Vec<Vec<usize>>,
    duplicates: usize,
}

/// Every 4-cycle of the graph, each once, as `[v0, v1, v2, v3]` with `v0`
/// the smallest id and `v1 < v3`.
pub fn four_cycles(sg: &StateGraph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    let mut mark: Vec<Vec<usize>> = vec![Vec::new(); sg.len()];
    for v0 in 0..sg.len() {
        let nbrs: Vec<usize> = sg
            .neighbours(v0)
            .iter()
            .map(|&(n, _)| n)
            .filter(|&n| n > v0)
            .collect();
        for &v1 in &nbrs {
            for &(v2, _) in sg.neighbours(v1) {
                if v2 > v0 {
                    mark[v2].push(v1);
                }
            }
        }
        for &v3 in &nbrs {
            for &(v2, _) in sg.neighbours(v3) {
                if v2 <= v0 {
                    continue;
                }
                for &v1 in &mark[v2] {
                    if v1 < v3 && v1 != v2 && v3 != v2 {
                        out.push([v0, v1, v2, v3]);
                    }
                }
            }
        }
        for &v1 in &nbrs {
            for &(v2, _) in sg.neighbours(v1) {
                mark[v2].clear();
            }
        }
    }
    out.sort_unstable();
    out
}

fn gen(sg: &StateGraph, a: usize, b: usize) -> Generator {
    sg.edge_between(a, b).expect("cycle edge").generator
}

/// Classifies a 4-cycle as a commuting-move square or a dance square.
pub fn classify_cycle(sg: &StateGraph, c: [usize; 4]) -> Option<Square> {
    let [v0, v1, v2, v3] = c;
    let (g01, g12, g23, g30) = (gen(sg, v0, v1), gen(sg, v1, v2), gen(sg, v2, v3), gen(sg, v3, v0));
    if g01 == g23 && g12 == g30 && g01.is_disjoint(g12.support()) {
        let mut w = vec![Action::Gen(g01), Action::Gen(g12)];
        w.sort_unstable();
        return Some(Square {
            vertices: c,
            kind: SquareKind::CommutingMoves,
            witnesses: w,
        });
    }
    let gens = [g01, g12, g23, g30];
    if gens.iter().all(|g| g.kind() == GeneratorKind::Move) {
        let mut cells: Vec<usize> = gens.iter().flat_map(|g| g.support().to_vec()).collect();
        cells.sort_unstable();
        cells.dedup();
        if cells.len() == 4 {
            let block = sg.grid().blocks().into_iter().find(|b| {
                let mut sorted = b.to_vec();
                sorted.sort_unstable();
                sorted == cells
            })?;
            let dance = Dance::new(block);
            if !dance.is_admissible(sg.state(v0)) {
                return None;
            }
            let mut moves = dance.constituent_moves().to_vec();
            let mut seen = gens.to_vec();
            moves.sort_unstable();
            seen.sort_unstable();
            if moves == seen {
                return Some(Square {
                    vertices: c,
                    kind: SquareKind::Dance,
                    witnesses: vec![Action::Dance(dance)],
                });
            }
        }
    }
    None
}

/// All fillable 4-cycles of the state graph, classified.
pub fn find_squares(sg: &StateGraph) -> Vec<Square> {
    four_cycles(sg)
        .into_iter()
        .filter_map(|c| classify_cycle(sg, c))
        .collect()
}

/// States obtained from `s` by every combination of the witnesses.
pub fn cube_states(s: &State, witnesses: &[Action]) -> Result<Vec<State>> {
    let mut list = vec![s.clone()];
    for w in witnesses {
        match w {
            Action::Gen(g) => {
                let flipped = list.iter().map(|t| g.apply(t)).collect::<Result<Vec<_>>>()?;
                list.extend(flipped);
            }
            Action::Dance(d) => {
                if !list.iter().all(|t| d.is_admissible(t)) {
                    return Err(Error::NotAdmissible {
                        cell: d.support()[0],
                    });
                }
                list = list
                    .iter()
                    .flat_map(|t| (0..4).map(move |i| d.with_local(t, i)))
                    .collect();
            }
        }
    }
    Ok(list)
}

fn vertex_ids(sg: &StateGraph, s: &State, witnesses: &[Action]) -> Result<Vec<usize>> {
    let mut ids = cube_states(s, witnesses)?
        .iter()
        .map(|t| sg.find(t).ok_or_else(|| Error::UnknownState(t.key())))
        .collect::<Result<Vec<_>>>()?;
    ids.sort_unstable();
    Ok(ids)
}

/// Admissible generators and (optionally) dances at `v`, sorted.
pub fn actions_at(sg: &StateGraph, v: usize, dances: bool) -> Vec<Action> {
    let mut out: Vec<Action> = sg.generators_at(v).into_iter().map(Action::Gen).collect();
    if dances {
        out.extend(enumerate_dances(sg.grid(), sg.state(v)).into_iter().map(Action::Dance));
    }
    out
}

/// Every commuting subset of `actions` with `2 <= dim <= max_dim`.
pub fn commuting_subsets(actions: &[Action], max_dim: usize) -> Vec<Vec<Action>> {
    fn rec(
        actions: &[Action],
        start: usize,
        chosen: &mut Vec<Action>,
        dim: usize,
        max_dim: usize,
        out: &mut Vec<Vec<Action>>,
    ) {
        if dim >= 2 {
            out.push(chosen.clone());
        }
        for i in start..actions.len() {
            let a = actions[i];
            if dim + a.dim() > max_dim || !chosen.iter().all(|c| c.is_disjoint(&a)) {
                continue;
            }
            chosen.push(a);
            rec(actions, i + 1, chosen, dim + a.dim(), max_dim, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(actions, 0, &mut Vec::new(), 0, max_dim, &mut out);
    out
}

fn cubes_based_at(sg: &StateGraph, v: usize, opts: &ComplexOptions) -> Result<Vec<Cube>> {
    let actions = actions_at(sg, v, opts.dances);
    let mut out = Vec::new();
    for witnesses in commuting_subsets(&actions, opts.max_dim) {
        let vertices = vertex_ids(sg, sg.state(v), &witnesses)?;
        // each cube is found at all of its vertices; keep it at the smallest
        if vertices[0] == v {
            out.push(Cube {
                base: v,
                witnesses,
                vertices,
            });
        }
    }
    Ok(out)
}

/// The modified state complex with cubes up to `max_dim`.
pub fn build_complex(sg: StateGraph, max_dim: usize) -> Result<StateComplex> {
    StateComplex::build(
        sg,
        ComplexOptions {
            max_dim,
            ..Default::default()
        },
    )
}

/// The complex without dance cubes.
pub fn original_complex(sg: StateGraph, max_dim: usize) -> Result<StateComplex> {
    StateComplex::build(
        sg,
        ComplexOptions {
            max_dim,
            dances: false,
            ..Default::default()
        },
    )
}

/// Results of the structural self-checks on a complex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    /// `(cube index, face witnesses)` for faces that are not stored.
    pub missing_faces: Vec<(usize, Vec<Action>)>,
    /// Cubes whose vertex set was produced by two distinct witness sets.
    pub duplicate_vertex_sets: usize,
    /// Whether the classified 4-cycles and the dim-2 cubes agree.
    pub squares_match_cubes: bool,
    /// Cubes whose vertex count is not `2^dim`.
    pub bad_vertex_counts: usize,
}

impl InvariantReport {
    pub fn is_clean(&self) -> bool {
        self.missing_faces.is_empty()
            && self.duplicate_vertex_sets == 0
            && self.squares_match_cubes
            && self.bad_vertex_counts == 0
    }
}

impl StateComplex {
    pub fn build(sg: StateGraph, options: ComplexOptions) -> Result<Self> {
        if options.max_dim < 2 {
            return Err(Error::CubeCap {
                have: options.max_dim,
                need: 2,
            });
        }
        let per_state = (0..sg.len())
            .into_par_iter()
            .map(|v| cubes_based_at(&sg, v, &options))
            .collect::<Result<Vec<_>>>()?;
        let cubes: Vec<Cube> = per_state.into_iter().flatten().collect();
        if cubes.len() > options.budget {
            return Err(Error::BudgetExceeded {
                limit: options.budget,
                explored: cubes.len(),
            });
        }
        let squares = find_squares(&sg)
            .into_iter()
            .filter(|s| options.dances || s.kind == SquareKind::CommutingMoves)
            .collect();
        Ok(Self::assemble(sg, options, squares, cubes))
    }

    fn assemble(
        graph: StateGraph,
        options: ComplexOptions,
        squares: Vec<Square>,
        mut cubes: Vec<Cube>,
    ) -> Self {
        cubes.sort_by(|a, b| {
            (a.dim(), a.base, &a.witnesses).cmp(&(b.dim(), b.base, &b.witnesses))
        });
        let mut by_vertices = HashMap::with_capacity(cubes.len());
        let mut kept = Vec::with_capacity(cubes.len());
        let mut duplicates = 0;
        for c in cubes {
            if by_vertices.contains_key(&c.vertices) {
                duplicates += 1;
                continue;
            }
            by_vertices.insert(c.vertices.clone(), kept.len());
            kept.push(c);
        }
        let mut incidence = vec![Vec::new(); graph.len()];
        for (i, c) in kept.iter().enumerate() {
            for &v in &c.vertices {
                incidence[v].push(i);
            }
        }
        StateComplex {
            graph,
            options,
            squares,
            cubes: kept,
            by_vertices,
            incidence,
            duplicates,
        }
    }

    /// Rebuilds a complex from stored cubes given as `(base, witnesses)`.
    /// Vertex sets are recomputed from the witnesses.
    pub fn from_parts(
        graph: StateGraph,
        options: ComplexOptions,
        cubes: Vec<(usize, Vec<Action>)>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(cubes.len());
        for (base, mut witnesses) in cubes {
            if base >= graph.len() {
                return Err(Error::Bundle(format!("cube base {base} out of range")));
            }
            witnesses.sort_unstable();
            let vertices = vertex_ids(&graph, graph.state(base), &witnesses)?;
            out.push(Cube {
                base: vertices[0],
                witnesses,
                vertices,
            });
        }
        let squares = find_squares(&graph)
            .into_iter()
            .filter(|s| options.dances || s.kind == SquareKind::CommutingMoves)
            .collect();
        Ok(Self::assemble(graph, options, squares, out))
    }

    pub fn graph(&self) -> &StateGraph {
        &self.graph
    }

    pub fn into_graph(self) -> StateGraph {
        self.graph
    }

    pub fn options(&self) -> ComplexOptions {
        self.options
    }

    pub fn max_dim(&self) -> usize {
        self.options.max_dim
    }

    pub fn has_dances(&self) -> bool {
        self.options.dances
    }

    /// The classified 4-cycles that are filled in this complex.
    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Cubes of dimension 2 and up, sorted by dimension, base, witnesses.
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cubes_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cube> {
        self.cubes.iter().filter(move |c| c.dim() == dim)
    }

    /// Cubes having `v` as a vertex.
    pub fn cubes_at(&self, v: usize) -> impl Iterator<Item = &Cube> {
        self.incidence[v].iter().map(|&i| &self.cubes[i])
    }

    pub fn find_cube(&self, vertices: &[usize]) -> Option<&Cube> {
        self.by_vertices.get(vertices).map(|&i| &self.cubes[i])
    }

    pub fn dance_squares(&self) -> usize {
        self.cubes_of_dim(2).filter(|c| c.m() == 1).count()
    }

    pub fn commuting_squares(&self) -> usize {
        self.cubes_of_dim(2).filter(|c| c.l() == 2).count()
    }

    /// Face closure, vertex-set uniqueness and square/cube agreement.
    pub fn check_invariants(&self) -> InvariantReport {
        let mut report = InvariantReport {
            duplicate_vertex_sets: self.duplicates,
            ..Default::default()
        };
        for (i, c) in self.cubes.iter().enumerate() {
            if c.vertices.len() != 1 << c.dim() {
                report.bad_vertex_counts += 1;
            }
            for (ws, verts) in c.faces(&self.graph) {
                let present = if verts.len() == 2 {
                    self.graph.has_edge(verts[0], verts[1])
                } else {
                    self.find_cube(&verts)
                        .is_some_and(|f| f.witnesses == ws)
                };
                if !present {
                    report.missing_faces.push((i, ws));
                }
            }
        }
        let from_cycles: HashSet<(Vec<usize>, SquareKind)> = self
            .squares
            .iter()
            .map(|s| (s.vertex_set(), s.kind))
            .collect();
        let from_cubes: HashSet<(Vec<usize>, SquareKind)> = self
            .cubes_of_dim(2)
            .filter_map(|c| Some((c.vertices.clone(), c.square_kind()?)))
            .collect();
        report.squares_match_cubes =
            from_cycles == from_cubes && from_cycles.len() == self.squares.len();
        report
    }
}
