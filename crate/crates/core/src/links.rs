//! Vertex links, flag checks and the knight / 2-step bishop patterns.
//!
//! The link of a state has one vertex per admissible generator. Every cube
//! incident to the state contributes one simplex: the generators at its
//! corner, where a dance contributes the two constituent Moves admissible
//! there.
//!
//! Two counts are reported per state. The strict flag check looks for
//! cliques whose proper faces are all present but which span no simplex
//! (empty 2- and 3-simplices). The tabulated count adds every empty
//! 2-simplex to every 4-clique that has a hollow triangle face; it is the
//! per-state failure figure used by the summary tables and it never counts
//! a tetrahedron whose four triangles are all filled.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::StateComplex;
use crate::error::{Error, Result};
use crate::generators::{Dance, Generator};
use crate::grid::{Gridworld, Label, State};

/// Smallest cube cap for which links are complete up to dimension 3.
pub const LINK_CUBE_CAP: usize = 4;

#[derive(Debug, Clone)]
pub struct LinkComplex {
    base: usize,
    vertices: Vec<Generator>,
    /// Sorted vertex-index sets of size >= 2.
    simplices: HashSet<Vec<usize>>,
    adjacent: Vec<Vec<bool>>,
    max_simplex_dim: usize,
    agent_only: bool,
}

impl LinkComplex {
    pub fn base(&self) -> usize {
        self.base
    }

    /// Link vertices: the admissible generators at the base state, sorted.
    pub fn vertices(&self) -> &[Generator] {
        &self.vertices
    }

    /// Highest simplex dimension the link is complete to.
    pub fn max_simplex_dim(&self) -> usize {
        self.max_simplex_dim
    }

    pub fn is_agent_only(&self) -> bool {
        self.agent_only
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        match simplex.len() {
            0 => true,
            1 => simplex[0] < self.vertices.len(),
            _ => self.simplices.contains(simplex),
        }
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adjacent[a][b]
    }

    /// Number of `k`-simplices; `k = 0` counts vertices.
    pub fn simplex_count(&self, k: usize) -> usize {
        if k == 0 {
            self.vertices.len()
        } else {
            self.simplices.iter().filter(|s| s.len() == k + 1).count()
        }
    }

    /// All cliques of the 1-skeleton with exactly `size` vertices, each
    /// sorted, in lexicographic order.
    pub fn cliques(&self, size: usize) -> Vec<Vec<usize>> {
        fn rec(
            lk: &LinkComplex,
            start: usize,
            chosen: &mut Vec<usize>,
            size: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if chosen.len() == size {
                out.push(chosen.clone());
                return;
            }
            for v in start..lk.vertices.len() {
                if chosen.iter().all(|&c| lk.adjacent[c][v]) {
                    chosen.push(v);
                    rec(lk, v + 1, chosen, size, out);
                    chosen.pop();
                }
            }
        }
        let mut out = Vec::new();
        if size > 0 {
            rec(self, 0, &mut Vec::new(), size, &mut out);
        }
        out
    }

    fn faces_present(&self, clique: &[usize]) -> bool {
        (0..clique.len()).all(|skip| {
            let face: Vec<usize> = clique
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            self.contains(&face)
        })
    }

    /// Cliques of `dim + 1` vertices whose facets all exist but which span
    /// no simplex.
    pub fn empty_simplices(&self, dim: usize) -> Result<Vec<Vec<usize>>> {
        if dim > self.max_simplex_dim {
            return Err(Error::CubeCap {
                have: self.max_simplex_dim + 1,
                need: dim + 1,
            });
        }
        Ok(self
            .cliques(dim + 1)
            .into_iter()
            .filter(|c| !self.contains(c) && self.faces_present(c))
            .collect())
    }

    fn gens<const N: usize>(&self, idx: &[usize]) -> [Generator; N] {
        std::array::from_fn(|i| self.vertices[idx[i]])
    }
}

/// The link of state `v`, complete up to dimension `max_dim - 1` of the
/// complex.
pub fn build_link(cx: &StateComplex, v: usize) -> Result<LinkComplex> {
    let sg = cx.graph();
    if v >= sg.len() {
        return Err(Error::UnknownState(format!("#{v}")));
    }
    if cx.max_dim() < LINK_CUBE_CAP {
        return Err(Error::CubeCap {
            have: cx.max_dim(),
            need: LINK_CUBE_CAP,
        });
    }
    let state = sg.state(v);
    let vertices = sg.generators_at(v);
    let n = vertices.len();
    let mut simplices = HashSet::new();
    for cube in cx.cubes_at(v) {
        let mut simplex: Vec<usize> = cube
            .witnesses
            .iter()
            .flat_map(|w| w.moves_at(state))
            .map(|g| {
                vertices
                    .binary_search(&g)
                    .expect("cube corner generators are admissible at the base")
            })
            .collect();
        simplex.sort_unstable();
        simplices.insert(simplex);
    }
    let mut adjacent = vec![vec![false; n]; n];
    for s in simplices.iter().filter(|s| s.len() == 2) {
        adjacent[s[0]][s[1]] = true;
        adjacent[s[1]][s[0]] = true;
    }
    Ok(LinkComplex {
        base: v,
        vertices,
        simplices,
        adjacent,
        max_simplex_dim: cx.max_dim() - 1,
        agent_only: state.is_agent_only(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No empty simplices; the link is flag.
    Npc,
    /// At least one empty 2- or 3-simplex.
    Failing,
    /// Objects are present and no defect was found in dimensions 2-3; higher
    /// dimensions are not covered by the pattern classification.
    FlagCheckLimitedToDim3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub base: usize,
    pub empty_2simplices: Vec<[Generator; 3]>,
    pub empty_3simplices: Vec<[Generator; 4]>,
    /// 4-cliques with at least one hollow triangle face.
    pub hollow_4cliques: Vec<[Generator; 4]>,
    pub npc: bool,
    /// `|empty_2simplices| + |empty_3simplices|`
    pub failure_count: usize,
    /// `|empty_2simplices| + |hollow_4cliques|`
    pub tabulated_failures: usize,
    pub verdict: Verdict,
}

/// Flag check of a link in dimensions 2 and 3.
pub fn check_link(lk: &LinkComplex) -> DefectReport {
    let empty2 = lk
        .empty_simplices(2)
        .expect("links are built to dimension 3");
    let empty3 = lk
        .empty_simplices(3)
        .expect("links are built to dimension 3");
    let hollow4: Vec<Vec<usize>> = lk
        .cliques(4)
        .into_iter()
        .filter(|c| !lk.contains(c) && !lk.faces_present(c))
        .collect();
    let failure_count = empty2.len() + empty3.len();
    let npc = failure_count == 0;
    let verdict = match (npc, lk.agent_only) {
        (false, _) => Verdict::Failing,
        (true, true) => Verdict::Npc,
        (true, false) => Verdict::FlagCheckLimitedToDim3,
    };
    DefectReport {
        base: lk.base,
        empty_2simplices: empty2.iter().map(|c| lk.gens(c)).collect(),
        empty_3simplices: empty3.iter().map(|c| lk.gens(c)).collect(),
        tabulated_failures: empty2.len() + hollow4.len(),
        hollow_4cliques: hollow4.iter().map(|c| lk.gens(c)).collect(),
        npc,
        failure_count,
        verdict,
    }
}

/// Empty simplices in dimensions `4..=max_dim`, which the classification
/// rules out for agent-only gridworlds. Needs cubes up to `max_dim + 1`.
pub fn check_link_higher(lk: &LinkComplex, max_dim: usize) -> Result<Vec<Vec<Generator>>> {
    let mut out = Vec::new();
    for dim in 4..=max_dim {
        for c in lk.empty_simplices(dim)? {
            out.push(c.iter().map(|&i| lk.vertices[i]).collect());
        }
    }
    Ok(out)
}

/// Builds and checks the link of every state, in vertex order.
pub fn check_all(cx: &StateComplex) -> Result<Vec<DefectReport>> {
    (0..cx.graph().len())
        .into_par_iter()
        .map(|v| build_link(cx, v).map(|lk| check_link(&lk)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    Knight,
    Bishop,
}

/// A placement of agents that can make a link fail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternHit {
    pub kind: PatternKind,
    /// One dancer for a knight, two for a bishop.
    pub dancers: Vec<usize>,
    pub blocks: Vec<[usize; 4]>,
    /// The cell both parties want: the corner opposite the dancer(s).
    pub conflict: usize,
    /// The agent stepping into the conflict cell (knight only).
    pub mover: Option<usize>,
}

impl PatternHit {
    /// Sorted cells covered by the pattern.
    pub fn cells(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .blocks
            .iter()
            .flatten()
            .copied()
            .chain(self.mover)
            .collect();
        set.into_iter().collect()
    }
}

/// Scans an agent-only state for knight and 2-step bishop placements.
///
/// A knight is a dancer in a 2x2 block plus another agent, outside the
/// block, next to the corner opposite the dancer. A bishop is two dancers
/// whose blocks overlap in a single cell that is opposite both of them.
pub fn pattern_scan(g: &Gridworld, s: &State) -> Result<Vec<PatternHit>> {
    g.check_state(s)?;
    if !s.is_agent_only() {
        return Err(Error::ObjectsPresent);
    }
    let dances: Vec<(Dance, usize)> = g
        .blocks()
        .into_iter()
        .map(Dance::new)
        .filter_map(|d| Some((d, d.dancer(s)?)))
        .collect();
    let mut hits = Vec::new();
    for &(d, dancer) in &dances {
        let far = d.opposite(dancer);
        for &n in g.neighbour_ids(far) {
            if s.get(n) == Label::Agent && !d.support().contains(&n) {
                hits.push(PatternHit {
                    kind: PatternKind::Knight,
                    dancers: vec![dancer],
                    blocks: vec![d.block()],
                    conflict: far,
                    mover: Some(n),
                });
            }
        }
    }
    for (i, &(d1, a1)) in dances.iter().enumerate() {
        for &(d2, a2) in &dances[i + 1..] {
            let shared: Vec<usize> = d1
                .support()
                .iter()
                .copied()
                .filter(|c| d2.support().contains(c))
                .collect();
            if let [c] = shared[..] {
                if d1.opposite(a1) == c && d2.opposite(a2) == c {
                    hits.push(PatternHit {
                        kind: PatternKind::Bishop,
                        dancers: vec![a1, a2],
                        blocks: vec![d1.block(), d2.block()],
                        conflict: c,
                        mover: None,
                    });
                }
            }
        }
    }
    let mut seen = HashSet::new();
    hits.retain(|h| seen.insert((h.kind, h.cells())));
    hits.sort();
    Ok(hits)
}

/// Outcome of running both failure detectors on every state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoremReport {
    pub states: usize,
    pub failing_states: usize,
    /// Failing states with no pattern hit. Expected empty.
    pub uncovered: Vec<usize>,
    /// States with a pattern hit but a flag link.
    pub hits_without_failure: Vec<usize>,
    /// Empty simplices found in dimensions 4-5; `None` when the cube cap
    /// was too low to look.
    pub higher_dim_defects: Option<usize>,
    /// Empty 2-simplices not made of one dancer and one mover, or empty
    /// 3-simplices not made of two dancers.
    pub shape_violations: usize,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.uncovered.is_empty()
            && self.shape_violations == 0
            && self.higher_dim_defects.unwrap_or(0) == 0
    }

    /// Whether every pattern hit came with a link failure.
    pub fn converse_holds(&self) -> bool {
        self.hits_without_failure.is_empty()
    }

    pub fn merge(&mut self, other: &TheoremReport) {
        self.states += other.states;
        self.failing_states += other.failing_states;
        self.uncovered.extend(&other.uncovered);
        self.hits_without_failure.extend(&other.hits_without_failure);
        self.higher_dim_defects = match (self.higher_dim_defects, other.higher_dim_defects) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        self.shape_violations += other.shape_violations;
    }
}

fn agents_of(gens: &[Generator], s: &State) -> Vec<(usize, usize)> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let a = g.agent_at(s).expect("admissible move has an agent");
        match counts.iter_mut().find(|(c, _)| *c == a) {
            Some((_, n)) => *n += 1,
            None => counts.push((a, 1)),
        }
    }
    counts.sort_unstable_by_key(|&(_, n)| n);
    counts
}

/// Cross-checks the link flag test against the pattern scan at `states`.
/// Dimensions 4-5 are audited when the complex has cubes up to 6.
pub fn verify_states(cx: &StateComplex, states: &[usize]) -> Result<TheoremReport> {
    let sg = cx.graph();
    if sg.states().iter().any(|s| !s.is_agent_only()) {
        return Err(Error::ObjectsPresent);
    }
    let audit_higher = cx.max_dim() >= 6;
    let per_state = states
        .par_iter()
        .map(|&v| -> Result<TheoremReport> {
            let lk = build_link(cx, v)?;
            let rep = check_link(&lk);
            let hits = pattern_scan(sg.grid(), sg.state(v))?;
            let mut out = TheoremReport {
                states: 1,
                higher_dim_defects: Some(0),
                ..Default::default()
            };
            if !rep.npc {
                out.failing_states = 1;
                if hits.is_empty() {
                    out.uncovered.push(v);
                }
            } else if !hits.is_empty() {
                out.hits_without_failure.push(v);
            }
            let s = sg.state(v);
            for t in &rep.empty_2simplices {
                if agents_of(t, s).iter().map(|&(_, n)| n).collect::<Vec<_>>() != [1, 2] {
                    out.shape_violations += 1;
                }
            }
            for t in &rep.empty_3simplices {
                if agents_of(t, s).iter().map(|&(_, n)| n).collect::<Vec<_>>() != [2, 2] {
                    out.shape_violations += 1;
                }
            }
            out.higher_dim_defects = if audit_higher {
                Some(check_link_higher(&lk, 5)?.len())
            } else {
                None
            };
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = TheoremReport {
        higher_dim_defects: Some(0),
        ..Default::default()
    };
    for r in &per_state {
        total.merge(r);
    }
    total.uncovered.sort_unstable();
    total.hits_without_failure.sort_unstable();
    Ok(total)
}

/// [`verify_states`] over every state of the complex.
pub fn verify_theorem(cx: &StateComplex) -> Result<TheoremReport> {
    let all: Vec<usize> = (0..cx.graph().len()).collect();
    verify_states(cx, &all)
}
