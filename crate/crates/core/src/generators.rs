//! Moves, pushes/pulls and dances.
//!
//! A [`Generator`] relabels its support between two local states. Its trace
//! equals its support for both kinds, so two generators commute exactly when
//! their supports are disjoint. A [`Dance`] is a single agent circling a 2x2
//! block; it has four local states and no trace.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Gridworld, Label, State};

use Label::{Agent, Floor, Object};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Move,
    PushPull,
}

/// A Move (two adjacent cells) or a Push/Pull (three collinear cells).
///
/// Ordering is by kind, then by support in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: GeneratorKind,
    cells: [usize; 3],
}

const MOVE_LOCALS: [[Label; 2]; 2] = [[Agent, Floor], [Floor, Agent]];
const PUSH_PULL_LOCALS: [[Label; 3]; 2] = [[Agent, Object, Floor], [Floor, Agent, Object]];

impl Generator {
    /// A Move between two adjacent cells; the order of `a` and `b` is irrelevant.
    pub fn moving(a: usize, b: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Generator {
            kind: GeneratorKind::Move,
            cells: [a, b, NONE],
        }
    }

    /// A Push/Pull along the ordered triple `[x, y, z]`: its local states are
    /// agent-object-floor and floor-agent-object read along the triple.
    pub fn push_pull(triple: [usize; 3]) -> Self {
        Generator {
            kind: GeneratorKind::PushPull,
            cells: triple,
        }
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn support(&self) -> &[usize] {
        match self.kind {
            GeneratorKind::Move => &self.cells[..2],
            GeneratorKind::PushPull => &self.cells,
        }
    }

    /// Trace equals support for both generator kinds.
    pub fn trace(&self) -> &[usize] {
        self.support()
    }

    pub fn locals(&self) -> [&'static [Label]; 2] {
        match self.kind {
            GeneratorKind::Move => [&MOVE_LOCALS[0], &MOVE_LOCALS[1]],
            GeneratorKind::PushPull => [&PUSH_PULL_LOCALS[0], &PUSH_PULL_LOCALS[1]],
        }
    }

    /// Index of the local state `s` agrees with on the support, if any.
    pub fn matching_local(&self, s: &State) -> Option<usize> {
        let sup = self.support();
        self.locals()
            .iter()
            .position(|local| sup.iter().zip(local.iter()).all(|(&c, &l)| s.get(c) == l))
    }

    pub fn is_admissible(&self, s: &State) -> bool {
        self.matching_local(s).is_some()
    }

    /// Relabels the support to the other local state.
    pub fn apply(&self, s: &State) -> Result<State> {
        let mut out = s.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub fn apply_in_place(&self, s: &mut State) -> Result<()> {
        let Some(side) = self.matching_local(s) else {
            return Err(Error::NotAdmissible {
                cell: self.mismatch(s),
            });
        };
        let target = self.locals()[1 - side];
        for (&c, &l) in self.support().iter().zip(target.iter()) {
            s.set(c, l);
        }
        Ok(())
    }

    fn mismatch(&self, s: &State) -> usize {
        let [u0, u1] = self.locals();
        let sup = self.support();
        sup.iter()
            .enumerate()
            .find(|&(i, &c)| s.get(c) != u0[i] && s.get(c) != u1[i])
            .or_else(|| sup.iter().enumerate().find(|&(i, &c)| s.get(c) != u0[i]))
            .map(|(_, &c)| c)
            .unwrap_or(sup[0])
    }

    /// Agent cell of an admissible Move or Push/Pull at `s`.
    pub fn agent_at(&self, s: &State) -> Option<usize> {
        self.support().iter().copied().find(|&c| s.get(c) == Agent)
    }

    pub fn is_disjoint(&self, other: &[usize]) -> bool {
        self.support().iter().all(|c| !other.contains(c))
    }

    pub fn describe(&self, g: &Gridworld) -> String {
        let name = match self.kind {
            GeneratorKind::Move => "move",
            GeneratorKind::PushPull => "pushpull",
        };
        let cells: Vec<String> = self.support().iter().map(|&c| g.cell(c).to_string()).collect();
        format!("{name} {}", cells.join("-"))
    }
}

/// One agent circling a 2x2 block through its four single-agent local states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dance {
    /// `[top-left, top-right, bottom-left, bottom-right]`
    block: [usize; 4],
}

impl Dance {
    pub fn new(block: [usize; 4]) -> Self {
        Dance { block }
    }

    pub fn support(&self) -> &[usize] {
        &self.block
    }

    pub fn block(&self) -> [usize; 4] {
        self.block
    }

    /// The four Moves along the edges of the block.
    pub fn constituent_moves(&self) -> [Generator; 4] {
        let [tl, tr, bl, br] = self.block;
        [
            Generator::moving(tl, tr),
            Generator::moving(tl, bl),
            Generator::moving(tr, br),
            Generator::moving(bl, br),
        ]
    }

    /// The four local states, agent at tl, tr, bl, br respectively.
    pub fn locals(&self) -> [[Label; 4]; 4] {
        let mut out = [[Floor; 4]; 4];
        for (i, local) in out.iter_mut().enumerate() {
            local[i] = Agent;
        }
        out
    }

    /// The dancing agent's cell if `s` agrees with one of the local states.
    pub fn dancer(&self, s: &State) -> Option<usize> {
        let mut dancer = None;
        for &c in &self.block {
            match s.get(c) {
                Agent if dancer.is_none() => dancer = Some(c),
                Floor => {}
                _ => return None,
            }
        }
        dancer
    }

    pub fn is_admissible(&self, s: &State) -> bool {
        self.dancer(s).is_some()
    }

    /// The corner diagonally opposite `corner`.
    pub fn opposite(&self, corner: usize) -> usize {
        let [tl, tr, bl, br] = self.block;
        match corner {
            c if c == tl => br,
            c if c == br => tl,
            c if c == tr => bl,
            c if c == bl => tr,
            _ => panic!("cell {corner} is not in the block"),
        }
    }

    /// The two constituent Moves admissible at `s`.
    pub fn moves_at(&self, s: &State) -> Option<[Generator; 2]> {
        let d = self.dancer(s)?;
        let far = self.opposite(d);
        let mut it = self.block.iter().copied().filter(|&c| c != d && c != far);
        let (a, b) = (it.next()?, it.next()?);
        Some([Generator::moving(d, a), Generator::moving(d, b)])
    }

    /// Four Moves taking the dancer once around the block, back to its
    /// starting cell.
    pub fn circuit(&self, s: &State) -> Option<[Generator; 4]> {
        let d = self.dancer(s)?;
        let [tl, tr, bl, br] = self.block;
        let ring = [tl, tr, br, bl];
        let start = ring.iter().position(|&c| c == d)?;
        let at = |i: usize| ring[(start + i) % 4];
        Some([
            Generator::moving(at(0), at(1)),
            Generator::moving(at(1), at(2)),
            Generator::moving(at(2), at(3)),
            Generator::moving(at(3), at(4)),
        ])
    }

    /// `s` with the block relabelled to local state `i`.
    pub fn with_local(&self, s: &State, i: usize) -> State {
        let mut out = s.clone();
        for (j, &c) in self.block.iter().enumerate() {
            out.set(c, if i == j { Agent } else { Floor });
        }
        out
    }

    pub fn describe(&self, g: &Gridworld) -> String {
        format!("dance {}", g.cell(self.block[0]))
    }
}

/// A member of a commuting set: a generator or a dance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Gen(Generator),
    Dance(Dance),
}

impl Action {
    pub fn support(&self) -> &[usize] {
        match self {
            Action::Gen(g) => g.support(),
            Action::Dance(d) => d.support(),
        }
    }

    /// Cube dimensions contributed: 1 for a generator, 2 for a dance.
    pub fn dim(&self) -> usize {
        match self {
            Action::Gen(_) => 1,
            Action::Dance(_) => 2,
        }
    }

    pub fn is_admissible(&self, s: &State) -> bool {
        match self {
            Action::Gen(g) => g.is_admissible(s),
            Action::Dance(d) => d.is_admissible(s),
        }
    }

    /// Edges at `s` spanned by this action: the generator itself, or the
    /// two admissible constituent Moves of a dance.
    pub fn moves_at(&self, s: &State) -> Vec<Generator> {
        match self {
            Action::Gen(g) => vec![*g],
            Action::Dance(d) => d.moves_at(s).map(Vec::from).unwrap_or_default(),
        }
    }

    pub fn is_disjoint(&self, other: &Action) -> bool {
        self.support().iter().all(|c| !other.support().contains(c))
    }

    pub fn describe(&self, g: &Gridworld) -> String {
        match self {
            Action::Gen(x) => x.describe(g),
            Action::Dance(d) => d.describe(g),
        }
    }
}

impl From<Generator> for Action {
    fn from(g: Generator) -> Self {
        Action::Gen(g)
    }
}

impl From<Dance> for Action {
    fn from(d: Dance) -> Self {
        Action::Dance(d)
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Move => "move",
            GeneratorKind::PushPull => "pushpull",
        })
    }
}

/// One Move per (agent, neighbouring floor cell) pair, sorted.
pub fn enumerate_moves(g: &Gridworld, s: &State) -> Vec<Generator> {
    let mut out: Vec<Generator> = s
        .cells_with(Agent)
        .flat_map(|a| {
            g.neighbour_ids(a)
                .iter()
                .filter(|&&n| s.get(n) == Floor)
                .map(move |&n| Generator::moving(a, n))
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn enumerate_pushpulls(g: &Gridworld, s: &State) -> Vec<Generator> {
    if s.count(Object) == 0 {
        return Vec::new();
    }
    g.triple_ids()
        .into_iter()
        .map(Generator::push_pull)
        .filter(|p| p.is_admissible(s))
        .collect()
}

/// Moves then Push/Pulls, in the deterministic generator order.
pub fn enumerate_generators(g: &Gridworld, s: &State) -> Vec<Generator> {
    let mut out = enumerate_moves(g, s);
    out.extend(enumerate_pushpulls(g, s));
    out
}

pub fn enumerate_dances(g: &Gridworld, s: &State) -> Vec<Dance> {
    g.blocks()
        .into_iter()
        .map(Dance::new)
        .filter(|d| d.is_admissible(s))
        .collect()
}

/// Whether `items` form a commuting set at `s`: every item admissible and
/// supports pairwise disjoint.
pub fn commutes(items: &[Action], s: &State) -> Result<bool> {
    for item in items {
        if !item.is_admissible(s) {
            return Err(Error::NotAdmissible {
                cell: item.support()[0],
            });
        }
    }
    Ok(items
        .iter()
        .enumerate()
        .all(|(i, a)| items[i + 1..].iter().all(|b| a.is_disjoint(b))))
}
