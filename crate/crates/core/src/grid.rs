//! Floorplans and states.
//!
//! A [`Gridworld`] is the floorplan graph: its vertices are the non-wall
//! cells and two cells are adjacent when they share a side. A [`State`]
//! labels every non-wall cell with an agent, an object or floor. Cells are
//! numbered in row-major order and that numbering is used everywhere
//! downstream, including in the canonical state key.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// A grid position. Ordering is row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Agent,
    Object,
    Floor,
}

impl Label {
    pub fn to_char(self) -> char {
        match self {
            Label::Agent => 'A',
            Label::Object => 'O',
            Label::Floor => '.',
        }
    }

    pub fn from_char(ch: char) -> Option<Label> {
        match ch {
            'A' => Some(Label::Agent),
            'O' => Some(Label::Object),
            '.' => Some(Label::Floor),
            _ => None,
        }
    }
}

/// A total labelling of the non-wall cells, indexed by cell id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(Box<[Label]>);

impl State {
    pub fn new(labels: Vec<Label>) -> Self {
        State(labels.into_boxed_slice())
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn get(&self, cell: usize) -> Label {
        self.0[cell]
    }

    pub fn set(&mut self, cell: usize, label: Label) {
        self.0[cell] = label;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, label: Label) -> usize {
        self.0.iter().filter(|&&l| l == label).count()
    }

    pub fn is_agent_only(&self) -> bool {
        !self.0.contains(&Label::Object)
    }

    /// Cell ids carrying `label`, ascending.
    pub fn cells_with(&self, label: Label) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == label)
            .map(|(i, _)| i)
    }

    /// Canonical key: labels of the non-wall cells in row-major order.
    pub fn key(&self) -> String {
        self.0.iter().map(|l| l.to_char()).collect()
    }

    /// Parses a canonical key. Walls are not part of the key.
    pub fn from_key(key: &str) -> Option<State> {
        key.chars()
            .map(Label::from_char)
            .collect::<Option<Vec<_>>>()
            .map(State::new)
    }

    /// Swaps agent and floor labels; objects are left alone.
    pub fn inverted(&self) -> State {
        State(
            self.0
                .iter()
                .map(|l| match l {
                    Label::Agent => Label::Floor,
                    Label::Floor => Label::Agent,
                    Label::Object => Label::Object,
                })
                .collect(),
        )
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// The floorplan graph of a rectangular array with walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gridworld {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
    /// `width * height` entries; `None` marks a wall.
    ids: Vec<Option<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl Gridworld {
    /// Builds a floorplan from a wall mask given in row-major order.
    pub fn from_mask(width: usize, height: usize, walls: &[bool]) -> Result<Self, ParseError> {
        assert_eq!(walls.len(), width * height, "wall mask has the wrong size");
        let mut cells = Vec::new();
        let mut ids = vec![None; width * height];
        for row in 0..height {
            for col in 0..width {
                if !walls[row * width + col] {
                    ids[row * width + col] = Some(cells.len());
                    cells.push(Cell::new(row, col));
                }
            }
        }
        if cells.is_empty() {
            return Err(ParseError::NoCells);
        }
        let mut g = Gridworld {
            width,
            height,
            cells,
            ids,
            adjacency: Vec::new(),
        };
        g.adjacency = (0..g.cells.len())
            .map(|id| {
                let c = g.cells[id];
                let mut out = Vec::with_capacity(4);
                // row-major: up, left, right, down
                if c.row > 0 {
                    out.extend(g.id(Cell::new(c.row - 1, c.col)));
                }
                if c.col > 0 {
                    out.extend(g.id(Cell::new(c.row, c.col - 1)));
                }
                out.extend(g.id(Cell::new(c.row, c.col + 1)));
                out.extend(g.id(Cell::new(c.row + 1, c.col)));
                out
            })
            .collect();
        Ok(g)
    }

    /// An open `width` x `height` room with no interior walls.
    pub fn room(width: usize, height: usize) -> Self {
        Self::from_mask(width, height, &vec![false; width * height])
            .expect("a room with positive size has cells")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Number of non-wall cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, id: usize) -> Cell {
        self.cells[id]
    }

    /// Cell id, or `None` for walls and out-of-bounds positions.
    pub fn id(&self, c: Cell) -> Option<usize> {
        if c.row < self.height && c.col < self.width {
            self.ids[c.row * self.width + c.col]
        } else {
            None
        }
    }

    pub fn is_wall(&self, c: Cell) -> bool {
        c.row < self.height && c.col < self.width && self.ids[c.row * self.width + c.col].is_none()
    }

    /// Ids of the cells sharing a side with `id`, ascending.
    pub fn neighbour_ids(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    pub fn neighbours(&self, c: Cell) -> Result<Vec<Cell>> {
        let id = self.id(c).ok_or(Error::NotACell(c))?;
        Ok(self.adjacency[id].iter().map(|&n| self.cells[n]).collect())
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// All ordered straight runs of three contiguous cells, as ids.
    pub fn triple_ids(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (id, c) in self.cells.iter().enumerate() {
            let runs = [
                (Cell::new(c.row, c.col + 1), Cell::new(c.row, c.col + 2)),
                (Cell::new(c.row + 1, c.col), Cell::new(c.row + 2, c.col)),
            ];
            for (b, c2) in runs {
                if let (Some(b), Some(c2)) = (self.id(b), self.id(c2)) {
                    out.push([id, b, c2]);
                    out.push([c2, b, id]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn collinear_triples(&self) -> Vec<(Cell, Cell, Cell)> {
        self.triple_ids()
            .into_iter()
            .map(|[a, b, c]| (self.cells[a], self.cells[b], self.cells[c]))
            .collect()
    }

    /// Every 2x2 subgrid made of non-wall cells, as ids
    /// `[top-left, top-right, bottom-left, bottom-right]`.
    pub fn blocks(&self) -> Vec<[usize; 4]> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(tl, c)| {
                Some([
                    tl,
                    self.id(Cell::new(c.row, c.col + 1))?,
                    self.id(Cell::new(c.row + 1, c.col))?,
                    self.id(Cell::new(c.row + 1, c.col + 1))?,
                ])
            })
            .collect()
    }

    pub fn check_state(&self, s: &State) -> Result<()> {
        if s.len() != self.len() {
            return Err(Error::StateShape {
                expected: self.len(),
                found: s.len(),
            });
        }
        Ok(())
    }

    pub fn state_from_key(&self, key: &str) -> Result<State> {
        let s = State::from_key(key).ok_or_else(|| Error::UnknownState(key.to_owned()))?;
        self.check_state(&s)?;
        Ok(s)
    }

    /// A state with agents on the first `k` cells, objects on the next `j`
    /// cells, floor elsewhere.
    pub fn packed_state(&self, k: usize, j: usize) -> Result<State> {
        if k + j > self.len() {
            return Err(Error::TooManyLabels {
                n: self.len(),
                k,
                j,
            });
        }
        let mut labels = vec![Label::Floor; self.len()];
        labels[..k].fill(Label::Agent);
        labels[k..k + j].fill(Label::Object);
        Ok(State::new(labels))
    }

    /// Grid text for `s`, one line per row, each line LF-terminated.
    pub fn render(&self, s: &State) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in 0..self.height {
            for col in 0..self.width {
                out.push(match self.ids[row * self.width + col] {
                    Some(id) => s.get(id).to_char(),
                    None => '#',
                });
            }
            out.push('\n');
        }
        out
    }

    /// Grid text marking `marked` cells with `ch` and every other non-wall
    /// cell as floor. Handy for drawing supports.
    pub fn render_cells(&self, marked: &[usize], ch: char) -> String {
        let mut out = String::new();
        for row in 0..self.height {
            for col in 0..self.width {
                out.push(match self.ids[row * self.width + col] {
                    Some(id) if marked.contains(&id) => ch,
                    Some(_) => '.',
                    None => '#',
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Parses grid text over `.`, `#`, `A`, `O` into a floorplan and a state.
///
/// Lines are LF-separated and must all have the same length. A single
/// trailing newline is accepted. The boundary is implicitly walled.
pub fn parse_grid(text: &str) -> Result<(Gridworld, State), ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    let lines: Vec<&str> = body.split('\n').collect();
    let width = lines[0].chars().count();
    let height = lines.len();
    let mut walls = Vec::with_capacity(width * height);
    let mut labels = Vec::new();
    for (li, line) in lines.iter().enumerate() {
        let mut n = 0;
        for (ci, ch) in line.chars().enumerate() {
            n += 1;
            if ch == '#' {
                walls.push(true);
            } else if let Some(l) = Label::from_char(ch) {
                walls.push(false);
                labels.push(l);
            } else {
                return Err(ParseError::IllegalChar {
                    line: li + 1,
                    col: ci + 1,
                    ch,
                });
            }
        }
        if n != width {
            return Err(ParseError::NotRectangular {
                line: li + 1,
                expected: width,
                found: n,
            });
        }
    }
    let g = Gridworld::from_mask(width, height, &walls)?;
    Ok((g, State::new(labels)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_row() {
        let (g, s) = parse_grid("A.").unwrap();
        assert_eq!((g.width(), g.height(), g.len()), (2, 1, 2));
        assert_eq!(s.labels(), &[Label::Agent, Label::Floor]);
    }

    #[test]
    fn parse_three_by_three() {
        let (g, s) = parse_grid("...\n.A.\n...").unwrap();
        assert_eq!((g.width(), g.height(), g.len()), (3, 3, 9));
        assert_eq!(s.cells_with(Label::Agent).collect::<Vec<_>>(), vec![4]);
        assert_eq!(g.cell(4), Cell::new(1, 1));
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!(
            parse_grid("AX"),
            Err(ParseError::IllegalChar {
                line: 1,
                col: 2,
                ch: 'X'
            })
        );
        assert_eq!(
            parse_grid("..\n...\n"),
            Err(ParseError::NotRectangular {
                line: 2,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(parse_grid("##\n##\n"), Err(ParseError::NoCells));
        assert_eq!(parse_grid(""), Err(ParseError::Empty));
    }

    #[test]
    fn walls_are_not_cells() {
        let (g, s) = parse_grid(".#.\n.A.\n").unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.is_wall(Cell::new(0, 1)));
        assert!(g.id(Cell::new(0, 1)).is_none());
        assert_eq!(s.key(), "...A.");
        assert!(matches!(
            g.neighbours(Cell::new(0, 1)),
            Err(Error::NotACell(_))
        ));
        assert!(g.neighbours(Cell::new(5, 5)).is_err());
        // the top-right cell only touches the one below it
        assert_eq!(g.neighbours(Cell::new(0, 2)).unwrap(), vec![Cell::new(1, 2)]);
    }

    #[test]
    fn neighbour_degrees() {
        let g = Gridworld::room(3, 3);
        assert_eq!(g.neighbours(Cell::new(1, 1)).unwrap().len(), 4);
        assert_eq!(g.neighbours(Cell::new(0, 0)).unwrap().len(), 2);
        let corridor = Gridworld::room(5, 1);
        assert_eq!(corridor.neighbours(Cell::new(0, 0)).unwrap().len(), 1);
    }

    #[test]
    fn triple_counts() {
        assert_eq!(Gridworld::room(5, 1).collinear_triples().len(), 6);
        assert!(Gridworld::room(2, 2).collinear_triples().is_empty());
        assert_eq!(Gridworld::room(3, 3).collinear_triples().len(), 12);
    }

    #[test]
    fn triples_are_straight_and_contiguous() {
        let (g, _) = parse_grid("....\n.#..\n....\n..#.\n").unwrap();
        for (a, b, c) in g.collinear_triples() {
            let same_row = a.row == b.row && b.row == c.row;
            let same_col = a.col == b.col && b.col == c.col;
            assert!(same_row || same_col);
            let (ia, ib, ic) = (g.id(a).unwrap(), g.id(b).unwrap(), g.id(c).unwrap());
            assert!(g.are_adjacent(ia, ib) && g.are_adjacent(ib, ic));
        }
    }

    #[test]
    fn blocks_skip_walls() {
        assert_eq!(Gridworld::room(3, 3).blocks().len(), 4);
        let (g, _) = parse_grid("...\n.#.\n...\n").unwrap();
        assert!(g.blocks().is_empty());
    }

    #[test]
    fn render_round_trip() {
        let text = ".A#\nO..\n";
        let (g, s) = parse_grid(text).unwrap();
        assert_eq!(g.render(&s), text);
        let (g2, s2) = parse_grid(".A#\nO..").unwrap();
        assert_eq!(g2.render(&s2), text);
    }

    #[test]
    fn key_round_trip() {
        let s = State::from_key("A.O.").unwrap();
        assert_eq!(s.key(), "A.O.");
        assert_eq!(s.inverted().key(), ".AOA");
        assert!(State::from_key("A#").is_none());
    }
}
