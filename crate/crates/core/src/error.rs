use thiserror::Error;

use crate::grid::Cell;

/// Errors raised while reading a gridworld description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line} has {found} columns, expected {expected}")]
    NotRectangular {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("illegal character {ch:?} at line {line} col {col}")]
    IllegalChar { line: usize, col: usize, ch: char },
    #[error("gridworld has no non-wall cells")]
    NoCells,
    #[error("empty input")]
    Empty,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cell ({}, {}) is a wall or out of bounds", .0.row, .0.col)]
    NotACell(Cell),

    /// `cell` is the id of the first support cell matching neither local state.
    #[error("not admissible: cell #{cell} matches neither local state")]
    NotAdmissible { cell: usize },

    #[error("state does not fit the gridworld: expected {expected} labels, found {found}")]
    StateShape { expected: usize, found: usize },

    #[error("vertex budget of {limit} exceeded after {explored} items")]
    BudgetExceeded { limit: usize, explored: usize },

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error("cube cap {have} is too small, need at least {need}")]
    CubeCap { have: usize, need: usize },

    #[error("state contains object labels; the pattern classification only covers agent-only gridworlds")]
    ObjectsPresent,

    #[error("{k} agents and {j} objects do not fit in {n} cells")]
    TooManyLabels { n: usize, k: usize, j: usize },

    #[error("no path between {from:?} and {to:?}")]
    Unreachable { from: String, to: String },

    #[error("malformed bundle: {0}")]
    Bundle(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
