//! Modified state complexes of gridworlds.
//!
//! A gridworld is a floorplan of cells; a state labels every cell as an
//! agent, an object or floor. Moves and push/pulls relabel small supports,
//! commuting sets of them span cubes, and agents circling a 2x2 block form a
//! dance square. The crate explores the reachable states, builds the cube
//! complex, checks the flag condition on vertex links and plans
//! collision-safe simultaneous actions.
//!
//! ```
//! use gridcx::{build_complex, check_all, explore, parse_grid};
//!
//! let (grid, start) = parse_grid("AA\n..\n").unwrap();
//! let cx = build_complex(explore(&grid, &start).unwrap(), 4).unwrap();
//! assert_eq!(cx.graph().len(), 6);
//! assert!(check_all(&cx).unwrap().iter().all(|r| r.npc));
//! ```

pub mod analysis;
pub mod complex;
pub mod error;
pub mod exploration;
pub mod export;
pub mod generators;
pub mod grid;
pub mod links;
pub mod pathsafe;

pub use analysis::{state_count, table, table_row, StatsRow};
pub use complex::{build_complex, original_complex, ComplexOptions, Cube, Square, SquareKind, StateComplex};
pub use error::{Error, ParseError, Result};
pub use exploration::{explore, explore_with_budget, StateGraph};
pub use export::{to_dot, ExportBundle};
pub use generators::{Action, Dance, Generator, GeneratorKind};
pub use grid::{parse_grid, Cell, Gridworld, Label, State};
pub use links::{build_link, check_all, check_link, pattern_scan, verify_theorem, DefectReport, LinkComplex, PatternHit, PatternKind, Verdict};
pub use pathsafe::{plan_parallel, shortest_path, ParallelPlan, Path};
