//! Summary table for an empty room: `cargo run --example table -- 3 3`.

use std::io;

use gridcx::analysis::{symmetry_report, write_csv};
use gridcx::exploration::budget_from_env;
use gridcx::{table, Gridworld};

fn main() -> gridcx::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (w, h) = match args[..] {
        [w, h, ..] => (w, h),
        _ => (3, 3),
    };
    let grid = Gridworld::room(w, h);
    let rows = table(&grid, 0..=grid.len(), budget_from_env());
    write_csv(io::stdout().lock(), &rows)?;

    let sym = symmetry_report(&grid, budget_from_env())?;
    println!("\nstates symmetric under k <-> n-k: {}", sym.states_symmetric);
    println!("commuting squares symmetric: {}", sym.commuting_symmetric);
    println!("dances symmetric under k <-> n-2-k: {}", sym.dances_symmetric);
    println!("inversion isomorphisms: {:?}", sym.inversion_isomorphic);
    Ok(())
}
