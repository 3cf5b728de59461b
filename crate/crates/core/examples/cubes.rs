//! Two agents dancing in disjoint 2x2 blocks span a 4-cube.

use std::collections::BTreeMap;

use gridcx::{build_complex, explore, parse_grid};

fn main() -> gridcx::Result<()> {
    let (grid, start) = parse_grid("A.A.\n....\n")?;
    let cx = build_complex(explore(&grid, &start)?, 4)?;

    let mut by_shape: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for c in cx.cubes() {
        *by_shape.entry((c.dim(), c.l(), c.m())).or_default() += 1;
    }
    println!("{} states, {} dance squares, {} commuting squares", cx.graph().len(), cx.dance_squares(), cx.commuting_squares());
    println!("dim  l  m  cubes");
    for ((dim, l, m), n) in by_shape {
        println!("{dim:>3} {l:>2} {m:>2} {n:>6}");
    }

    let top = cx.cubes_of_dim(4).next().expect("a 4-cube");
    let witnesses: Vec<String> = top.witnesses.iter().map(|w| w.describe(&grid)).collect();
    println!("\n4-cube at {} spanned by {}", cx.graph().key(top.base), witnesses.join(" and "));
    println!("invariants clean: {}", cx.check_invariants().is_clean());
    Ok(())
}
