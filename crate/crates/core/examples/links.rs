//! Flag check of every vertex link in a 3x3 room with two agents.

use gridcx::{build_complex, check_all, explore, Gridworld};

fn main() -> gridcx::Result<()> {
    let grid = Gridworld::room(3, 3);
    let sg = explore(&grid, &grid.packed_state(2, 0)?)?;
    let cx = build_complex(sg, 4)?;
    let reports = check_all(&cx)?;

    for r in reports.iter().filter(|r| !r.npc) {
        let s = cx.graph().state(r.base);
        println!("{}", cx.graph().key(r.base));
        print!("{}", grid.render(s));
        for t in &r.empty_2simplices {
            let gens: Vec<String> = t.iter().map(|g| g.describe(&grid)).collect();
            println!("  empty triangle: {}", gens.join(", "));
        }
        for t in &r.empty_3simplices {
            let gens: Vec<String> = t.iter().map(|g| g.describe(&grid)).collect();
            println!("  empty tetrahedron: {}", gens.join(", "));
        }
        println!("  tabulated failures: {}", r.tabulated_failures);
    }

    let failing = reports.iter().filter(|r| r.tabulated_failures > 0).count();
    let total: usize = reports.iter().map(|r| r.tabulated_failures).sum();
    println!("\n{} states, {} failing, {} failures", reports.len(), failing, total);
    Ok(())
}
