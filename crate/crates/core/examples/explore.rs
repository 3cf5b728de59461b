//! Parse a gridworld with a wall and an object and walk its state graph.

use gridcx::{explore, parse_grid};

fn main() -> gridcx::Result<()> {
    let text = "A.#\n.O.\n...\n";
    let (grid, start) = parse_grid(text)?;
    println!("{}x{} gridworld, {} cells", grid.width(), grid.height(), grid.len());

    let sg = explore(&grid, &start)?;
    println!("{} states, {} edges", sg.len(), sg.edges().len());

    for v in 0..sg.len().min(5) {
        println!("\nstate {} ({}), degree {}", v, sg.key(v), sg.degree(v));
        print!("{}", grid.render(sg.state(v)));
        for g in sg.generators_at(v) {
            println!("  {}", g.describe(&grid));
        }
    }
    Ok(())
}
