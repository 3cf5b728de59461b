//! Shortest routes and collision-safe batching of simultaneous requests.

use gridcx::pathsafe::execute_batch;
use gridcx::{build_complex, explore, parse_grid, plan_parallel, shortest_path, Action, Dance, Generator};

fn main() -> gridcx::Result<()> {
    let (grid, start) = parse_grid("...\nA..\n..A\n")?;
    let cx = build_complex(explore(&grid, &start)?, 4)?;
    let sg = cx.graph();

    let goal = sg.find_key("A.A......")?;
    let path = shortest_path(sg, 0, goal)?;
    println!("route of length {}:", path.len());
    for (g, &v) in path.generators.iter().zip(&path.states[1..]) {
        println!("  {:<16} -> {}", g.describe(&grid), sg.key(v));
    }

    // the left agent dances while the right one steps into the dance's far corner
    let dance = Action::Dance(Dance::new([3, 4, 6, 7]));
    let step = Action::Gen(Generator::moving(8, 7));
    let plan = plan_parallel(&cx, 0, &[step, dance])?;
    println!("\n{} batches", plan.batches.len());
    let mut s = plan.start.clone();
    for (i, batch) in plan.batches.iter().enumerate() {
        let names: Vec<String> = batch.iter().map(|a| a.describe(&grid)).collect();
        s = execute_batch(batch, &s)?;
        println!("batch {i}: {}", names.join(", "));
        print!("{}", grid.render(&s));
    }

    let free = [Action::Gen(Generator::moving(3, 0)), Action::Gen(Generator::moving(8, 5))];
    println!("\nindependent moves: {} batch", plan_parallel(&cx, 0, &free)?.batches.len());
    Ok(())
}
