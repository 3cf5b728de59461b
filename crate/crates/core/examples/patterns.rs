//! Knight and 2-step bishop placements, checked against the links.

use gridcx::{build_complex, build_link, check_link, explore, parse_grid, pattern_scan, verify_theorem, Gridworld};

fn main() -> gridcx::Result<()> {
    for text in ["A.#\n..A\n", "A..\n...\n..A\n", "A.A\n...\n...\n"] {
        let (grid, s) = parse_grid(text)?;
        print!("{text}");
        let hits = pattern_scan(&grid, &s)?;
        for h in &hits {
            print!("{:?}, conflict at {}\n{}", h.kind, grid.cell(h.conflict), grid.render_cells(&h.cells(), '*'));
        }
        let cx = build_complex(explore(&grid, &s)?, 4)?;
        let report = check_link(&build_link(&cx, 0)?);
        println!("hits: {}, link flag: {}\n", hits.len(), report.npc);
    }

    let grid = Gridworld::room(4, 3);
    for k in 1..=4 {
        let cx = build_complex(explore(&grid, &grid.packed_state(k, 0)?)?, 6)?;
        let rep = verify_theorem(&cx)?;
        println!(
            "4x3, {k} agents: {} states, {} failing, uncovered {}, higher-dim defects {:?}",
            rep.states,
            rep.failing_states,
            rep.uncovered.len(),
            rep.higher_dim_defects
        );
    }
    Ok(())
}
