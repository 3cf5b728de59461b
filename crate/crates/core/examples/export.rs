//! JSON bundle and DOT graph for an agent pushing an object down a corridor.

use std::fs;

use gridcx::{build_complex, check_all, explore, parse_grid, to_dot, ExportBundle};

fn main() -> gridcx::Result<()> {
    let (grid, start) = parse_grid("AO...\n")?;
    let cx = build_complex(explore(&grid, &start)?, 4)?;
    let bundle = ExportBundle::new(&cx, &start, &check_all(&cx)?, &[]);

    let dir = std::env::temp_dir().join("gridcx-example");
    fs::create_dir_all(&dir)?;
    let json = dir.join("corridor.json");
    fs::write(&json, bundle.to_json()?)?;
    println!("wrote {}", json.display());

    let back = ExportBundle::from_json(&fs::read_to_string(&json)?)?;
    let (_, _, again) = back.to_complex()?;
    println!("round trip reports equal: {}", check_all(&again)? == check_all(&cx)?);

    print!("{}", to_dot(&back, true));
    Ok(())
}
