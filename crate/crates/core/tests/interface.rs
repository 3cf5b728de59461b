use std::fs;
use std::process::{Command, Output};

use gridcx::export::{ActionRecord, ExportBundle};
use gridcx::{build_complex, check_all, explore, parse_grid, to_dot};

fn bundle(text: &str) -> ExportBundle {
    let (g, s) = parse_grid(text).unwrap();
    let cx = build_complex(explore(&g, &s).unwrap(), 4).unwrap();
    ExportBundle::new(&cx, &s, &check_all(&cx).unwrap(), &[])
}

fn gridcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridcx"))
        .args(args)
        .env_remove("GRIDCX_BUDGET")
        .output()
        .unwrap()
}

#[test]
fn reimport_reproduces_reports() {
    for text in ["A..\n...\n..A\n", "AO.\n.A.\n", "A.A.\n....\n"] {
        let b = bundle(text);
        let (_, _, cx) = ExportBundle::from_json(&b.to_json().unwrap()).unwrap().to_complex().unwrap();
        let (g, s) = parse_grid(text).unwrap();
        let fresh = build_complex(explore(&g, &s).unwrap(), 4).unwrap();
        assert_eq!(check_all(&cx).unwrap(), check_all(&fresh).unwrap());
        assert_eq!(cx.cubes(), fresh.cubes());
    }
}

#[test]
fn bundles_are_closed_and_tagged() {
    let b = bundle("A.A\n...\n");
    assert!(b.is_closed());
    assert_eq!(b.format_version, 1);
    for c in &b.cubes {
        assert_eq!(c.dim, c.l + 2 * c.m);
        assert_eq!(c.vertices.len(), 1 << c.dim);
    }
    assert!(b.squares.iter().any(|s| s.kind == "dance"));
    let json = b.to_json().unwrap();
    assert!(json.ends_with("}\n") && !json.contains('\r'));
}

#[test]
fn dot_output() {
    let single = to_dot(&bundle("AA\nAA\n"), true);
    assert_eq!(single.matches(';').count(), 1);
    let corridor = bundle("AO...\n");
    assert_eq!(corridor.vertices.len(), 10);
    assert!(corridor.edges.iter().any(|e| matches!(e.generator, ActionRecord::Pushpull { .. })));
    let dot = to_dot(&corridor, true);
    assert!(dot.starts_with("graph ") && dot.contains(" -- "));
    assert!(dot.contains("[color=maroon]") && dot.contains("[color=orange]"));
    assert_eq!(dot, to_dot(&bundle("AO...\n"), true));
}

#[test]
fn cli_build() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.txt");
    let out = dir.path().join("b.json");
    fs::write(&grid, "AA\n..\n").unwrap();
    let o = gridcx(&["build", grid.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let b = ExportBundle::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((b.vertices.len(), b.edges.len(), b.squares.len()), (6, 8, 2));

    fs::write(&grid, "AA.\n...\n...\n").unwrap();
    let o = gridcx(&["build", grid.to_str().unwrap()]);
    assert!(o.status.success());
    let b = ExportBundle::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(b.reports.iter().map(|r| r.tabulated_failures).sum::<usize>(), 32);

    let again = gridcx(&["build", grid.to_str().unwrap()]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn cli_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.txt");
    let o = gridcx(&["build", missing.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
    let io_code = o.status.code();

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "AX\n").unwrap();
    let parse = gridcx(&["build", bad.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 1 col 2"));

    let grid = dir.path().join("g.txt");
    fs::write(&grid, "A..\n...\n..A\n").unwrap();
    let budget = Command::new(env!("CARGO_BIN_EXE_gridcx"))
        .args(["build", grid.to_str().unwrap()])
        .env("GRIDCX_BUDGET", "5")
        .output()
        .unwrap();
    let usage = gridcx(&["table", "--room", "3x3", "--agents", "5..3"]);
    let codes = [io_code, parse.status.code(), budget.status.code(), usage.status.code()];
    for (i, c) in codes.iter().enumerate() {
        assert!(c.is_some_and(|c| c != 0));
        assert!(!codes[..i].contains(c), "exit codes must differ: {codes:?}");
    }
}

#[test]
fn cli_table() {
    let o = gridcx(&["table", "--room", "2x2", "--agents", "2"]);
    assert!(o.status.success());
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "agents,states,pct_npc,dances,commuting_moves,fail_total,fail_mean,fail_max\n2,6,100,0,2,0,0,0\n"
    );
}

#[test]
fn cli_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let json = dir.path().join("c.json");
    fs::write(&a, "A..\n...\n..A\n").unwrap();
    fs::write(&b, "..A\n...\nA..\n").unwrap();

    let scan = gridcx(&["pattern-scan", a.to_str().unwrap()]);
    assert_eq!(String::from_utf8(scan.stdout).unwrap().lines().count(), 1);

    let links = gridcx(&["check-links", a.to_str().unwrap()]);
    let text = String::from_utf8(links.stdout).unwrap();
    assert!(text.ends_with("tabulated-failures=32\n"), "{text}");

    let path = gridcx(&["path", a.to_str().unwrap(), b.to_str().unwrap()]);
    let lines: Vec<String> = String::from_utf8(path.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.first().unwrap(), "A.......A");
    assert!(lines.last().unwrap().ends_with("..A...A.."));

    fs::write(&a, "AO...\n").unwrap();
    assert!(gridcx(&["build", a.to_str().unwrap(), "--out", json.to_str().unwrap()]).status.success());
    let dot = gridcx(&["export-dot", json.to_str().unwrap(), "--color-by-generator"]);
    let dot = String::from_utf8(dot.stdout).unwrap();
    assert!(dot.contains("color=orange") && dot.contains("color=maroon"));
}
