mod common;

use std::collections::BTreeSet;

use common::{binomial, Board};
use gridcx::export::ExportBundle;
use gridcx::{build_complex, check_all, explore, parse_grid, state_count, Gridworld};

#[test]
fn agent_only_rooms_are_complete() {
    for w in 1..=4 {
        for h in 1..=4 {
            let g = Gridworld::room(w, h);
            let n = g.len();
            for k in 0..=n {
                let sg = explore(&g, &g.packed_state(k, 0).unwrap()).unwrap();
                let expected = binomial(n as u64, k as u64);
                assert_eq!(sg.len() as u64, expected, "{w}x{h} k={k}");
                assert_eq!(state_count(n, k, 0).unwrap(), expected.into());
            }
        }
    }
}

#[test]
fn corridor_with_an_object() {
    let (g, s) = parse_grid("AO...\n").unwrap();
    let sg = explore(&g, &s).unwrap();
    // oracle: every placement with the agent left of the object, all mutually reachable
    let mut placements = BTreeSet::new();
    for a in 0..5 {
        for o in a + 1..5 {
            let mut b = *b".....";
            b[a] = b'A';
            b[o] = b'O';
            placements.insert(String::from_utf8(b.to_vec()).unwrap());
        }
    }
    assert_eq!(placements.len(), 10);
    for p in &placements {
        assert_eq!(Board::parse(p).reachable(), placements);
    }
    let keys: BTreeSet<String> = (0..sg.len()).map(|v| sg.key(v)).collect();
    assert_eq!(keys, placements);
}

#[test]
fn matches_string_oracle_on_walled_boards() {
    for text in ["A.#\n.O.\n..A\n", "AO.\n#..\n.OA\n", "A.O.\n.#..\n", "..A\nO#.\n..."] {
        let (g, s) = parse_grid(text).unwrap();
        let sg = explore(&g, &s).unwrap();
        let keys: BTreeSet<String> = (0..sg.len()).map(|v| sg.key(v)).collect();
        assert_eq!(keys, Board::parse(text).reachable(), "{text}");
        let mut edges = 0;
        for key in &keys {
            let mut b = Board::parse(text);
            let mut it = key.bytes();
            for c in b.cells.iter_mut().filter(|c| **c != b'#') {
                *c = it.next().unwrap();
            }
            let succ: BTreeSet<String> = b.successors().iter().map(Board::key).collect();
            let v = sg.find_key(key).unwrap();
            let nbrs: BTreeSet<String> = sg.neighbours(v).iter().map(|&(w, _)| sg.key(w)).collect();
            assert_eq!(succ, nbrs, "{key}");
            edges += succ.len();
        }
        assert_eq!(edges, 2 * sg.edges().len());
    }
}

#[test]
fn exploration_is_deterministic() {
    for text in ["A..\n.O.\n..A\n", "A.A\n...\nA.A\n"] {
        let (g, s) = parse_grid(text).unwrap();
        let run = || {
            let cx = build_complex(explore(&g, &s).unwrap(), 4).unwrap();
            let reports = check_all(&cx).unwrap();
            ExportBundle::new(&cx, &s, &reports, &[]).to_json().unwrap()
        };
        let a = run();
        assert_eq!(a, run());
        let (x, y) = (explore(&g, &s).unwrap(), explore(&g, &s).unwrap());
        assert_eq!(x.states(), y.states());
        assert_eq!(x.edges(), y.edges());
    }
}

#[test]
fn explored_from_any_state_gives_the_same_set() {
    let g = Gridworld::room(3, 3);
    let a = explore(&g, &g.packed_state(3, 0).unwrap()).unwrap();
    let b = explore(&g, a.state(a.len() - 1)).unwrap();
    let ka: BTreeSet<String> = (0..a.len()).map(|v| a.key(v)).collect();
    let kb: BTreeSet<String> = (0..b.len()).map(|v| b.key(v)).collect();
    assert_eq!(ka, kb);
}
