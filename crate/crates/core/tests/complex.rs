mod common;

use common::{complex, room_complex};
use gridcx::analysis::inversion_isomorphic;
use gridcx::complex::four_cycles;
use gridcx::{build_complex, explore, original_complex, parse_grid, Gridworld, SquareKind, StateComplex};

/// Sorted vertex ids of the keys, which must all be states.
fn ids(cx: &StateComplex, keys: &[String]) -> Vec<usize> {
    let mut v: Vec<usize> = keys.iter().map(|k| cx.graph().find_key(k).unwrap()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn key_with(agents: &[usize], n: usize) -> String {
    (0..n).map(|i| if agents.contains(&i) { 'A' } else { '.' }).collect()
}

const LEFT: [usize; 4] = [0, 1, 4, 5];
const RIGHT: [usize; 4] = [2, 3, 6, 7];
const RING_LEFT: [usize; 4] = [0, 1, 5, 4];

#[test]
fn two_by_two_two_agents() {
    let cx = complex("AA\n..\n");
    assert_eq!(four_cycles(cx.graph()).len(), 6);
    assert_eq!(cx.squares().len(), 2);
    assert!(cx.squares().iter().all(|s| s.kind == SquareKind::CommutingMoves));
    let original = original_complex(explore(&Gridworld::room(2, 2), &cx.graph().state(0).clone()).unwrap(), 4).unwrap();
    assert_eq!(original.cubes(), cx.cubes());
}

#[test]
fn two_by_two_one_agent() {
    let (g, s) = parse_grid("A.\n..\n").unwrap();
    let original = original_complex(explore(&g, &s).unwrap(), 4).unwrap();
    assert!(original.squares().is_empty());
    let modified = build_complex(explore(&g, &s).unwrap(), 4).unwrap();
    assert_eq!(modified.squares().len(), 1);
    assert_eq!(modified.squares()[0].kind, SquareKind::Dance);
}

#[test]
fn corridor_has_no_squares() {
    let cx = complex("A....\n");
    assert!(cx.cubes().iter().all(|c| c.dim() < 2));
    assert!(cx.squares().is_empty());
}

#[test]
fn dance_times_move_is_a_three_cube() {
    let cx = complex("A...\n...A\n");
    // oracle: dancer anywhere on the left block, mover on either right-edge cell
    let keys: Vec<String> = LEFT
        .iter()
        .flat_map(|&d| [3, 7].map(|m| key_with(&[d, m], 8)))
        .collect();
    let verts = ids(&cx, &keys);
    assert_eq!(verts.len(), 8);
    let cube = cx.find_cube(&verts).expect("3-cube present");
    assert_eq!((cube.dim(), cube.l(), cube.m()), (3, 1, 1));
    // two dance-square faces and four commuting-square faces
    for m in [3, 7] {
        let face: Vec<String> = LEFT.iter().map(|&d| key_with(&[d, m], 8)).collect();
        assert_eq!(cx.find_cube(&ids(&cx, &face)).unwrap().square_kind(), Some(SquareKind::Dance));
    }
    for i in 0..4 {
        let (a, b) = (RING_LEFT[i], RING_LEFT[(i + 1) % 4]);
        let face: Vec<String> = [a, b]
            .iter()
            .flat_map(|&d| [3, 7].map(|m| key_with(&[d, m], 8)))
            .collect();
        let sq = cx.find_cube(&ids(&cx, &face)).expect("commuting face");
        assert_eq!(sq.square_kind(), Some(SquareKind::CommutingMoves));
    }
    assert!(cx.check_invariants().is_clean());
}

#[test]
fn two_dances_are_a_four_cube() {
    let cx = complex("A.A.\n....\n");
    let keys: Vec<String> = LEFT
        .iter()
        .flat_map(|&a| RIGHT.map(|b| key_with(&[a, b], 8)))
        .collect();
    let verts = ids(&cx, &keys);
    assert_eq!(verts.len(), 16);
    let cube = cx.find_cube(&verts).expect("4-cube present");
    assert_eq!((cube.dim(), cube.l(), cube.m()), (4, 0, 2));
    assert_eq!(cube.faces(cx.graph()).len(), 8);
    assert!(cx.check_invariants().is_clean());
    // capped at 3 the 4-cube is absent but its 3-faces remain
    let capped = build_complex(cx.graph().clone(), 3).unwrap();
    assert!(capped.find_cube(&verts).is_none());
    assert!(capped.cubes_of_dim(3).count() > 0);
}

#[test]
fn invariants_hold_on_small_rooms() {
    for (w, h) in [(2, 2), (2, 3), (3, 3)] {
        let n = w * h;
        for k in 0..=n {
            let cx = room_complex(w, h, k, 6);
            let inv = cx.check_invariants();
            assert!(inv.is_clean(), "{w}x{h} k={k}: {inv:?}");
        }
    }
    for text in ["AO.\n...\n..A\n", "A.O\n.A.\n...\n", "O..\n.A.\nA.A\n"] {
        let inv = complex(text).check_invariants();
        assert!(inv.is_clean(), "{text}: {inv:?}");
    }
}

#[test]
fn square_counts_on_three_by_three() {
    let dances = [0, 4, 20, 40, 40, 20, 4, 0, 0, 0];
    let commuting = [0, 0, 44, 220, 440, 440, 220, 44, 0, 0];
    for k in 0..=9 {
        let cx = room_complex(3, 3, k, 4);
        assert_eq!(cx.dance_squares(), dances[k], "k={k}");
        assert_eq!(cx.commuting_squares(), commuting[k], "k={k}");
    }
}

#[test]
fn label_inversion() {
    let three = room_complex(3, 3, 3, 4);
    let six = room_complex(3, 3, 6, 4);
    assert!(inversion_isomorphic(&three, &six));
    assert_eq!(three.commuting_squares(), six.commuting_squares());
    let (g, s) = parse_grid("AAA\n...\n...\n").unwrap();
    let o3 = original_complex(explore(&g, &s).unwrap(), 4).unwrap();
    let o6 = original_complex(explore(&g, &s.inverted()).unwrap(), 4).unwrap();
    assert!(inversion_isomorphic(&o3, &o6));
    assert_eq!(o3.cubes().len(), o6.cubes().len());
    let two = room_complex(3, 3, 2, 4);
    let seven = room_complex(3, 3, 7, 4);
    assert!(inversion_isomorphic(&two, &seven));
    assert_eq!((two.dance_squares(), seven.dance_squares()), (20, 0));
}
