//! Independent brute-force oracles working on plain strings.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use gridcx::generators::{Action, Dance, Generator};
use gridcx::pathsafe::execute_batch;
use gridcx::{build_complex, build_link, check_link, explore, parse_grid, Gridworld, ParallelPlan, State, StateComplex};

pub fn complex(text: &str) -> StateComplex {
    let (g, s) = parse_grid(text).unwrap();
    build_complex(explore(&g, &s).unwrap(), 4).unwrap()
}

pub fn room_complex(w: usize, h: usize, k: usize, max_dim: usize) -> StateComplex {
    let g = Gridworld::room(w, h);
    let s = g.packed_state(k, 0).unwrap();
    build_complex(explore(&g, &s).unwrap(), max_dim).unwrap()
}

/// A rectangular board given as rows of `A`, `O`, `.` and `#`.
#[derive(Clone)]
pub struct Board {
    pub w: usize,
    pub h: usize,
    pub cells: Vec<u8>,
}

impl Board {
    pub fn parse(text: &str) -> Board {
        let rows: Vec<&str> = text.lines().collect();
        Board {
            w: rows[0].len(),
            h: rows.len(),
            cells: rows.concat().into_bytes(),
        }
    }

    /// Labels of the non-wall cells in row-major order.
    pub fn key(&self) -> String {
        self.cells
            .iter()
            .filter(|&&c| c != b'#')
            .map(|&c| c as char)
            .collect()
    }

    fn at(&self, r: isize, c: isize) -> Option<u8> {
        if r < 0 || c < 0 || r >= self.h as isize || c >= self.w as isize {
            return None;
        }
        Some(self.cells[r as usize * self.w + c as usize])
    }

    fn put(&mut self, r: isize, c: isize, ch: u8) {
        self.cells[r as usize * self.w + c as usize] = ch;
    }

    /// Every board one move, push or pull away.
    pub fn successors(&self) -> Vec<Board> {
        let mut out = Vec::new();
        for r in 0..self.h as isize {
            for c in 0..self.w as isize {
                if self.at(r, c) != Some(b'A') {
                    continue;
                }
                for (dr, dc) in [(0, 1), (1, 0), (0, -1), (-1, 0)] {
                    let ahead = self.at(r + dr, c + dc);
                    if ahead == Some(b'.') {
                        let mut b = self.clone();
                        b.put(r, c, b'.');
                        b.put(r + dr, c + dc, b'A');
                        out.push(b.clone());
                        // pull: object behind the agent follows it
                        if self.at(r - dr, c - dc) == Some(b'O') {
                            b.put(r - dr, c - dc, b'.');
                            b.put(r, c, b'O');
                            out.push(b);
                        }
                    }
                    if ahead == Some(b'O') && self.at(r + 2 * dr, c + 2 * dc) == Some(b'.') {
                        let mut b = self.clone();
                        b.put(r, c, b'.');
                        b.put(r + dr, c + dc, b'A');
                        b.put(r + 2 * dr, c + 2 * dc, b'O');
                        out.push(b);
                    }
                }
            }
        }
        out
    }

    /// Keys of every board reachable from this one.
    pub fn reachable(&self) -> BTreeSet<String> {
        let mut seen = BTreeSet::from([self.key()]);
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(b) = queue.pop_front() {
            for n in b.successors() {
                if seen.insert(n.key()) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn state(key: &str) -> State {
    State::from_key(key).unwrap()
}

/// The conflicting requests behind each empty simplex at `v`.
pub fn conflicts(cx: &StateComplex, v: usize) -> Vec<Vec<Action>> {
    let sg = cx.graph();
    let g = sg.grid();
    let s = sg.state(v);
    let report = check_link(&build_link(cx, v).unwrap());
    let as_actions = |gens: &[Generator]| -> Vec<Action> {
        let mut by_agent: Vec<(usize, Vec<Generator>)> = Vec::new();
        for x in gens {
            let a = x.agent_at(s).unwrap();
            match by_agent.iter_mut().find(|(b, _)| *b == a) {
                Some((_, v)) => v.push(*x),
                None => by_agent.push((a, vec![*x])),
            }
        }
        by_agent
            .into_iter()
            .map(|(_, ms)| match ms[..] {
                [m] => Action::Gen(m),
                [m1, m2] => {
                    let block = g
                        .blocks()
                        .into_iter()
                        .find(|b| m1.support().iter().chain(m2.support()).all(|c| b.contains(c)))
                        .unwrap();
                    Action::Dance(Dance::new(block))
                }
                _ => unreachable!(),
            })
            .collect()
    };
    report
        .empty_2simplices
        .iter()
        .map(|t| as_actions(t))
        .chain(report.empty_3simplices.iter().map(|t| as_actions(t)))
        .collect()
}

pub fn orders_agree(plan: &ParallelPlan) -> bool {
    let mut s: State = plan.start.clone();
    for batch in &plan.batches {
        let forward = execute_batch(batch, &s).unwrap();
        let mut rev = batch.clone();
        rev.reverse();
        if execute_batch(&rev, &s).unwrap() != forward {
            return false;
        }
        s = forward;
    }
    true
}
