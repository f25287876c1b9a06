#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use vknot::kernel::{KnotCode, LinkCode, Passage, Sign, Token};
use vknot::moves::{apply, legal_moves, MoveSite};

pub const UNKNOT: &str = "";
pub const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
pub const VTREFOIL: &str = "O1+ O2+ U1+ U2+";

pub fn knot(s: &str) -> KnotCode {
    s.parse().unwrap()
}

pub fn link(s: &str) -> LinkCode {
    s.parse().unwrap()
}

/// Uniform random Gauss word with `n` chords and random signs.
pub fn random_knot<R: Rng>(rng: &mut R, n: usize) -> KnotCode {
    let mut tokens = Vec::with_capacity(2 * n);
    for id in 1..=n as u32 {
        let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        tokens.push(Token::new(id, Passage::Over, s));
        tokens.push(Token::new(id, Passage::Under, s));
    }
    tokens.shuffle(rng);
    KnotCode::new(tokens).unwrap()
}

/// Random legal move, biased toward removals and R3 so diagrams stay small.
pub fn random_move<R: Rng>(rng: &mut R, code: &LinkCode) -> MoveSite {
    let moves = legal_moves(code);
    let (small, ins): (Vec<MoveSite>, Vec<MoveSite>) = moves.into_iter().partition(|m| m.crossing_delta() <= 0);
    if !small.is_empty() && rng.gen_bool(0.6) {
        *small.choose(rng).unwrap()
    } else {
        *ins.choose(rng).unwrap()
    }
}

pub fn random_walk<R: Rng>(rng: &mut R, code: &LinkCode, steps: usize) -> (LinkCode, Vec<MoveSite>) {
    let mut cur = code.clone();
    let mut path = Vec::new();
    for _ in 0..steps {
        let m = random_move(rng, &cur);
        cur = apply(&cur, &m).unwrap();
        path.push(m);
    }
    (cur, path)
}

/// Every Gauss word with `n` chords up to relabeling, with all sign choices.
pub fn all_knots(n: usize) -> Vec<KnotCode> {
    let mut words: Vec<Vec<(u32, Passage)>> = Vec::new();
    fn rec(word: &mut Vec<(u32, Passage)>, open: &mut Vec<u32>, next: u32, n: u32, out: &mut Vec<Vec<(u32, Passage)>>) {
        if word.len() == 2 * n as usize {
            out.push(word.clone());
            return;
        }
        if next <= n {
            for p in [Passage::Over, Passage::Under] {
                word.push((next, p));
                open.push(next);
                rec(word, open, next + 1, n, out);
                open.pop();
                word.pop();
            }
        }
        for i in 0..open.len() {
            let id = open[i];
            let first = word.iter().find(|(x, _)| *x == id).unwrap().1;
            word.push((id, first.flip()));
            open.remove(i);
            rec(word, open, next, n, out);
            open.insert(i, id);
            word.pop();
        }
    }
    rec(&mut Vec::new(), &mut Vec::new(), 1, n as u32, &mut words);
    let mut out = Vec::new();
    for w in words {
        for mask in 0..(1u32 << n) {
            let tokens = w
                .iter()
                .map(|&(id, p)| Token::new(id, p, if mask >> (id - 1) & 1 == 1 { Sign::Neg } else { Sign::Pos }))
                .collect();
            out.push(KnotCode::new(tokens).unwrap());
        }
    }
    out
}

/// Random link: a random Gauss word cut into `parts` cyclic components
/// (some possibly crossing-free).
pub fn random_link<R: Rng>(rng: &mut R, n: usize, parts: usize) -> LinkCode {
    let tokens = random_knot(rng, n).tokens().to_vec();
    let mut cuts: Vec<usize> = (0..parts.saturating_sub(1)).map(|_| rng.gen_range(0..=tokens.len())).collect();
    cuts.sort();
    let mut comps = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([tokens.len()]) {
        comps.push(tokens[start..c].to_vec());
        start = c;
    }
    LinkCode::new(comps).unwrap()
}
