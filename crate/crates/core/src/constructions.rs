//! New codes from old: connected sum, tangle splicing, and the winding
//! number one satellite used for concordance.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::{KnotCode, Passage, Sign, Token};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("gap {0} out of range")]
    BadGap(usize),
    #[error("tangle strands are {declared} but the arcs were requested {requested}")]
    OrientationMismatch { declared: &'static str, requested: &'static str },
    #[error("tangle syntax error on line {line}: {reason}")]
    TangleSyntax { line: usize, reason: String },
}

fn gap_ok(code: &KnotCode, g: usize) -> Result<(), ConstructionError> {
    if g < code.len().max(1) {
        Ok(())
    } else {
        Err(ConstructionError::BadGap(g))
    }
}

/// Cuts `a` before token `pa` and `b` before token `pb` and joins the two
/// words; `b` is relabeled past `a`'s ids.
pub fn connected_sum(a: &KnotCode, pa: usize, b: &KnotCode, pb: usize) -> Result<KnotCode, ConstructionError> {
    gap_ok(a, pa)?;
    gap_ok(b, pb)?;
    let shift = a.as_link().max_id();
    let mut tokens: Vec<Token> = a.rotated(pa).tokens().to_vec();
    tokens.extend(b.rotated(pb).map_ids(|i| i + shift).tokens().iter().copied());
    Ok(KnotCode::new(tokens).expect("disjoint ids keep the pairing"))
}

/// Which strand of a tangle.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Strand {
    A,
    B,
}

/// One crossing of a 2-string tangle: `over` and `under` give the strand
/// and slot of each passage.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TangleCrossing {
    pub over: (Strand, usize),
    pub under: (Strand, usize),
    pub sign: Sign,
}

/// A 2-string tangle: each strand is a sequence of passages through the
/// tangle's crossings, read in the strand's direction.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TangleWord {
    /// strands run in the same direction through the ball
    pub parallel: bool,
    pub crossings: Vec<TangleCrossing>,
}

impl TangleWord {
    pub fn trivial() -> Self {
        Self { parallel: true, crossings: Vec::new() }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Token words for strands A and B, with ids `base + 1 ..`.
    pub fn strand_words(&self, base: u32) -> (Vec<Token>, Vec<Token>) {
        let mut slots: BTreeMap<(Strand, usize), Token> = BTreeMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            let id = base + 1 + k as u32;
            slots.insert(c.over, Token::new(id, Passage::Over, c.sign));
            slots.insert(c.under, Token::new(id, Passage::Under, c.sign));
        }
        let word = |s: Strand| slots.iter().filter(|((st, _), _)| *st == s).map(|(_, t)| *t).collect();
        (word(Strand::A), word(Strand::B))
    }
}

fn parse_passage(s: &str) -> Result<(Strand, Option<usize>), String> {
    let (name, pos) = match s.split_once('@') {
        Some((n, p)) => (n, Some(p.parse::<usize>().map_err(|e| format!("bad position `{p}`: {e}"))?)),
        None => (s, None),
    };
    let strand = match name {
        "A" => Strand::A,
        "B" => Strand::B,
        _ => return Err(format!("unknown strand `{name}`")),
    };
    Ok((strand, pos))
}

impl FromStr for TangleWord {
    type Err = ConstructionError;

    /// Format: optional `ORIENT parallel|anti`, then one line per crossing,
    /// `X <strand>[@slot] <strand>[@slot] <+|-> <over>` where `<over>` is
    /// `A`/`B` (the strand passing over) or `1`/`2` (the listed passage
    /// passing over, needed for self-crossings). Without `@slot`, passages
    /// take the next free slot of their strand in listing order. `#` starts
    /// a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut tw = TangleWord::trivial();
        let mut next: BTreeMap<Strand, usize> = BTreeMap::new();
        let mut explicit: BTreeMap<Strand, bool> = BTreeMap::new();
        let mut used: BTreeMap<(Strand, usize), usize> = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let err = |reason: String| ConstructionError::TangleSyntax { line, reason };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            match f.as_slice() {
                ["ORIENT", o] => {
                    tw.parallel = match *o {
                        "parallel" => true,
                        "anti" => false,
                        _ => return Err(err(format!("unknown orientation `{o}`"))),
                    }
                }
                ["X", p1, p2, sign, over] => {
                    let (s1, at1) = parse_passage(p1).map_err(err)?;
                    let (s2, at2) = parse_passage(p2).map_err(err)?;
                    let sign = match *sign {
                        "+" => Sign::Pos,
                        "-" | "\u{2212}" => Sign::Neg,
                        _ => return Err(err(format!("bad sign `{sign}`"))),
                    };
                    let mut place = |s: Strand, at: Option<usize>| -> Result<(Strand, usize), String> {
                        let is_explicit = at.is_some();
                        if *explicit.entry(s).or_insert(is_explicit) != is_explicit {
                            return Err("mixing explicit and implicit slots on one strand".into());
                        }
                        let slot = match at {
                            Some(p) => p,
                            None => {
                                let n = next.entry(s).or_insert(0);
                                *n += 1;
                                *n - 1
                            }
                        };
                        if used.insert((s, slot), line).is_some() {
                            return Err(format!("slot {slot} used twice"));
                        }
                        Ok((s, slot))
                    };
                    let q1 = place(s1, at1).map_err(err)?;
                    let q2 = place(s2, at2).map_err(err)?;
                    let first_over = match *over {
                        "1" => true,
                        "2" => false,
                        "A" | "B" if s1 == s2 => return Err(err("self-crossing needs over = 1 or 2".into())),
                        "A" => s1 == Strand::A,
                        "B" => s1 == Strand::B,
                        _ => return Err(err(format!("bad over field `{over}`"))),
                    };
                    let (o, u) = if first_over { (q1, q2) } else { (q2, q1) };
                    tw.crossings.push(TangleCrossing { over: o, under: u, sign });
                }
                _ => return Err(err(format!("cannot parse `{body}`"))),
            }
        }
        for s in [Strand::A, Strand::B] {
            let slots: Vec<usize> = used.keys().filter(|(st, _)| *st == s).map(|(_, p)| *p).collect();
            if slots.iter().enumerate().any(|(i, &p)| i != p) {
                return Err(ConstructionError::TangleSyntax {
                    line: 0,
                    reason: format!("slots of strand {s:?} are not 0..{}", slots.len()),
                });
            }
        }
        Ok(tw)
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ORIENT {}", if self.parallel { "parallel" } else { "anti" })?;
        for c in &self.crossings {
            let s = if c.sign == Sign::Pos { '+' } else { '-' };
            writeln!(f, "X {:?}@{} {:?}@{} {s} 1", c.over.0, c.over.1, c.under.0, c.under.1)?;
        }
        Ok(())
    }
}

/// Replaces the arcs at gaps `arc1` and `arc2` (brought into a ball, with
/// the relative direction given by `parallel`) by the strands of `t`:
/// strand A goes into `arc1`, strand B into `arc2`.
pub fn tangle_splice(
    code: &KnotCode,
    arc1: usize,
    arc2: usize,
    t: &TangleWord,
    parallel: bool,
) -> Result<KnotCode, ConstructionError> {
    gap_ok(code, arc1)?;
    gap_ok(code, arc2)?;
    if arc1 == arc2 && !code.is_empty() {
        return Err(ConstructionError::BadGap(arc2));
    }
    if parallel != t.parallel {
        let name = |p: bool| if p { "parallel" } else { "anti" };
        return Err(ConstructionError::OrientationMismatch { declared: name(t.parallel), requested: name(parallel) });
    }
    let (wa, wb) = t.strand_words(code.as_link().max_id());
    let mut tokens = code.tokens().to_vec();
    let mut ins = [(arc1, wa), (arc2, wb)];
    ins.sort_by_key(|x| std::cmp::Reverse(x.0));
    for (g, w) in ins {
        tokens.splice(g..g, w);
    }
    Ok(KnotCode::new(tokens).expect("tangle words pair up"))
}

/// The Kinoshita–Terasaka tangle shipped with the crate: the KT knot tied
/// into strand A of a trivial 2-string tangle (11 crossings, parallel).
pub fn kt_tangle() -> TangleWord {
    include_str!("../data/kt.tangle").parse().expect("shipped tangle parses")
}

/// The Kinoshita–Terasaka knot, read off strand A of [`kt_tangle`].
pub fn kt_knot() -> KnotCode {
    KnotCode::new(kt_tangle().strand_words(0).0).expect("strand A closes up")
}

/// Strands of the three-fold cable: `A` and `C` follow the companion,
/// `B` runs against it between them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Copy3 {
    A,
    B,
    C,
}

impl Copy3 {
    const ALL: [Copy3; 3] = [Copy3::A, Copy3::B, Copy3::C];

    fn orient(self) -> i32 {
        if self == Copy3::B {
            -1
        } else {
            1
        }
    }
}

fn sgn(s: i32) -> Sign {
    Sign::from_i32(s)
}

/// The part of a winding number one, wrapping number three pattern that
/// closes up the three-fold cable: `l` joins the end of copy `A` to the end
/// of the reversed copy `B`, `r` joins the start of `B` to the start of `C`,
/// and `d` joins the end of `C` back to the start of `A`. Tokens use ids of
/// their own, local to the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternBox {
    pub l: Vec<Token>,
    pub r: Vec<Token>,
    pub d: Vec<Token>,
}

impl PatternBox {
    /// `d` clasps the cap `l`.
    pub fn clasp() -> Self {
        Self {
            l: vec![Token::over(2, Sign::Pos), Token::under(1, Sign::Pos)],
            r: vec![],
            d: vec![Token::over(1, Sign::Pos), Token::under(2, Sign::Pos)],
        }
    }
}

/// Satellite with a winding number one, wrapping number three pattern:
/// three parallel copies of the companion (the middle one reversed),
/// corrected to the zero framing by `−writhe` full twists, closed up by
/// [`PatternBox::clasp`].
///
/// The box sits before token 0 of the companion.
pub fn livingston_satellite(code: &KnotCode) -> KnotCode {
    satellite_with(code, -code.writhe(), &PatternBox::clasp())
}

/// Satellite with `twists` signed full twists in the cable and the given box.
pub fn satellite_with(code: &KnotCode, twists: i32, pattern: &PatternBox) -> KnotCode {
    let mut next_id = 0u32;
    let mut fresh = || {
        next_id += 1;
        next_id
    };
    // strand words in the companion's direction
    let mut words: BTreeMap<Copy3, Vec<Token>> = Copy3::ALL.iter().map(|&c| (c, Vec::new())).collect();

    // framing correction: full twists at the start of the cable
    let gen = if twists >= 0 { 1 } else { -1 };
    let mut order = Copy3::ALL;
    for _ in 0..twists.abs() {
        for _ in 0..3 {
            for i in [0, 1] {
                let (left, right) = (order[i], order[i + 1]);
                let (over, under) = if gen > 0 { (left, right) } else { (right, left) };
                let s = sgn(gen * left.orient() * right.orient());
                let id = fresh();
                words.get_mut(&over).unwrap().push(Token::new(id, Passage::Over, s));
                words.get_mut(&under).unwrap().push(Token::new(id, Passage::Under, s));
                order.swap(i, i + 1);
            }
        }
    }
    debug_assert_eq!(order, Copy3::ALL);

    // cable: each companion crossing becomes nine
    let mut ids: BTreeMap<(u32, Copy3, Copy3), u32> = BTreeMap::new();
    for id in code.as_link().crossing_ids() {
        for i in Copy3::ALL {
            for j in Copy3::ALL {
                ids.insert((id, i, j), fresh());
            }
        }
    }
    for t in code.tokens() {
        let pos = t.sign == Sign::Pos;
        for k in Copy3::ALL {
            let mut others = Copy3::ALL.to_vec();
            let tok = |other: Copy3| {
                let (o, u) = if t.is_over() { (k, other) } else { (other, k) };
                let s = sgn(t.sign.to_i32() * o.orient() * u.orient());
                Token::new(ids[&(t.id, o, u)], t.passage, s)
            };
            // met left to right along an over copy at a positive crossing,
            // right to left along an under copy
            if t.is_over() != pos {
                others.reverse();
            }
            let w = words.get_mut(&k).unwrap();
            w.extend(others.into_iter().map(tok));
        }
    }

    let shift = next_id;
    let local = |w: &[Token]| w.iter().map(|t| Token::new(t.id + shift, t.passage, t.sign)).collect::<Vec<_>>();
    let mut closed = words[&Copy3::A].clone();
    closed.extend(local(&pattern.l));
    closed.extend(words[&Copy3::B].iter().rev());
    closed.extend(local(&pattern.r));
    closed.extend(words[&Copy3::C].iter());
    closed.extend(local(&pattern.d));
    KnotCode::new(closed).expect("satellite is a knot").relabeled()
}

/// Gap positions in [`livingston_satellite`]'s output at which a single
/// saddle splits off the copy `A` (the companion) from the rest.
pub fn satellite_saddle_gaps(code: &KnotCode) -> (usize, usize) {
    // each full twist crosses strand A twice with each other strand
    (0, 4 * code.writhe().unsigned_abs() as usize + 3 * code.len())
}
