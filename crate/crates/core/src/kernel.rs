//! Signed Gauss codes: tokens, knot and link codes, parsing, canonical forms
//! and the elementary symmetries.
//!
//! A code lists, for every component, the classical crossings met along the
//! component in orientation order. Virtual crossings are not recorded.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i32(s: i32) -> Self {
        if s >= 0 { Sign::Pos } else { Sign::Neg }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i32(self.to_i32() * rhs.to_i32())
    }
}

/// One passage through a classical crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Token {
    pub id: u32,
    pub passage: Passage,
    pub sign: Sign,
}

impl Token {
    pub fn new(id: u32, passage: Passage, sign: Sign) -> Self {
        Self { id, passage, sign }
    }

    pub fn over(id: u32, sign: Sign) -> Self {
        Self::new(id, Passage::Over, sign)
    }

    pub fn under(id: u32, sign: Sign) -> Self {
        Self::new(id, Passage::Under, sign)
    }

    pub fn is_over(&self) -> bool {
        self.passage == Passage::Over
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.passage.letter(), self.id, self.sign.symbol())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CodeError {
    #[error("syntax error at `{token}`: {reason}")]
    Syntax { token: String, reason: String },
    #[error("crossing {0} does not have exactly one over and one under passage")]
    UnpairedCrossing(u32),
    #[error("crossing {0} carries two different signs")]
    SignMismatch(u32),
    #[error("expected a knot (one component), found {0} components")]
    NotAKnot(usize),
}

/// Position of a token: (component, index within the component).
pub type Pos = (usize, usize);

/// A multi-component signed Gauss code. Components are cyclic sequences.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LinkCode {
    components: Vec<Vec<Token>>,
}

impl LinkCode {
    /// Builds a code, checking the pairing invariant.
    pub fn new(components: Vec<Vec<Token>>) -> Result<Self, CodeError> {
        validate(&components)?;
        Ok(Self { components })
    }

    pub(crate) fn from_components_unchecked(components: Vec<Vec<Token>>) -> Self {
        debug_assert!(validate(&components).is_ok(), "invalid code {:?}", components);
        Self { components }
    }

    /// The `n`-component crossing-free unlink.
    pub fn unlink(n: usize) -> Self {
        Self { components: vec![Vec::new(); n] }
    }

    pub fn components(&self) -> &[Vec<Token>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[Token] {
        &self.components[i]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn tokens(&self) -> impl Iterator<Item = (Pos, &Token)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| comp.iter().enumerate().map(move |(i, t)| ((c, i), t)))
    }

    /// Crossing ids in first-appearance order.
    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut seen = Vec::new();
        for (_, t) in self.tokens() {
            if !seen.contains(&t.id) {
                seen.push(t.id);
            }
        }
        seen
    }

    pub fn max_id(&self) -> u32 {
        self.tokens().map(|(_, t)| t.id).max().unwrap_or(0)
    }

    /// Positions of the over and under passage of every crossing.
    pub fn passages(&self) -> BTreeMap<u32, CrossingInfo> {
        let mut over: HashMap<u32, Pos> = HashMap::new();
        let mut under: HashMap<u32, Pos> = HashMap::new();
        let mut sign: HashMap<u32, Sign> = HashMap::new();
        for (p, t) in self.tokens() {
            match t.passage {
                Passage::Over => over.insert(t.id, p),
                Passage::Under => under.insert(t.id, p),
            };
            sign.insert(t.id, t.sign);
        }
        over.into_iter()
            .map(|(id, o)| (id, CrossingInfo { over: o, under: under[&id], sign: sign[&id] }))
            .collect()
    }

    pub fn sign_of(&self, id: u32) -> Option<Sign> {
        self.tokens().find(|(_, t)| t.id == id).map(|(_, t)| t.sign)
    }

    pub fn writhe(&self) -> i32 {
        self.passages().values().map(|c| c.sign.to_i32()).sum()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn to_knot(&self) -> Result<KnotCode, CodeError> {
        KnotCode::try_from(self.clone())
    }

    /// Flips every sign and swaps every over/under passage.
    pub fn mirror(&self) -> Self {
        let comps = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| Token::new(t.id, t.passage.flip(), t.sign.flip()))
                    .collect()
            })
            .collect();
        Self { components: comps }
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> Self {
        let comps = self
            .components
            .iter()
            .map(|c| c.iter().rev().copied().collect())
            .collect();
        Self { components: comps }
    }

    /// Relabels crossing ids to 1..n in first-appearance order.
    pub fn relabeled(&self) -> Self {
        let mut map = HashMap::new();
        let mut next = 1;
        let comps = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| {
                        let id = *map.entry(t.id).or_insert_with(|| {
                            next += 1;
                            next - 1
                        });
                        Token { id, ..*t }
                    })
                    .collect()
            })
            .collect();
        Self { components: comps }
    }

    /// Applies an arbitrary id relabeling (must be injective on the ids present).
    pub fn map_ids(&self, f: impl Fn(u32) -> u32) -> Self {
        let comps = self
            .components
            .iter()
            .map(|c| c.iter().map(|t| Token { id: f(t.id), ..*t }).collect())
            .collect();
        Self { components: comps }
    }

    /// Rotates component `c` so that token `k` comes first.
    pub fn rotated(&self, c: usize, k: usize) -> Self {
        let mut comps = self.components.clone();
        if !comps[c].is_empty() {
            let k = k % comps[c].len();
            comps[c].rotate_left(k);
        }
        Self { components: comps }
    }

    /// Lexicographically least representative over rotations of each
    /// component, component orders and id relabelings.
    pub fn canonicalize(&self) -> Self {
        let key = self.canonical_key();
        Self { components: decode_key(&key) }
    }

    /// Compact canonical key, equal for two codes iff their canonical forms agree.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let mut best: Option<Vec<Vec<u32>>> = None;
        let remaining: Vec<usize> = (0..self.components.len()).collect();
        canon_search(&self.components, &remaining, &HashMap::new(), 1, Vec::new(), &mut best);
        best.unwrap_or_default()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossingInfo {
    pub over: Pos,
    pub under: Pos,
    pub sign: Sign,
}

fn encode(t: &Token, label: u32) -> u32 {
    let p = match t.passage {
        Passage::Over => 0,
        Passage::Under => 1,
    };
    let s = match t.sign {
        Sign::Pos => 0,
        Sign::Neg => 1,
    };
    label * 4 + p * 2 + s
}

fn decode_key(key: &[Vec<u32>]) -> Vec<Vec<Token>> {
    key.iter()
        .map(|c| {
            c.iter()
                .map(|&k| {
                    let passage = if (k >> 1) & 1 == 0 { Passage::Over } else { Passage::Under };
                    let sign = if k & 1 == 0 { Sign::Pos } else { Sign::Neg };
                    Token::new(k >> 2, passage, sign)
                })
                .collect()
        })
        .collect()
}

/// Encodes one rotation of a component under the current labeling.
fn encode_rotation(
    comp: &[Token],
    rot: usize,
    labels: &HashMap<u32, u32>,
    next: u32,
) -> (Vec<u32>, HashMap<u32, u32>, u32) {
    let mut labels = labels.clone();
    let mut next = next;
    let n = comp.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t = &comp[(rot + k) % n];
        let l = *labels.entry(t.id).or_insert_with(|| {
            next += 1;
            next - 1
        });
        out.push(encode(t, l));
    }
    (out, labels, next)
}

fn canon_search(
    comps: &[Vec<Token>],
    remaining: &[usize],
    labels: &HashMap<u32, u32>,
    next: u32,
    prefix: Vec<Vec<u32>>,
    best: &mut Option<Vec<Vec<u32>>>,
) {
    if remaining.is_empty() {
        if best.as_ref().is_none_or(|b| prefix < *b) {
            *best = Some(prefix);
        }
        return;
    }
    // Every candidate (component, rotation) for the next slot; only the
    // lexicographically least encodings can start an optimal completion.
    let mut cands: Vec<(Vec<u32>, usize, HashMap<u32, u32>, u32)> = Vec::new();
    for &ci in remaining {
        let comp = &comps[ci];
        let rots = comp.len().max(1);
        for r in 0..rots {
            let (enc, l, nx) = encode_rotation(comp, r, labels, next);
            cands.push((enc, ci, l, nx));
        }
    }
    let min = cands.iter().map(|c| &c.0).min().cloned().unwrap();
    if let Some(b) = best.as_ref() {
        let mut probe = prefix.clone();
        probe.push(min.clone());
        if probe.as_slice() > &b[..probe.len().min(b.len())] {
            return;
        }
    }
    let mut seen = Vec::new();
    for (enc, ci, l, nx) in cands.into_iter().filter(|c| c.0 == min) {
        // identical states need only be explored once
        let state = (ci, l.clone());
        if seen.iter().any(|s: &(usize, HashMap<u32, u32>)| s.0 == state.0 && s.1 == state.1) {
            continue;
        }
        seen.push(state);
        let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != ci).collect();
        let mut p = prefix.clone();
        p.push(enc);
        canon_search(comps, &rest, &l, nx, p, best);
    }
}

fn validate(components: &[Vec<Token>]) -> Result<(), CodeError> {
    let mut seen: BTreeMap<u32, (u8, u8, Sign)> = BTreeMap::new();
    for t in components.iter().flatten() {
        if t.id == 0 {
            return Err(CodeError::Syntax {
                token: t.to_string(),
                reason: "crossing ids must be positive".into(),
            });
        }
        let e = seen.entry(t.id).or_insert((0, 0, t.sign));
        if e.2 != t.sign {
            return Err(CodeError::SignMismatch(t.id));
        }
        match t.passage {
            Passage::Over => e.0 += 1,
            Passage::Under => e.1 += 1,
        }
    }
    for (id, (o, u, _)) in seen {
        if o != 1 || u != 1 {
            return Err(CodeError::UnpairedCrossing(id));
        }
    }
    Ok(())
}

fn parse_token(s: &str) -> Result<Token, CodeError> {
    let syntax = |reason: &str| CodeError::Syntax { token: s.to_string(), reason: reason.into() };
    let mut chars = s.chars();
    let passage = match chars.next() {
        Some('O') | Some('o') => Passage::Over,
        Some('U') | Some('u') => Passage::Under,
        _ => return Err(syntax("expected `O` or `U`")),
    };
    let rest: String = chars.collect();
    let sign_char = rest.chars().last().ok_or_else(|| syntax("missing crossing id"))?;
    let sign = match sign_char {
        '+' => Sign::Pos,
        '-' | '\u{2212}' => Sign::Neg,
        _ => return Err(syntax("expected sign `+` or `-`")),
    };
    let digits = &rest[..rest.len() - sign_char.len_utf8()];
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(syntax("crossing id must be a positive integer"));
    }
    let id: u32 = digits.parse().map_err(|_| syntax("crossing id out of range"))?;
    if id == 0 {
        return Err(syntax("crossing ids must be positive"));
    }
    Ok(Token::new(id, passage, sign))
}

impl FromStr for LinkCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let comps = s
            .split('/')
            .map(|part| part.split_whitespace().map(parse_token).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        LinkCode::new(comps)
    }
}

impl fmt::Display for LinkCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                if self.components[i - 1].is_empty() {
                    f.write_str("/")?;
                } else {
                    f.write_str(" /")?;
                }
                if !comp.is_empty() {
                    f.write_str(" ")?;
                }
            }
            for (k, t) in comp.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}

/// A one-component code. The empty code is the unknot diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "LinkCode", into = "LinkCode")]
pub struct KnotCode(LinkCode);

impl KnotCode {
    pub fn unknot() -> Self {
        KnotCode(LinkCode::unlink(1))
    }

    pub fn new(tokens: Vec<Token>) -> Result<Self, CodeError> {
        Ok(KnotCode(LinkCode::new(vec![tokens])?))
    }

    pub fn tokens(&self) -> &[Token] {
        self.0.component(0)
    }

    pub fn len(&self) -> usize {
        self.tokens().len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens().is_empty()
    }

    pub fn as_link(&self) -> &LinkCode {
        &self.0
    }

    pub fn into_link(self) -> LinkCode {
        self.0
    }

    pub fn crossing_count(&self) -> usize {
        self.0.crossing_count()
    }

    pub fn writhe(&self) -> i32 {
        self.0.writhe()
    }

    pub fn passages(&self) -> BTreeMap<u32, CrossingInfo> {
        self.0.passages()
    }

    pub fn mirror(&self) -> Self {
        KnotCode(self.0.mirror())
    }

    pub fn reverse(&self) -> Self {
        KnotCode(self.0.reverse())
    }

    pub fn canonicalize(&self) -> Self {
        KnotCode(self.0.canonicalize())
    }

    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        self.0.canonical_key()
    }

    pub fn relabeled(&self) -> Self {
        KnotCode(self.0.relabeled())
    }

    pub fn rotated(&self, k: usize) -> Self {
        KnotCode(self.0.rotated(0, k))
    }

    pub fn map_ids(&self, f: impl Fn(u32) -> u32) -> Self {
        KnotCode(self.0.map_ids(f))
    }
}

impl TryFrom<LinkCode> for KnotCode {
    type Error = CodeError;

    fn try_from(code: LinkCode) -> Result<Self, Self::Error> {
        if code.num_components() == 1 {
            Ok(KnotCode(code))
        } else {
            Err(CodeError::NotAKnot(code.num_components()))
        }
    }
}

impl From<KnotCode> for LinkCode {
    fn from(k: KnotCode) -> Self {
        k.0
    }
}

impl FromStr for KnotCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KnotCode::try_from(s.parse::<LinkCode>()?)
    }
}

impl fmt::Display for KnotCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Either kind of code, as produced by [`parse`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Code {
    Knot(KnotCode),
    Link(LinkCode),
}

impl Code {
    pub fn as_link(&self) -> &LinkCode {
        match self {
            Code::Knot(k) => k.as_link(),
            Code::Link(l) => l,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_link().fmt(f)
    }
}

/// Parses Gauss-code text; one component yields a knot code.
pub fn parse(text: &str) -> Result<Code, CodeError> {
    let link: LinkCode = text.parse()?;
    Ok(if link.is_knot() { Code::Knot(KnotCode(link)) } else { Code::Link(link) })
}

pub fn serialize(code: &LinkCode) -> String {
    code.to_string()
}

/// Reads a code file: one code per line, `#` starts a comment, blank lines skipped.
pub fn parse_lines(text: &str) -> Vec<(usize, Result<LinkCode, CodeError>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                None
            } else {
                Some((i + 1, body.parse()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotCode {
        s.parse().unwrap()
    }

    #[test]
    fn parse_unknot() {
        let c = parse("").unwrap();
        assert!(matches!(&c, Code::Knot(k) if k.crossing_count() == 0));
    }

    #[test]
    fn parse_virtual_trefoil() {
        let c = k("O1+ O2+ U1+ U2+");
        assert_eq!(c.crossing_count(), 2);
        assert_eq!(c.writhe(), 2);
        assert_eq!(c.to_string(), "O1+ O2+ U1+ U2+");
    }

    #[test]
    fn parse_trefoil() {
        let c = k("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(c.crossing_count(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("O1+ O1+"), Err(CodeError::UnpairedCrossing(1)));
        assert_eq!(parse("O1+"), Err(CodeError::UnpairedCrossing(1)));
        assert_eq!(parse("O1+ U1-"), Err(CodeError::SignMismatch(1)));
        assert!(matches!(parse("X1+ U1+"), Err(CodeError::Syntax { .. })));
        assert!(matches!(parse("O1 U1+"), Err(CodeError::Syntax { .. })));
        assert!(matches!(parse("O0+ U0+"), Err(CodeError::Syntax { .. })));
    }

    #[test]
    fn unicode_minus() {
        assert_eq!(k("O1\u{2212} U1\u{2212}").to_string(), "O1- U1-");
    }

    #[test]
    fn link_round_trip() {
        let l: LinkCode = "O1+ / U1+".parse().unwrap();
        assert_eq!(l.num_components(), 2);
        assert_eq!(l.to_string(), "O1+ / U1+");
        let u = LinkCode::unlink(3);
        assert_eq!(u.to_string().parse::<LinkCode>().unwrap(), u);
        let m: LinkCode = "O1+ U1+ / / O2- U2-".parse().unwrap();
        assert_eq!(m.to_string().parse::<LinkCode>().unwrap(), m);
    }

    #[test]
    fn canonical_rotation_and_relabel() {
        let v = k("O1+ O2+ U1+ U2+");
        let r = v.rotated(1);
        assert_eq!(v.canonicalize(), r.canonicalize());
        let swapped = v.map_ids(|i| 3 - i);
        assert_eq!(v.canonicalize(), swapped.canonicalize());
        let c = v.canonicalize();
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn canonical_distinguishes() {
        let trefoil = k("O1+ U2+ O3+ U1+ O2+ U3+");
        let fig8 = k("O1- U2- O3+ U1- O2- U4+ O4+ U3+");
        assert_ne!(trefoil.canonical_key(), fig8.canonical_key());
    }

    #[test]
    fn canonical_link_component_order() {
        let a: LinkCode = "O1+ U2- / O2- U1+".parse().unwrap();
        let b: LinkCode = "U1+ O2- / U2- O1+".parse().unwrap();
        assert_eq!(a.canonicalize(), b.canonicalize());
    }

    #[test]
    fn symmetries() {
        assert_eq!(KnotCode::unknot().mirror(), KnotCode::unknot());
        let v = k("O1+ O2+ U1+ U2+");
        assert_eq!(v.mirror().mirror(), v);
        assert_eq!(v.reverse().reverse(), v);
        let r = v.reverse();
        assert_eq!(r.crossing_count(), 2);
        assert_eq!(r.writhe(), 2);
        assert_eq!(v.mirror().to_string(), "U1- U2- O1- O2-");
    }
}
