//! Reidemeister moves on Gauss codes, simplification and bounded
//! equivalence search.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::{LinkCode, Passage, Pos, Sign, Token};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("illegal move site {site}: {reason}")]
    IllegalSite { site: String, reason: String },
    #[error("cannot parse move `{0}`")]
    Syntax(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no path found within depth {0}")]
    NotFound(usize),
}

/// A located Reidemeister move.
///
/// Positions are `(component, index)`. A gap `g` means "before token `g`";
/// a crossing-free component has the single gap 0. Pairs are named by the
/// position of their first token; the second is its cyclic successor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveSite {
    /// Removes the kink formed by the tokens at `(comp, index)` and its successor.
    R1Remove { comp: usize, index: usize },
    /// Inserts a kink whose first token has passage `first`.
    R1Insert { comp: usize, gap: usize, first: Passage, sign: Sign },
    /// Removes a bigon: `over` starts the pair of over tokens, `under` the
    /// pair of under tokens.
    R2Remove { over: Pos, under: Pos },
    /// Inserts a bigon with new crossings `a` (sign `sign`) and `b`
    /// (opposite sign): `O_a O_b` at `over_gap`, `U_a U_b` (or `U_b U_a`
    /// when `reversed`) at `under_gap`. When both gaps coincide,
    /// `under_first` puts the under pair first.
    R2Insert { over_gap: Pos, under_gap: Pos, sign: Sign, reversed: bool, under_first: bool },
    /// Triangle move: `t` is the pair passing over both others, `m` the
    /// pair passing over one and under one, `b` the pair passing under both.
    R3 { t: Pos, m: Pos, b: Pos },
}

impl MoveSite {
    pub fn kind(&self) -> &'static str {
        match self {
            MoveSite::R1Remove { .. } => "R1-",
            MoveSite::R1Insert { .. } => "R1+",
            MoveSite::R2Remove { .. } => "R2-",
            MoveSite::R2Insert { .. } => "R2+",
            MoveSite::R3 { .. } => "R3",
        }
    }

    /// Change in crossing count.
    pub fn crossing_delta(&self) -> i32 {
        match self {
            MoveSite::R1Remove { .. } => -1,
            MoveSite::R1Insert { .. } => 1,
            MoveSite::R2Remove { .. } => -2,
            MoveSite::R2Insert { .. } => 2,
            MoveSite::R3 { .. } => 0,
        }
    }

    pub fn is_removal(&self) -> bool {
        matches!(self, MoveSite::R1Remove { .. } | MoveSite::R2Remove { .. })
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Pos => '+',
        Sign::Neg => '-',
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveSite::R1Remove { comp, index } => write!(f, "R1-@{comp}:{index}"),
            MoveSite::R1Insert { comp, gap, first, sign } => {
                let p = if first == Passage::Over { 'O' } else { 'U' };
                write!(f, "R1+@{comp}:{gap}[{p}{}]", sign_char(sign))
            }
            MoveSite::R2Remove { over, under } => write!(f, "R2-@{}:{},{}:{}", over.0, over.1, under.0, under.1),
            MoveSite::R2Insert { over_gap, under_gap, sign, reversed, under_first } => {
                write!(
                    f,
                    "R2+@{}:{},{}:{}[{},{}{}]",
                    over_gap.0,
                    over_gap.1,
                    under_gap.0,
                    under_gap.1,
                    sign_char(sign),
                    if reversed { 'a' } else { 'p' },
                    if under_first { ",u" } else { "" }
                )
            }
            MoveSite::R3 { t, m, b } => write!(f, "R3@{}:{},{}:{},{}:{}", t.0, t.1, m.0, m.1, b.0, b.1),
        }
    }
}

fn parse_pos(s: &str) -> Option<Pos> {
    let (c, i) = s.split_once(':')?;
    Some((c.trim().parse().ok()?, i.trim().parse().ok()?))
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Pos),
        "-" | "\u{2212}" => Some(Sign::Neg),
        _ => None,
    }
}

impl FromStr for MoveSite {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MoveError::Syntax(s.to_string());
        let s = s.trim();
        let (kind, rest) = s.split_once('@').ok_or_else(err)?;
        let (locs, params) = match rest.split_once('[') {
            Some((l, p)) => (l, Some(p.strip_suffix(']').ok_or_else(err)?)),
            None => (rest, None),
        };
        let pos: Vec<Pos> = locs.split(',').map(parse_pos).collect::<Option<_>>().ok_or_else(err)?;
        let site = match (kind, pos.as_slice(), params) {
            ("R1-", [p], None) => MoveSite::R1Remove { comp: p.0, index: p.1 },
            ("R1+", [p], Some(param)) => {
                let mut ch = param.chars();
                let first = match ch.next() {
                    Some('O') => Passage::Over,
                    Some('U') => Passage::Under,
                    _ => return Err(err()),
                };
                let sign = parse_sign(ch.as_str()).ok_or_else(err)?;
                MoveSite::R1Insert { comp: p.0, gap: p.1, first, sign }
            }
            ("R2-", [o, u], None) => MoveSite::R2Remove { over: *o, under: *u },
            ("R2+", [o, u], Some(param)) => {
                let parts: Vec<&str> = param.split(',').map(str::trim).collect();
                let sign = parse_sign(parts.first().ok_or_else(err)?).ok_or_else(err)?;
                let reversed = match parts.get(1) {
                    Some(&"p") => false,
                    Some(&"a") => true,
                    _ => return Err(err()),
                };
                let under_first = match parts.get(2) {
                    None => false,
                    Some(&"u") => true,
                    _ => return Err(err()),
                };
                if parts.len() > 3 {
                    return Err(err());
                }
                MoveSite::R2Insert { over_gap: *o, under_gap: *u, sign, reversed, under_first }
            }
            ("R3", [t, m, b], None) => MoveSite::R3 { t: *t, m: *m, b: *b },
            _ => return Err(err()),
        };
        Ok(site)
    }
}

/// Serializes a move path, one move per line.
pub fn format_path(path: &[MoveSite]) -> String {
    path.iter().map(|m| format!("{m}\n")).collect()
}

pub fn parse_path(text: &str) -> Result<Vec<MoveSite>, MoveError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

/// Valid order bits `(oT, oM, oB)` for each sign triple `(sTM, sTB, sMB)`;
/// the bitwise complement of each entry is valid too.
///
/// `oT`: along T the crossing with M comes first. `oM`: along M the crossing
/// under T comes first. `oB`: along B the crossing under T comes first.
pub const R3_TABLE: [((i8, i8, i8), (bool, bool, bool)); 8] = [
    ((1, 1, 1), (false, false, false)),
    ((1, 1, -1), (false, true, true)),
    ((1, -1, 1), (false, true, false)),
    ((1, -1, -1), (false, false, true)),
    ((-1, 1, 1), (false, false, true)),
    ((-1, 1, -1), (false, true, false)),
    ((-1, -1, 1), (false, true, true)),
    ((-1, -1, -1), (false, false, false)),
];

pub fn r3_orders_valid(signs: (Sign, Sign, Sign), orders: (bool, bool, bool)) -> bool {
    let key = (signs.0.to_i32() as i8, signs.1.to_i32() as i8, signs.2.to_i32() as i8);
    let (_, o) = R3_TABLE.iter().find(|(k, _)| *k == key).expect("table covers all sign triples");
    orders == *o || orders == (!o.0, !o.1, !o.2)
}

fn at(code: &LinkCode, p: Pos) -> Option<&Token> {
    code.components().get(p.0)?.get(p.1)
}

/// Cyclic successor of `p`, if the component has at least two tokens.
fn succ(code: &LinkCode, p: Pos) -> Option<Pos> {
    let len = code.components().get(p.0)?.len();
    (len >= 2 && p.1 < len).then(|| (p.0, (p.1 + 1) % len))
}

/// Pair starts of a component: every index, except that a two-token
/// component has only one pair.
fn pair_starts(len: usize) -> std::ops::Range<usize> {
    match len {
        0 | 1 => 0..0,
        2 => 0..1,
        n => 0..n,
    }
}

fn gap_count(len: usize) -> usize {
    len.max(1)
}

fn gaps(code: &LinkCode) -> Vec<Pos> {
    code.components().iter().enumerate().flat_map(|(c, comp)| (0..gap_count(comp.len())).map(move |g| (c, g))).collect()
}

/// Identifies the three crossings of an R3 site and the order bits, or
/// explains why it is not a triangle.
fn r3_roles(code: &LinkCode, t: Pos, m: Pos, b: Pos) -> Result<(Sign, Sign, Sign, bool, bool, bool), String> {
    let pair = |p: Pos| -> Result<(Pos, Pos, Token, Token), String> {
        let q = succ(code, p).ok_or("not a token pair")?;
        if p.1 >= code.component(p.0).len() || (code.component(p.0).len() == 2 && p.1 != 0) {
            return Err("not a pair start".into());
        }
        let (x, y) = (*at(code, p).ok_or("no token")?, *at(code, q).ok_or("no token")?);
        Ok((p, q, x, y))
    };
    let (tp, tq, t1, t2) = pair(t)?;
    let (mp, mq, m1, m2) = pair(m)?;
    let (bp, bq, b1, b2) = pair(b)?;
    let positions = [tp, tq, mp, mq, bp, bq];
    for i in 0..6 {
        for j in i + 1..6 {
            if positions[i] == positions[j] {
                return Err("pairs overlap".into());
            }
        }
    }
    if !(t1.is_over() && t2.is_over()) {
        return Err("top pair must be two over passages".into());
    }
    if b1.is_over() || b2.is_over() {
        return Err("bottom pair must be two under passages".into());
    }
    if m1.is_over() == m2.is_over() {
        return Err("middle pair must mix over and under".into());
    }
    let (m_under, m_over) = if m1.is_over() { (m2, m1) } else { (m1, m2) };
    let x_tm = m_under.id;
    let x_mb = m_over.id;
    let x_tb = if t1.id == x_tm { t2.id } else if t2.id == x_tm { t1.id } else { return Err("top does not cross middle".into()) };
    if x_tb == x_tm || x_tb == x_mb || x_tm == x_mb {
        return Err("crossings must be distinct".into());
    }
    let b_ids = [b1.id, b2.id];
    if !(b_ids.contains(&x_tb) && b_ids.contains(&x_mb)) {
        return Err("bottom pair must meet top and middle".into());
    }
    let o_t = t1.id == x_tm;
    let o_m = !m1.is_over();
    let o_b = b1.id == x_tb;
    let s_tb = if b1.id == x_tb { b1.sign } else { b2.sign };
    Ok((m_under.sign, s_tb, m_over.sign, o_t, o_m, o_b))
}

fn r3_legal(code: &LinkCode, t: Pos, m: Pos, b: Pos) -> Result<(), String> {
    let (s_tm, s_tb, s_mb, o_t, o_m, o_b) = r3_roles(code, t, m, b)?;
    if r3_orders_valid((s_tm, s_tb, s_mb), (o_t, o_m, o_b)) {
        Ok(())
    } else {
        Err("orders and signs do not form a triangle".into())
    }
}

/// Checks that `site` matches the required local pattern in `code`.
pub fn check(code: &LinkCode, site: &MoveSite) -> Result<(), MoveError> {
    let illegal = |reason: &str| MoveError::IllegalSite { site: site.to_string(), reason: reason.to_string() };
    let comp_len = |c: usize| code.components().get(c).map(Vec::len);
    match *site {
        MoveSite::R1Remove { comp, index } => {
            let len = comp_len(comp).ok_or_else(|| illegal("no such component"))?;
            if !pair_starts(len).contains(&index) {
                return Err(illegal("no token pair there"));
            }
            let (x, y) = (code.component(comp)[index], code.component(comp)[(index + 1) % len]);
            if x.id != y.id {
                return Err(illegal("tokens belong to different crossings"));
            }
        }
        MoveSite::R1Insert { comp, gap, .. } => {
            let len = comp_len(comp).ok_or_else(|| illegal("no such component"))?;
            if gap >= gap_count(len) {
                return Err(illegal("no such gap"));
            }
        }
        MoveSite::R2Remove { over, under } => {
            let pair = |p: Pos| -> Option<(Token, Token)> {
                let len = comp_len(p.0)?;
                if !pair_starts(len).contains(&p.1) {
                    return None;
                }
                Some((*at(code, p)?, *at(code, succ(code, p)?)?))
            };
            let (o1, o2) = pair(over).ok_or_else(|| illegal("no over pair there"))?;
            let (u1, u2) = pair(under).ok_or_else(|| illegal("no under pair there"))?;
            if !(o1.is_over() && o2.is_over() && !u1.is_over() && !u2.is_over()) {
                return Err(illegal("passages do not match"));
            }
            let same = (u1.id == o1.id && u2.id == o2.id) || (u1.id == o2.id && u2.id == o1.id);
            if o1.id == o2.id || !same {
                return Err(illegal("pairs do not share two crossings"));
            }
            if o1.sign == o2.sign {
                return Err(illegal("crossings must have opposite signs"));
            }
        }
        MoveSite::R2Insert { over_gap, under_gap, under_first, .. } => {
            for g in [over_gap, under_gap] {
                let len = comp_len(g.0).ok_or_else(|| illegal("no such component"))?;
                if g.1 >= gap_count(len) {
                    return Err(illegal("no such gap"));
                }
            }
            if under_first && over_gap != under_gap {
                return Err(illegal("under_first needs coinciding gaps"));
            }
        }
        MoveSite::R3 { t, m, b } => r3_legal(code, t, m, b).map_err(|r| illegal(&r))?,
    }
    Ok(())
}

/// Every removal and triangle site, plus insertions at every gap with every
/// parameter choice.
pub fn legal_moves(code: &LinkCode) -> Vec<MoveSite> {
    let mut out = removal_moves(code);
    out.extend(r3_moves(code));
    out.extend(insertion_moves(code));
    out
}

/// R1− sites then R2− sites, in position order.
pub fn removal_moves(code: &LinkCode) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for (c, comp) in code.components().iter().enumerate() {
        for i in pair_starts(comp.len()) {
            if comp[i].id == comp[(i + 1) % comp.len()].id {
                out.push(MoveSite::R1Remove { comp: c, index: i });
            }
        }
    }
    let mut pairs: HashMap<(u32, u32), Vec<Pos>> = HashMap::new();
    let mut over_pairs = Vec::new();
    for (c, comp) in code.components().iter().enumerate() {
        for i in pair_starts(comp.len()) {
            let (x, y) = (comp[i], comp[(i + 1) % comp.len()]);
            if x.id == y.id || x.is_over() != y.is_over() {
                continue;
            }
            if x.is_over() {
                if x.sign != y.sign {
                    over_pairs.push(((c, i), x.id, y.id));
                }
            } else {
                pairs.entry((x.id.min(y.id), x.id.max(y.id))).or_default().push((c, i));
            }
        }
    }
    for (over, a, b) in over_pairs {
        if let Some(unders) = pairs.get(&(a.min(b), a.max(b))) {
            for &under in unders {
                out.push(MoveSite::R2Remove { over, under });
            }
        }
    }
    out
}

pub fn r3_moves(code: &LinkCode) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let passages = code.passages();
    let starts: Vec<Pos> = code
        .components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| pair_starts(comp.len()).map(move |i| (c, i)))
        .collect();
    // pair start containing a given position, looking both ways
    let pairs_at = |p: Pos| -> Vec<Pos> {
        let len = code.component(p.0).len();
        let mut v = Vec::new();
        if pair_starts(len).contains(&p.1) {
            v.push(p);
        }
        let before = (p.0, (p.1 + len - 1) % len);
        if pair_starts(len).contains(&before.1) && before != p {
            v.push(before);
        }
        v
    };
    for &t in &starts {
        let (x, y) = (code.component(t.0)[t.1], code.component(t.0)[(t.1 + 1) % code.component(t.0).len()]);
        if !(x.is_over() && y.is_over()) || x.id == y.id {
            continue;
        }
        for (x_tm, x_tb) in [(x.id, y.id), (y.id, x.id)] {
            for m in pairs_at(passages[&x_tm].under) {
                for b in pairs_at(passages[&x_tb].under) {
                    let site = MoveSite::R3 { t, m, b };
                    if r3_legal(code, t, m, b).is_ok() && !out.contains(&site) {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

pub fn insertion_moves(code: &LinkCode) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let gaps = gaps(code);
    for &(comp, gap) in &gaps {
        for first in [Passage::Over, Passage::Under] {
            for sign in [Sign::Pos, Sign::Neg] {
                out.push(MoveSite::R1Insert { comp, gap, first, sign });
            }
        }
    }
    for &over_gap in &gaps {
        for &under_gap in &gaps {
            for sign in [Sign::Pos, Sign::Neg] {
                for reversed in [false, true] {
                    out.push(MoveSite::R2Insert { over_gap, under_gap, sign, reversed, under_first: false });
                    if over_gap == under_gap {
                        out.push(MoveSite::R2Insert { over_gap, under_gap, sign, reversed, under_first: true });
                    }
                }
            }
        }
    }
    out
}

/// Applies a move, checking legality.
pub fn apply(code: &LinkCode, site: &MoveSite) -> Result<LinkCode, MoveError> {
    check(code, site)?;
    Ok(apply_unchecked(code, site))
}

fn remove_positions(comps: &mut [Vec<Token>], mut ps: Vec<Pos>) {
    ps.sort_unstable_by(|a, b| b.cmp(a));
    for (c, i) in ps {
        comps[c].remove(i);
    }
}

pub(crate) fn apply_unchecked(code: &LinkCode, site: &MoveSite) -> LinkCode {
    let mut comps: Vec<Vec<Token>> = code.components().to_vec();
    let next_id = code.max_id() + 1;
    match *site {
        MoveSite::R1Remove { comp, index } => {
            let len = comps[comp].len();
            remove_positions(&mut comps, vec![(comp, index), (comp, (index + 1) % len)]);
        }
        MoveSite::R1Insert { comp, gap, first, sign } => {
            let a = Token::new(next_id, first, sign);
            let b = Token::new(next_id, first.flip(), sign);
            comps[comp].splice(gap..gap, [a, b]);
        }
        MoveSite::R2Remove { over, under } => {
            let ol = comps[over.0].len();
            let ul = comps[under.0].len();
            remove_positions(
                &mut comps,
                vec![over, (over.0, (over.1 + 1) % ol), under, (under.0, (under.1 + 1) % ul)],
            );
        }
        MoveSite::R2Insert { over_gap, under_gap, sign, reversed, under_first } => {
            let (a, b) = (next_id, next_id + 1);
            let overs = [Token::over(a, sign), Token::over(b, sign.flip())];
            let unders = if reversed {
                [Token::under(b, sign.flip()), Token::under(a, sign)]
            } else {
                [Token::under(a, sign), Token::under(b, sign.flip())]
            };
            if over_gap == under_gap {
                let seq: Vec<Token> =
                    if under_first { unders.iter().chain(&overs).copied().collect() } else { overs.iter().chain(&unders).copied().collect() };
                comps[over_gap.0].splice(over_gap.1..over_gap.1, seq);
            } else {
                // insert at the later gap first so the earlier index stays valid
                let mut ins = [(over_gap, overs), (under_gap, unders)];
                ins.sort_by_key(|x| std::cmp::Reverse(x.0));
                for ((c, g), toks) in ins {
                    comps[c].splice(g..g, toks);
                }
            }
        }
        MoveSite::R3 { t, m, b } => {
            for p in [t, m, b] {
                let len = comps[p.0].len();
                comps[p.0].swap(p.1, (p.1 + 1) % len);
            }
        }
    }
    LinkCode::from_components_unchecked(comps)
}

/// The move undoing `site`, expressed on `apply(code, site)`.
pub fn inverse(code: &LinkCode, site: &MoveSite) -> Result<MoveSite, MoveError> {
    let after = apply(code, site)?;
    if let MoveSite::R3 { .. } = site {
        return Ok(*site);
    }
    let target = code.canonical_key();
    let candidates = match site.crossing_delta() {
        d if d > 0 => removal_moves(&after),
        _ => insertion_moves(&after),
    };
    candidates
        .into_iter()
        .find(|m| m.crossing_delta() == -site.crossing_delta() && apply_unchecked(&after, m).canonical_key() == target)
        .ok_or_else(|| MoveError::IllegalSite { site: site.to_string(), reason: "no inverse found".into() })
}

/// Result of [`simplify`]: the final code and the moves that produce it.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub code: LinkCode,
    pub path: Vec<MoveSite>,
}

/// Greedy removals until none apply.
fn greedy(code: &LinkCode, path: &mut Vec<MoveSite>) -> LinkCode {
    let mut cur = code.clone();
    while let Some(m) = removal_moves(&cur).into_iter().next() {
        cur = apply_unchecked(&cur, &m);
        path.push(m);
    }
    cur
}

/// Reduces the crossing count: greedy R1−/R2− (lowest position first),
/// then a breadth-first search through R3 moves and crossing-neutral R2+
/// detours, visiting at most `budget` diagrams per round.
pub fn simplify(code: &LinkCode, budget: usize) -> Simplified {
    let mut path = Vec::new();
    let mut cur = greedy(code, &mut path);
    loop {
        let n = cur.crossing_count();
        let Some(detour) = detour_search(&cur, budget) else {
            break;
        };
        let mut next = cur.clone();
        for m in &detour {
            next = apply_unchecked(&next, m);
        }
        path.extend(detour);
        cur = greedy(&next, &mut path);
        debug_assert!(cur.crossing_count() < n);
    }
    if path.is_empty() {
        return Simplified { code: code.clone(), path };
    }
    Simplified { code: cur, path }
}

/// Breadth-first search over R3 moves and R2 insertions (the latter only
/// from diagrams no larger than the start) for a diagram that greedy
/// removal brings below the starting crossing count.
fn detour_search(start: &LinkCode, budget: usize) -> Option<Vec<MoveSite>> {
    let n = start.crossing_count();
    let mut seen: HashMap<Vec<Vec<u32>>, ()> = HashMap::new();
    seen.insert(start.canonical_key(), ());
    let mut queue: VecDeque<(LinkCode, Vec<MoveSite>)> = VecDeque::from([(start.clone(), Vec::new())]);
    let mut visited = 0;
    while let Some((code, moves)) = queue.pop_front() {
        visited += 1;
        if visited > budget {
            return None;
        }
        let mut children = r3_moves(&code);
        if code.crossing_count() <= n {
            children.extend(insertion_moves(&code).into_iter().filter(|m| matches!(m, MoveSite::R2Insert { .. })));
        }
        for m in children {
            let next = apply_unchecked(&code, &m);
            if seen.insert(next.canonical_key(), ()).is_some() {
                continue;
            }
            let mut p = moves.clone();
            p.push(m);
            let mut tail = Vec::new();
            let reduced = greedy(&next, &mut tail);
            if reduced.crossing_count() < n {
                return Some(p);
            }
            queue.push_back((next, p));
        }
    }
    None
}

type Key = Vec<Vec<u32>>;

struct Node {
    code: LinkCode,
    parent: Option<Key>,
}

/// One breadth-first layer expansion with crossing-count pruning.
fn expand(level: &[Key], nodes: &HashMap<Key, Node>, prune: impl Fn(usize) -> bool) -> Vec<(Key, LinkCode, Key)> {
    let mut out = Vec::new();
    for key in level {
        let code = &nodes[key].code;
        let c = code.crossing_count() as i64;
        for m in legal_moves(code) {
            let nc = c + m.crossing_delta() as i64;
            if nc < 0 || !prune(nc as usize) {
                continue;
            }
            let next = apply_unchecked(code, &m);
            let k = next.canonical_key();
            out.push((k, next, key.clone()));
        }
    }
    out
}

/// Bidirectional breadth-first search for a move path of length ≤ `depth`
/// from `a` to `b` (up to canonical form). `NotFound` is not a proof of
/// inequivalence.
pub fn equivalent_search(a: &LinkCode, b: &LinkCode, depth: usize) -> Result<Vec<MoveSite>, SearchError> {
    let (ka, kb) = (a.canonical_key(), b.canonical_key());
    if ka == kb {
        return Ok(Vec::new());
    }
    if a.num_components() != b.num_components() {
        return Err(SearchError::NotFound(depth));
    }
    let fwd_depth = depth.div_ceil(2);
    let bwd_depth = depth / 2;
    let (na, nb) = (a.crossing_count() as i64, b.crossing_count() as i64);
    let reachable = |c: usize, from_other: i64, used: usize| (c as i64 - from_other).abs() <= 2 * (depth - used) as i64;

    // backward ball around b
    let mut back: HashMap<Key, Node> = HashMap::new();
    back.insert(kb.clone(), Node { code: b.clone(), parent: None });
    let mut level = vec![kb.clone()];
    for d in 1..=bwd_depth {
        let mut next_level = Vec::new();
        for (k, code, parent) in expand(&level, &back, |c| reachable(c, na, d)) {
            if !back.contains_key(&k) {
                back.insert(k.clone(), Node { code, parent: Some(parent) });
                next_level.push(k);
            }
        }
        level = next_level;
    }
    if back.contains_key(&ka) {
        return Ok(finish(a, &ka, &back));
    }

    let mut fwd: HashMap<Key, Node> = HashMap::new();
    fwd.insert(ka.clone(), Node { code: a.clone(), parent: None });
    let mut level = vec![ka.clone()];
    for d in 1..=fwd_depth {
        let mut next_level = Vec::new();
        for (k, code, parent) in expand(&level, &fwd, |c| reachable(c, nb, d)) {
            if fwd.contains_key(&k) {
                continue;
            }
            if back.contains_key(&k) {
                fwd.insert(k.clone(), Node { code, parent: Some(parent) });
                let mut keys = vec![k.clone()];
                while let Some(p) = fwd[keys.last().unwrap()].parent.clone() {
                    keys.push(p);
                }
                keys.reverse();
                let mut path = Vec::new();
                let mut cur = a.clone();
                for w in keys.windows(2) {
                    let (m, next) = step_to(&cur, &w[1]);
                    path.push(m);
                    cur = next;
                }
                path.extend(finish(&cur, &k, &back));
                return Ok(path);
            }
            if d < fwd_depth {
                fwd.insert(k.clone(), Node { code, parent: Some(parent) });
                next_level.push(k);
            }
        }
        level = next_level;
    }
    Err(SearchError::NotFound(depth))
}

/// A move from `cur` to a diagram with canonical key `target`.
fn step_to(cur: &LinkCode, target: &Key) -> (MoveSite, LinkCode) {
    legal_moves(cur)
        .into_iter()
        .find_map(|m| {
            let next = apply_unchecked(cur, &m);
            (&next.canonical_key() == target).then_some((m, next))
        })
        .expect("adjacent diagrams are one move apart")
}

/// Moves from `cur` (with key `k`) down the backward tree to its root.
fn finish(cur: &LinkCode, k: &Key, back: &HashMap<Key, Node>) -> Vec<MoveSite> {
    let mut path = Vec::new();
    let mut cur = cur.clone();
    let mut key = k.clone();
    while let Some(parent) = back[&key].parent.clone() {
        let (m, next) = step_to(&cur, &parent);
        path.push(m);
        cur = next;
        key = parent;
    }
    path
}

/// Applies a path, checking each move.
pub fn apply_path(code: &LinkCode, path: &[MoveSite]) -> Result<LinkCode, MoveError> {
    path.iter().try_fold(code.clone(), |c, m| apply(&c, m))
}
