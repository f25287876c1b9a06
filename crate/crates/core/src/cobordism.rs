//! Concordance movies: Reidemeister moves, births, deaths and saddles on
//! link codes, with a verifier that checks the endpoints, the Euler
//! characteristic count and connectivity of the genealogy graph.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::invariants::{generalized_alexander, odd_writhe, writhe_polynomial};
use crate::kernel::{KnotCode, LinkCode, Token};
use crate::moves::{self, MoveSite};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MovieError {
    #[error("event {index}: {reason}")]
    IllegalEvent { index: usize, reason: String },
    #[error("{which} frame does not match: expected {expected}, got {got}")]
    EndpointMismatch { which: &'static str, expected: String, got: String },
    #[error("births - saddles + deaths = {births} - {saddles} + {deaths} != 0")]
    CountFailure { births: usize, saddles: usize, deaths: usize },
    #[error("genealogy graph is disconnected ({0})")]
    Disconnected(String),
    #[error("movie syntax error on line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

/// A gap of a link code: before token `index` of component `comp`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gap {
    pub comp: usize,
    pub index: usize,
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.comp, self.index)
    }
}

impl FromStr for Gap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (c, i) = s.split_once(':').ok_or_else(|| format!("gap `{s}` is not comp:index"))?;
        let p = |x: &str| x.parse::<usize>().map_err(|e| format!("gap `{s}`: {e}"));
        Ok(Gap { comp: p(c)?, index: p(i)? })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MovieEvent {
    Move(MoveSite),
    /// A crossing-free component inserted at this component index.
    Birth(usize),
    /// Removes this crossing-free component.
    Death(usize),
    /// Band between two gaps; `coherent` is false for an
    /// orientation-reversing band, which is never legal.
    Saddle { a: Gap, b: Gap, coherent: bool },
}

impl fmt::Display for MovieEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MovieEvent::Move(m) => write!(f, "R {m}"),
            MovieEvent::Birth(p) => write!(f, "B {p}"),
            MovieEvent::Death(c) => write!(f, "D {c}"),
            MovieEvent::Saddle { a, b, coherent } => write!(f, "S {a} {b} {}", if *coherent { '+' } else { '-' }),
        }
    }
}

impl FromStr for MovieEvent {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let f: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
        match f.as_slice() {
            ["R", site] => site.parse().map(MovieEvent::Move).map_err(|e| e.to_string()),
            [site] if site.starts_with('R') => site.parse().map(MovieEvent::Move).map_err(|e| e.to_string()),
            ["B", p] => Ok(MovieEvent::Birth(num(p)?)),
            ["D", c] => Ok(MovieEvent::Death(num(c)?)),
            ["S", a, b, o] => {
                let coherent = match *o {
                    "+" => true,
                    "-" => false,
                    _ => return Err(format!("saddle orientation `{o}` is not + or -")),
                };
                Ok(MovieEvent::Saddle { a: a.parse()?, b: b.parse()?, coherent })
            }
            _ => Err(format!("cannot parse event `{line}`")),
        }
    }
}

/// Initial frame plus events; frames are recomputed on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Movie {
    pub initial: LinkCode,
    pub events: Vec<MovieEvent>,
}

impl Movie {
    pub fn new(initial: LinkCode) -> Self {
        Self { initial, events: Vec::new() }
    }

    /// All frames, starting with the initial one.
    pub fn frames(&self) -> Result<Vec<LinkCode>, MovieError> {
        let mut frames = vec![self.initial.clone()];
        for (index, e) in self.events.iter().enumerate() {
            let next = apply_event(frames.last().unwrap(), e)
                .map_err(|reason| MovieError::IllegalEvent { index, reason })?;
            frames.push(next);
        }
        Ok(frames)
    }

    pub fn final_frame(&self) -> Result<LinkCode, MovieError> {
        Ok(self.frames()?.pop().unwrap())
    }
}

/// A movie file: `FROM <code>`, `TO <code>`, then one event per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovieFile {
    pub from: LinkCode,
    pub to: LinkCode,
    pub events: Vec<MovieEvent>,
}

impl MovieFile {
    pub fn movie(&self) -> Movie {
        Movie { initial: self.from.clone(), events: self.events.clone() }
    }

    pub fn verify(&self) -> Result<Certificate, MovieError> {
        verify_movie(&self.movie(), &self.from, &self.to)
    }
}

impl FromStr for MovieFile {
    type Err = MovieError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (mut from, mut to, mut events) = (None, None, Vec::new());
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let err = |reason: String| MovieError::Syntax { line, reason };
            let body = raw.split('#').next().unwrap_or("").trim_end();
            if body.trim().is_empty() {
                continue;
            }
            let code = |rest: &str| rest.trim().parse::<LinkCode>().map_err(|e| err(e.to_string()));
            if let Some(rest) = body.strip_prefix("FROM") {
                from = Some(code(rest)?);
            } else if let Some(rest) = body.strip_prefix("TO") {
                to = Some(code(rest)?);
            } else {
                events.push(body.trim().parse().map_err(err)?);
            }
        }
        let missing = |what: &str| MovieError::Syntax { line: 0, reason: format!("missing {what} header") };
        Ok(MovieFile { from: from.ok_or_else(|| missing("FROM"))?, to: to.ok_or_else(|| missing("TO"))?, events })
    }
}

impl fmt::Display for MovieFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FROM {}", self.from)?;
        writeln!(f, "TO {}", self.to)?;
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

fn check_gap(code: &LinkCode, g: Gap) -> Result<(), String> {
    if g.comp >= code.num_components() {
        return Err(format!("no component {}", g.comp));
    }
    if g.index >= code.component(g.comp).len().max(1) {
        return Err(format!("gap {g} out of range"));
    }
    Ok(())
}

fn rotate(w: &[Token], i: usize) -> Vec<Token> {
    let mut v = w.to_vec();
    if !v.is_empty() {
        v.rotate_left(i);
    }
    v
}

/// Applies one event. Splits keep the first piece in place and append the
/// piece between the two gaps as a new last component; merges put the
/// result at the smaller index.
pub fn apply_event(frame: &LinkCode, e: &MovieEvent) -> Result<LinkCode, String> {
    let mut comps = frame.components().to_vec();
    match *e {
        MovieEvent::Move(m) => return moves::apply(frame, &m).map_err(|e| e.to_string()),
        MovieEvent::Birth(p) => {
            if p > comps.len() {
                return Err(format!("birth position {p} beyond {} components", comps.len()));
            }
            comps.insert(p, Vec::new());
        }
        MovieEvent::Death(c) => {
            match comps.get(c) {
                None => return Err(format!("no component {c}")),
                Some(w) if !w.is_empty() => return Err(format!("component {c} has crossings")),
                _ => {}
            }
            comps.remove(c);
        }
        MovieEvent::Saddle { a, b, coherent } => {
            if !coherent {
                return Err("orientation-reversing saddle".into());
            }
            check_gap(frame, a)?;
            check_gap(frame, b)?;
            if a.comp == b.comp {
                let w = &comps[a.comp];
                let (i, j) = (a.index.min(b.index), a.index.max(b.index));
                let (inner, outer) = if w.is_empty() {
                    (Vec::new(), Vec::new())
                } else {
                    (w[i..j].to_vec(), [&w[j..], &w[..i]].concat())
                };
                comps[a.comp] = outer;
                comps.push(inner);
            } else {
                let (lo, hi) = if a.comp < b.comp { (a, b) } else { (b, a) };
                let mut merged = rotate(&comps[a.comp], a.index);
                merged.extend(rotate(&comps[b.comp], b.index));
                comps[lo.comp] = merged;
                comps.remove(hi.comp);
            }
        }
    }
    LinkCode::new(comps).map_err(|e| e.to_string())
}

/// Where a lifeline begins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Initial,
    Birth,
    Split,
    Merge,
}

/// A component lifeline: the stretch of the movie during which one
/// component persists unchanged in identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lifeline {
    pub origin: Origin,
    /// event index that created it (none for initial components)
    pub start: Option<usize>,
    /// event index that ended it (none if it reaches the final frame)
    pub end: Option<usize>,
}

/// Reeb (genealogy) graph: nodes are lifelines, edges join a lifeline to
/// those it splits into or merges into.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Genealogy {
    pub nodes: Vec<Lifeline>,
    pub edges: Vec<(usize, usize)>,
}

impl Genealogy {
    /// Connected components of the graph, each a sorted list of nodes.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(l: &mut [usize], x: usize) -> usize {
            if l[x] != x {
                let r = find(l, l[x]);
                l[x] = r;
            }
            l[x]
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut label, a), find(&mut label, b));
            label[ra] = rb;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            groups.entry(find(&mut label, x)).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub births: usize,
    pub deaths: usize,
    pub saddles: usize,
    pub euler_ok: bool,
    pub connected: bool,
    pub component_trace: Genealogy,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.euler_ok && self.connected
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "births={} saddles={} deaths={} euler={} connected={} ok={}",
            self.births,
            self.saddles,
            self.deaths,
            self.euler_ok,
            self.connected,
            self.ok()
        )
    }
}

/// Replays the movie, tracking lifelines. Only event legality is checked.
pub fn certificate(m: &Movie) -> Result<(Certificate, LinkCode), MovieError> {
    let mut g = Genealogy::default();
    // lifeline of each component of the current frame
    let mut alive: Vec<usize> = (0..m.initial.num_components())
        .map(|_| {
            g.nodes.push(Lifeline { origin: Origin::Initial, start: None, end: None });
            g.nodes.len() - 1
        })
        .collect();
    let (mut births, mut deaths, mut saddles) = (0, 0, 0);
    let mut frame = m.initial.clone();
    for (index, e) in m.events.iter().enumerate() {
        let next = apply_event(&frame, e).map_err(|reason| MovieError::IllegalEvent { index, reason })?;
        let spawn = |g: &mut Genealogy, origin| {
            g.nodes.push(Lifeline { origin, start: Some(index), end: None });
            g.nodes.len() - 1
        };
        match *e {
            MovieEvent::Move(_) => {}
            MovieEvent::Birth(p) => {
                births += 1;
                let n = spawn(&mut g, Origin::Birth);
                alive.insert(p, n);
            }
            MovieEvent::Death(c) => {
                deaths += 1;
                g.nodes[alive.remove(c)].end = Some(index);
            }
            MovieEvent::Saddle { a, b, .. } => {
                saddles += 1;
                if a.comp == b.comp {
                    let old = alive[a.comp];
                    g.nodes[old].end = Some(index);
                    let (x, y) = (spawn(&mut g, Origin::Split), spawn(&mut g, Origin::Split));
                    g.edges.extend([(old, x), (old, y)]);
                    alive[a.comp] = x;
                    alive.push(y);
                } else {
                    let (lo, hi) = (a.comp.min(b.comp), a.comp.max(b.comp));
                    let (p, q) = (alive[lo], alive[hi]);
                    g.nodes[p].end = Some(index);
                    g.nodes[q].end = Some(index);
                    let x = spawn(&mut g, Origin::Merge);
                    g.edges.extend([(p, x), (q, x)]);
                    alive[lo] = x;
                    alive.remove(hi);
                }
            }
        }
        frame = next;
    }
    let euler_ok = births + deaths == saddles;
    // every piece of the surface must join exactly one initial component to
    // exactly one final component
    let comps = g.components();
    let connected = comps.iter().all(|c| {
        let initial = c.iter().filter(|&&x| g.nodes[x].origin == Origin::Initial).count();
        let last = c.iter().filter(|&&x| g.nodes[x].end.is_none()).count();
        initial == 1 && last == 1
    }) && (comps.len() <= 1 || comps.len() == m.initial.num_components());
    let cert = Certificate { births, deaths, saddles, euler_ok, connected, component_trace: g };
    Ok((cert, frame))
}

/// Checks, in order: initial frame equals `from`, every event is legal,
/// final frame equals `to` (both up to canonical form), the count identity,
/// and connectivity. The first violated condition is reported.
pub fn verify_movie(m: &Movie, from: &LinkCode, to: &LinkCode) -> Result<Certificate, MovieError> {
    if m.initial.canonical_key() != from.canonical_key() {
        return Err(MovieError::EndpointMismatch {
            which: "initial",
            expected: from.to_string(),
            got: m.initial.to_string(),
        });
    }
    let (cert, last) = certificate(m)?;
    if last.canonical_key() != to.canonical_key() {
        return Err(MovieError::EndpointMismatch { which: "final", expected: to.to_string(), got: last.to_string() });
    }
    if !cert.euler_ok {
        return Err(MovieError::CountFailure { births: cert.births, saddles: cert.saddles, deaths: cert.deaths });
    }
    if !cert.connected {
        let n = cert.component_trace.components().len();
        return Err(MovieError::Disconnected(format!("{n} pieces for {} components", from.num_components())));
    }
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceVerdict {
    NotSlice,
    Inconclusive,
}

impl fmt::Display for SliceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SliceVerdict::NotSlice => "not slice",
            SliceVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub name: &'static str,
    pub value: String,
    pub obstructs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub obstructions: Vec<Obstruction>,
    pub verdict: SliceVerdict,
}

/// Concordance obstructions that vanish on slice knots. Never claims
/// sliceness: vanishing invariants only give `Inconclusive`.
pub fn slice_obstructions(code: &KnotCode) -> SliceReport {
    let ow = odd_writhe(code);
    let wp = writhe_polynomial(code);
    let ga = generalized_alexander(code);
    let obstructions = vec![
        Obstruction { name: "odd-writhe", value: ow.to_string(), obstructs: ow != 0 },
        Obstruction { name: "writhe-poly", value: wp.to_string(), obstructs: !wp.is_zero() },
        Obstruction { name: "galexander", value: ga.to_string(), obstructs: !ga.is_zero() },
    ];
    let verdict =
        if obstructions.iter().any(|o| o.obstructs) { SliceVerdict::NotSlice } else { SliceVerdict::Inconclusive };
    SliceReport { obstructions, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(s: &str) -> LinkCode {
        s.parse().unwrap()
    }

    #[test]
    fn empty_movie() {
        let u = link("");
        let c = verify_movie(&Movie::new(u.clone()), &u, &u).unwrap();
        assert_eq!((c.births, c.saddles, c.deaths), (0, 0, 0));
        assert!(c.ok());
    }

    #[test]
    fn birth_and_merge() {
        let u = link("");
        let two = apply_event(&u, &MovieEvent::Birth(1)).unwrap();
        assert_eq!(two, link(" / "));
        let gap = |c| Gap { comp: c, index: 0 };
        let one = apply_event(&two, &MovieEvent::Saddle { a: gap(0), b: gap(1), coherent: true }).unwrap();
        assert_eq!(one, u);
        assert!(apply_event(&two, &MovieEvent::Saddle { a: gap(0), b: gap(1), coherent: false }).is_err());
    }

    #[test]
    fn single_saddle_is_count_failure() {
        let m: MovieFile = "FROM  / \nTO \nS 0:0 1:0 +\n".parse().unwrap();
        assert!(matches!(m.verify(), Err(MovieError::CountFailure { births: 0, saddles: 1, deaths: 0 })));
    }

    #[test]
    fn birth_then_death() {
        let m: MovieFile = "FROM O1+ U2+ O3+ U1+ O2+ U3+\nTO O1+ U2+ O3+ U1+ O2+ U3+\nB 1\nD 1\n".parse().unwrap();
        let err = m.verify().unwrap_err();
        // the born component never touches the knot
        assert!(matches!(err, MovieError::CountFailure { .. }));
        let m: MovieFile = "FROM O1+ U2+ O3+ U1+ O2+ U3+\nTO O1+ U2+ O3+ U1+ O2+ U3+\nB 1\nS 0:0 1:0 +\n".parse().unwrap();
        let c = m.verify().unwrap();
        assert_eq!((c.births, c.saddles, c.deaths), (1, 1, 0));
        assert!(c.connected);
    }

    #[test]
    fn disconnected_movie() {
        // a split undone by a merge, plus a separate born sphere-with-holes
        let m: MovieFile = "FROM \nTO \nS 0:0 0:0 +\nS 0:0 1:0 +\nB 1\nB 2\nS 1:0 2:0 +\nD 1\n".parse().unwrap();
        assert!(matches!(m.verify(), Err(MovieError::Disconnected(_))));
        let m: MovieFile = "FROM  / \nTO  / \n".parse().unwrap();
        assert!(m.verify().unwrap().connected);
    }

    #[test]
    fn endpoint_mismatch_comes_first() {
        let m: MovieFile = "FROM \nTO O1+ U1+\nS 0:0 0:0 -\n".parse().unwrap();
        assert!(matches!(m.verify(), Err(MovieError::IllegalEvent { index: 0, .. })));
        let m: MovieFile = "FROM \nTO O1+ U1+\n".parse().unwrap();
        assert!(matches!(m.verify(), Err(MovieError::EndpointMismatch { which: "final", .. })));
    }

    #[test]
    fn text_round_trip() {
        let text = "FROM O1+ U1+\nTO \nR R1-@0:0\nB 0\nS 0:0 1:0 +\n";
        let m: MovieFile = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
        assert_eq!(m.verify().unwrap().saddles, 1);
    }

    #[test]
    fn slice_report() {
        let v = slice_obstructions(&"O1+ O2+ U1+ U2+".parse().unwrap());
        assert_eq!(v.verdict, SliceVerdict::NotSlice);
        assert_eq!(v.obstructions[0].value, "2");
        assert_eq!(slice_obstructions(&KnotCode::unknot()).verdict, SliceVerdict::Inconclusive);
        assert_eq!(slice_obstructions(&"O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap()).verdict, SliceVerdict::Inconclusive);
    }
}
