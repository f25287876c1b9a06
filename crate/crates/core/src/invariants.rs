//! Concordance invariants: odd writhe, writhe polynomial, the Alexander
//! polynomial of almost classical knots, and the two-variable generalized
//! Alexander polynomial.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{alexander_matrix, elementary_ideal_gcd, GroupWord, LaurentPoly, LaurentPoly2, Matrix, Presentation};
use crate::kernel::{KnotCode, LinkCode, Sign, Token};
use crate::surface::{index_table, is_almost_classical};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("no crossing with id {0}")]
    UnknownId(u32),
}

/// Sum of the signs of the chords with odd index.
pub fn odd_writhe(code: &KnotCode) -> i32 {
    let signs = code.passages();
    index_table(code).iter().filter(|&(_, i)| i % 2 != 0).map(|(c, _)| signs[&c].sign.to_i32()).sum()
}

/// `W(t) = Σ sign(c)·(t^index(c) − 1)`.
pub fn writhe_polynomial(code: &KnotCode) -> LaurentPoly {
    let signs = code.passages();
    let mut w = LaurentPoly::zero();
    for (c, i) in index_table(code).iter() {
        let s = signs[&c].sign.to_i32();
        w.add_term(i, s.into());
        w.add_term(0, (-s).into());
    }
    w
}

/// Wirtinger-style presentation: one generator per arc between consecutive
/// under passages (one per component without under passages), one
/// conjugation relator per crossing.
pub fn link_group(code: &LinkCode) -> Presentation {
    // arc of the edge leaving each token
    let mut arc_after: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut generators = 0;
    for (c, comp) in code.components().iter().enumerate() {
        let unders: Vec<usize> = (0..comp.len()).filter(|&i| !comp[i].is_over()).collect();
        if unders.is_empty() {
            for i in 0..comp.len() {
                arc_after.insert((c, i), generators);
            }
            generators += 1;
            continue;
        }
        let base = generators;
        let first = unders[0];
        let mut arc = base + unders.len() - 1;
        for k in 0..comp.len() {
            let i = (first + k) % comp.len();
            if !comp[i].is_over() {
                arc = base + unders.iter().position(|&u| u == i).unwrap();
            }
            arc_after.insert((c, i), arc);
        }
        generators += unders.len();
    }
    let prev = |p: (usize, usize)| {
        let len = code.component(p.0).len();
        (p.0, (p.1 + len - 1) % len)
    };
    let mut relators = Vec::new();
    for info in code.passages().values() {
        let over = arc_after[&info.over];
        let g_in = arc_after[&prev(info.under)];
        let g_out = arc_after[&info.under];
        let e = info.sign.to_i32();
        let word = GroupWord::power(over, e)
            .concat(&GroupWord::generator(g_in))
            .concat(&GroupWord::power(over, -e))
            .concat(&GroupWord::generator(g_out).inverse());
        relators.push(word);
    }
    Presentation::new(generators, relators).expect("arcs index generators")
}

pub fn knot_group(code: &KnotCode) -> Presentation {
    link_group(code.as_link())
}

/// Alexander polynomial from the first elementary ideal, with a flag saying
/// whether the diagram is almost classical (where that ideal is principal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcAlexander {
    pub poly: LaurentPoly,
    pub principal: bool,
}

/// Unit-normalized gcd of the first elementary ideal of the link group.
pub fn link_alexander(code: &LinkCode) -> LaurentPoly {
    let m = alexander_matrix(&link_group(code));
    elementary_ideal_gcd(&m, 1).expect("presentation has a generator").normalize_units()
}

pub fn ac_alexander(code: &KnotCode) -> AcAlexander {
    AcAlexander { poly: link_alexander(code.as_link()), principal: is_almost_classical(code) }
}

/// Relation matrix of the Alexander biquandle: variables are the edges
/// leaving each token; a crossing of sign `ε` with incoming over edge `b`
/// and incoming under edge `a` gives `b' = s^ε b` and
/// `a' = t^ε a + (1 − s^ε t^ε) b`.
pub fn generalized_alexander_matrix(code: &LinkCode) -> Matrix<LaurentPoly2> {
    let flat: BTreeMap<(usize, usize), usize> = code.tokens().enumerate().map(|(k, (p, _))| (p, k)).collect();
    let n_edges = flat.len() + code.components().iter().filter(|c| c.is_empty()).count();
    let prev = |p: (usize, usize)| {
        let len = code.component(p.0).len();
        flat[&(p.0, (p.1 + len - 1) % len)]
    };
    let passages = code.passages();
    let mut m = Matrix::zeros(2 * passages.len(), n_edges);
    let add = |m: &mut Matrix<LaurentPoly2>, i: usize, j: usize, v: LaurentPoly2| {
        let cur = m.get(i, j).clone();
        m.set(i, j, &cur + &v);
    };
    for (r, info) in passages.values().enumerate() {
        let e = info.sign.to_i32();
        let (b_in, b_out) = (prev(info.over), flat[&info.over]);
        let (a_in, a_out) = (prev(info.under), flat[&info.under]);
        let one = LaurentPoly2::one();
        add(&mut m, 2 * r, b_out, one.clone());
        add(&mut m, 2 * r, b_in, LaurentPoly2::mono(-1, e, 0));
        add(&mut m, 2 * r + 1, a_out, one.clone());
        add(&mut m, 2 * r + 1, a_in, LaurentPoly2::mono(-1, 0, e));
        add(&mut m, 2 * r + 1, b_in, &LaurentPoly2::mono(-1, 0, 0) + &LaurentPoly2::mono(1, e, e));
    }
    m
}

/// Determinant of the biquandle relation matrix, up to `±s^i t^j`; zero
/// when the matrix is not square (crossing-free components).
pub fn generalized_alexander_link(code: &LinkCode) -> LaurentPoly2 {
    let m = generalized_alexander_matrix(code);
    if m.rows() != m.cols() {
        return LaurentPoly2::zero();
    }
    m.determinant().expect("square").normalize_units()
}

pub fn generalized_alexander(code: &KnotCode) -> LaurentPoly2 {
    generalized_alexander_link(code.as_link())
}

/// Forces crossing `id` to sign `sign`, switching over and under if needed.
fn with_sign(code: &LinkCode, id: u32, sign: Sign) -> LinkCode {
    let comps = code
        .components()
        .iter()
        .map(|c| {
            c.iter()
                .map(|t| {
                    if t.id != id || t.sign == sign {
                        *t
                    } else {
                        Token::new(id, t.passage.flip(), sign)
                    }
                })
                .collect()
        })
        .collect();
    LinkCode::new(comps).expect("switching a crossing keeps the pairing")
}

/// Oriented smoothing of crossing `id`.
fn smoothing(code: &LinkCode, id: u32) -> LinkCode {
    let info = code.passages()[&id];
    let (p, q) = (info.over, info.under);
    let mut comps: Vec<Vec<Token>> = Vec::new();
    if p.0 == q.0 {
        let c = code.component(p.0);
        let (lo, hi) = (p.1.min(q.1), p.1.max(q.1));
        let inner: Vec<Token> = c[lo + 1..hi].to_vec();
        let outer: Vec<Token> = c[hi + 1..].iter().chain(&c[..lo]).copied().collect();
        for (k, comp) in code.components().iter().enumerate() {
            if k == p.0 {
                comps.push(inner.clone());
                comps.push(outer.clone());
            } else {
                comps.push(comp.clone());
            }
        }
    } else {
        let a = code.component(p.0);
        let b = code.component(q.0);
        let merged: Vec<Token> =
            a[p.1 + 1..].iter().chain(&a[..p.1]).chain(&b[q.1 + 1..]).chain(&b[..q.1]).copied().collect();
        for (k, comp) in code.components().iter().enumerate() {
            if k == p.0.min(q.0) {
                comps.push(merged.clone());
            } else if k != p.0.max(q.0) {
                comps.push(comp.clone());
            }
        }
    }
    LinkCode::new(comps).expect("smoothing keeps the pairing")
}

/// `(L+, L−, L0)` at crossing `id` of a link.
pub fn skein_triple_link(code: &LinkCode, id: u32) -> Result<(LinkCode, LinkCode, LinkCode), InvariantError> {
    if code.sign_of(id).is_none() {
        return Err(InvariantError::UnknownId(id));
    }
    Ok((with_sign(code, id, Sign::Pos), with_sign(code, id, Sign::Neg), smoothing(code, id)))
}

pub fn skein_triple(code: &KnotCode, id: u32) -> Result<(KnotCode, KnotCode, LinkCode), InvariantError> {
    let (p, m, z) = skein_triple_link(code.as_link(), id)?;
    Ok((p.to_knot().expect("one component"), m.to_knot().expect("one component"), z))
}

/// Checks `u·Δ₊ − v·Δ₋ = (t − t⁻¹)·w·Δ₀` for some units `u, v, w`, with
/// each Δ taken in the Conway variable (`t ↦ t²` applied to the
/// unit-normalized Fox-calculus output). Returns the exponents and signs
/// found, with `u = 1`.
pub fn skein_units(plus: &LaurentPoly, minus: &LaurentPoly, zero: &LaurentPoly) -> Option<((i32, i32), (i32, i32))> {
    let (p, m, z) = (plus.substitute_power(2), minus.substitute_power(2), zero.substitute_power(2));
    let rhs_base = &LaurentPoly::from_terms([(1, 1), (-1, -1)]) * &z;
    let bound = p.span() + m.span() + rhs_base.span() + 4;
    for v_sign in [1, -1] {
        for v_exp in -bound..=bound {
            let lhs = &p - &m.shift(v_exp).scale(&v_sign.into());
            if lhs.is_zero() && z.is_zero() {
                return Some(((v_sign, v_exp), (1, 0)));
            }
            if lhs.is_zero() || z.is_zero() {
                continue;
            }
            for w_sign in [1, -1] {
                let shift = lhs.min_exp().unwrap() - rhs_base.min_exp().unwrap();
                if rhs_base.shift(shift).scale(&w_sign.into()) == lhs {
                    return Some(((v_sign, v_exp), (w_sign, shift)));
                }
            }
        }
    }
    None
}
