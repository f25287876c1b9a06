use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{LaurentPoly, Matrix, Ring};

/// Freely reduced word in generators `g_0, g_1, ...`; letters are
/// `(generator, ±1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord(Vec<(usize, i8)>);

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        Self(vec![(g, 1)])
    }

    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut w = Self::identity();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "exponent must be ±1");
            w.push(g, e);
        }
        w
    }

    /// `g^e` for any integer `e`.
    pub fn power(g: usize, e: i32) -> Self {
        let l = if e >= 0 { 1 } else { -1 };
        Self::new(std::iter::repeat_n((g, l), e.unsigned_abs() as usize))
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.0.last() == Some(&(g, -e)) {
            self.0.pop();
        } else {
            self.0.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Total exponent: the image under every generator `↦ t`.
    pub fn exponent_sum(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e as i32).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e > 0 { format!("g{}", g + 1) } else { format!("g{}^-1", g + 1) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

/// Element of the integral group ring of the free group.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct GroupRingElement(BTreeMap<GroupWord, BigInt>);

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(w: GroupWord, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c.into());
        x
    }

    pub fn add_term(&mut self, w: GroupWord, c: BigInt) {
        let e = self.0.entry(w.clone()).or_default();
        *e += c;
        if *e == BigInt::from(0) {
            self.0.remove(&w);
        }
    }

    pub fn coeff(&self, w: &GroupWord) -> BigInt {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &BigInt)> {
        self.0.iter()
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (w, c) in &o.0 {
            x.add_term(w.clone(), c.clone());
        }
        x
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, u: &GroupWord) -> Self {
        let mut x = Self::zero();
        for (w, c) in &self.0 {
            x.add_term(u.concat(w), c.clone());
        }
        x
    }

    /// Image under every generator `↦ t`.
    pub fn abelianize(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().map(|(w, c)| (w.exponent_sum(), c.clone())))
    }
}

/// Fox derivative `∂w/∂g_k`.
pub fn fox_derivative(w: &GroupWord, k: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = GroupWord::identity();
    for &(g, e) in w.letters() {
        if g == k {
            if e > 0 {
                out.add_term(prefix.clone(), 1.into());
            } else {
                out.add_term(prefix.concat(&GroupWord::new([(g, -1)])), (-1).into());
            }
        }
        prefix.push(g, e);
    }
    out
}

/// `∂w/∂g_k` with every generator sent to `t`, computed without the
/// intermediate group-ring element.
fn abelian_derivative(w: &GroupWord, k: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut exp = 0;
    for &(g, e) in w.letters() {
        if g == k {
            if e > 0 {
                out.add_term(exp, 1.into());
            } else {
                out.add_term(exp - 1, (-1).into());
            }
        }
        exp += e as i32;
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: usize,
    relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<GroupWord>) -> Result<Self, String> {
        for r in &relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= generators) {
                return Err(format!("relator {r} uses generator g{} of {generators}", g + 1));
            }
        }
        Ok(Self { generators, relators })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|g| format!("g{g}")).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

/// Abelianized Jacobian; rows are relators (zero-padded to the generator
/// count), columns generators.
pub fn alexander_matrix(p: &Presentation) -> Matrix<LaurentPoly> {
    let rows = p.relators.len().max(p.generators);
    let mut m = Matrix::zeros(rows, p.generators);
    for (i, r) in p.relators.iter().enumerate() {
        for k in 0..p.generators {
            let d = abelian_derivative(r, k);
            if !Ring::is_zero(&d) {
                m.set(i, k, d);
            }
        }
    }
    m
}
