use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};



/// Laurent polynomial in `t` with integer coefficients. No zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::mono(c, 0)
    }

    /// `c * t^e`
    pub fn mono(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn t() -> Self {
        Self::mono(1, 1)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Ascending coefficients from exponent 0: `[a0, a1, ...]`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i32, c)))
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent range, 0 for monomials and for zero.
    pub fn span(&self) -> i32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Substitutes `t -> t^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `Some((±1, k))` if this is the unit `±t^k`.
    pub fn as_unit(&self) -> Option<(i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Representative of the orbit under `±t^k` with lowest exponent 0 and
    /// positive lowest-degree coefficient.
    pub fn normalize_units(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.terms[&0].is_negative() {
            -p
        } else {
            p
        }
    }

    /// True if `self = u * other` for a unit `u = ±t^k`.
    pub fn equal_up_to_units(&self, other: &Self) -> bool {
        self.normalize_units() == other.normalize_units()
    }

    /// Exact division; `None` if `d` does not divide `self` in `Z[t, t^-1]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lead = d.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(rhi) = rem.max_exp() {
            if rem.span() < dhi - dlo {
                return None;
            }
            let (c, r) = rem.terms[&rhi].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = rhi - dhi;
            let m = Self::mono(c, e);
            rem = &rem - &(&m * d);
            q = &q + &m;
        }
        Some(q)
    }

    /// Greatest common divisor in `Z[t, t^-1]`, unit normalized, integer content included.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_units();
        }
        if other.is_zero() {
            return self.normalize_units();
        }
        let a = to_dense(&self.normalize_units());
        let b = to_dense(&other.normalize_units());
        let content = dense_content(&a).gcd(&dense_content(&b));
        let g = dense_primitive_gcd(primitive(a), primitive(b));
        let p = from_dense(&g).scale(&content);
        p.normalize_units()
    }

    pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a LaurentPoly>) -> Self {
        let mut g = Self::zero();
        for p in polys {
            g = g.gcd(p);
            if g.as_unit().is_some() {
                break;
            }
        }
        g
    }
}

fn to_dense(p: &LaurentPoly) -> Vec<BigInt> {
    let hi = p.max_exp().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (hi + 1) as usize];
    for (e, c) in p.terms() {
        v[e as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (i as i32, c.clone())))
}

fn dense_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let c = dense_content(&v);
    if c.is_zero() {
        return v;
    }
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

fn is_zero_dense(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Pseudo-remainder of `a` by `b` (both nonzero, `deg a >= deg b`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !is_zero_dense(&r) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn dense_primitive_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !is_zero_dense(&b) {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    primitive(a)
}

impl super::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(s, e)| LaurentPoly::mono(s, -e))
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
    fn weight(&self) -> usize {
        self.terms.len()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Ascending-exponent text form, e.g. `-1+2*t^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = String;

    /// Parses the text form written by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for (sign, term) in split_signed_terms(&s)? {
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (c.parse::<BigInt>().map_err(|e| e.to_string())?, m),
                None if term.starts_with('t') => (BigInt::one(), term.as_str()),
                None => (term.parse::<BigInt>().map_err(|e| e.to_string())?, ""),
            };
            let e = parse_power(mono, 't')?;
            p.add_term(e, coef * sign);
        }
        Ok(p)
    }
}

/// Splits `-1+2*t^3-t^-2` into signed terms, keeping `^-` exponents intact.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i32, String)>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
            if cur.is_empty() {
                return Err(format!("malformed polynomial `{s}`"));
            }
            out.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '-' { -1 } else { 1 };
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(format!("malformed polynomial `{s}`"));
    }
    out.push((sign, cur));
    Ok(out)
}

pub(crate) fn parse_power(mono: &str, var: char) -> Result<i32, String> {
    if mono.is_empty() {
        return Ok(0);
    }
    let rest = mono.strip_prefix(var).ok_or_else(|| format!("unexpected monomial `{mono}`"))?;
    if rest.is_empty() {
        return Ok(1);
    }
    rest.strip_prefix('^')
        .ok_or_else(|| format!("unexpected monomial `{mono}`"))?
        .parse::<i32>()
        .map_err(|e| e.to_string())
}
