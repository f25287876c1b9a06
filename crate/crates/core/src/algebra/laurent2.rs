use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{parse_power, split_signed_terms};


/// Laurent polynomial in `s` and `t`; keys are `(exp_s, exp_t)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(1, 0, 0)
    }

    /// `c * s^i * t^j`
    pub fn mono(c: impl Into<BigInt>, i: i32, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    pub fn add_term(&mut self, k: (i32, i32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, di: i32, dj: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect() }
    }

    fn ranges(&self) -> Option<((i32, i32), (i32, i32))> {
        if self.is_zero() {
            return None;
        }
        let s_lo = self.terms.keys().map(|k| k.0).min().unwrap();
        let s_hi = self.terms.keys().map(|k| k.0).max().unwrap();
        let t_lo = self.terms.keys().map(|k| k.1).min().unwrap();
        let t_hi = self.terms.keys().map(|k| k.1).max().unwrap();
        Some(((s_lo, s_hi), (t_lo, t_hi)))
    }

    pub fn as_unit(&self) -> Option<(i32, (i32, i32))> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *k))
        } else if (-c).is_one() {
            Some((-1, *k))
        } else {
            None
        }
    }

    /// Representative of the orbit under `±s^i t^j`: lowest exponents 0 in
    /// each variable, positive coefficient on the lexicographically least term.
    pub fn normalize_units(&self) -> Self {
        let Some(((s_lo, _), (t_lo, _))) = self.ranges() else {
            return Self::zero();
        };
        let p = self.shift(-s_lo, -t_lo);
        if p.terms.values().next().unwrap().is_negative() {
            -p
        } else {
            p
        }
    }

    pub fn equal_up_to_units(&self, other: &Self) -> bool {
        self.normalize_units() == other.normalize_units()
    }

    /// Substitutes `s = 1`.
    pub fn at_s_one(&self) -> super::LaurentPoly {
        super::LaurentPoly::from_terms(self.terms.iter().map(|(&(_, j), c)| (j, c.clone())))
    }

    /// Evaluates at integer points, returning an exact rational as (num, den).
    pub fn eval(&self, s: i64, t: i64) -> (BigInt, BigInt) {
        let ((s_lo, _), (t_lo, _)) = match self.ranges() {
            Some(r) => r,
            None => return (BigInt::zero(), BigInt::one()),
        };
        let (sa, ta) = (s_lo.min(0).unsigned_abs(), t_lo.min(0).unsigned_abs());
        let mut num = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            let i = (i + sa as i32) as u32;
            let j = (j + ta as i32) as u32;
            num += c * BigInt::from(s).pow(i) * BigInt::from(t).pow(j);
        }
        let den = BigInt::from(s).pow(sa) * BigInt::from(t).pow(ta);
        (num, den)
    }

    /// Exact division in `Z[s^±, t^±]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let ((ds_lo, ds_hi), (dt_lo, dt_hi)) = d.ranges()?;
        let Some(((as_lo, as_hi), (at_lo, at_hi))) = self.ranges() else {
            return Some(Self::zero());
        };
        // every quotient monomial lies in this box
        let (qs_lo, qs_hi) = (as_lo - ds_lo, as_hi - ds_hi);
        let (qt_lo, qt_hi) = (at_lo - dt_lo, at_hi - dt_hi);
        if qs_lo > qs_hi || qt_lo > qt_hi {
            return None;
        }
        let (&dk, dc) = d.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((&rk, rc)) = rem.terms.iter().next_back() {
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let k = (rk.0 - dk.0, rk.1 - dk.1);
            if k.0 < qs_lo || k.0 > qs_hi || k.1 < qt_lo || k.1 > qt_hi {
                return None;
            }
            let m = Self::mono(c, k.0, k.1);
            rem = &rem - &(&m * d);
            q = &q + &m;
        }
        Some(q)
    }
}

impl super::Ring for LaurentPoly2 {
    fn zero() -> Self {
        LaurentPoly2::zero()
    }
    fn one() -> Self {
        LaurentPoly2::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(s, (i, j))| LaurentPoly2::mono(s, -i, -j))
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

impl<'a> Add<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (k1, c1) in self.terms.iter() {
            for (k2, c2) in rhs.terms.iter() {
                out.add_term((k1.0 + k2.0, k1.1 + k2.1), c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if n > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            for (var, e) in [('s', i), ('t', j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    e => parts.push(format!("{var}^{e}")),
                }
            }
            if parts.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&parts.join("*"))?;
            } else {
                write!(f, "{abs}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

impl std::str::FromStr for LaurentPoly2 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for (sign, term) in split_signed_terms(&s)? {
            let mut coef = BigInt::one();
            let (mut i, mut j) = (0, 0);
            for factor in term.split('*') {
                if factor.starts_with('s') {
                    i += parse_power(factor, 's')?;
                } else if factor.starts_with('t') {
                    j += parse_power(factor, 't')?;
                } else {
                    coef *= factor.parse::<BigInt>().map_err(|e| e.to_string())?;
                }
            }
            p.add_term((i, j), coef * sign);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = LaurentPoly2::from_terms([((0, 0), 1), ((1, -1), -2), ((2, 3), 1)]);
        assert_eq!(p.to_string(), "1-2*s*t^-1+s^2*t^3");
        assert_eq!(p.to_string().parse::<LaurentPoly2>().unwrap(), p);
    }

    #[test]
    fn division_round_trip() {
        let a = LaurentPoly2::from_terms([((0, 0), 1), ((1, 1), -1), ((0, 1), 3)]);
        let b = LaurentPoly2::from_terms([((-1, 0), 2), ((1, 2), 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let c = LaurentPoly2::from_terms([((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(LaurentPoly2::one().div_exact(&c), None);
    }

    #[test]
    fn normalize() {
        let a = LaurentPoly2::from_terms([((-2, 1), -1), ((0, 3), 4)]);
        let n = a.normalize_units();
        assert_eq!(n, LaurentPoly2::from_terms([((0, 0), 1), ((2, 2), -4)]));
        assert_eq!(a.shift(5, -7).normalize_units(), n);
    }
}
