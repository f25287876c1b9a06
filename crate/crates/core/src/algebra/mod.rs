//! Exact polynomial arithmetic, matrices over polynomial rings, Fox calculus.

mod fox;
mod laurent;
mod laurent2;
mod matrix;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use fox::{alexander_matrix, fox_derivative, GroupRingElement, GroupWord, Presentation};
pub use laurent::LaurentPoly;
pub use laurent2::LaurentPoly2;
pub use matrix::{elementary_ideal_gcd, elementary_ideal_gcd_deleting, Matrix, SizeError};

/// Commutative ring operations needed by the matrix routines.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    /// `self / d` when the division is exact.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// Rough size, used to choose cheap pivots.
    fn weight(&self) -> usize;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn weight(&self) -> usize {
        self.bits() as usize
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

/// Free-standing form of [`LaurentPoly::normalize_units`].
pub fn normalize_units(p: &LaurentPoly) -> LaurentPoly {
    p.normalize_units()
}
