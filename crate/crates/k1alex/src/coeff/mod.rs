//! Exact scalars: rationals, cyclotomic fields, Laurent polynomials and
//! rational functions over them.

mod cyclotomic;
mod laurent;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_poly, euler_phi, Cyclotomic};
pub use laurent::{Laurent, PolyClass};
pub use ratfunc::RatFunc;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no normalized class")]
    ZeroPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
}

/// A commutative field of characteristic zero whose values carry enough
/// context (e.g. the conductor) to build their own zero and one.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, CoeffError>;
    /// Complex conjugation, i.e. zeta -> zeta^-1. Identity on Q.
    fn conj(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    /// Text form used as a polynomial coefficient; negative values come
    /// parenthesized.
    fn render(&self) -> String;
    fn is_unity(&self) -> bool {
        self == &self.one_like()
    }
    fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        if Zero::is_zero(self) {
            Err(CoeffError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn render(&self) -> String {
        if self.is_negative() {
            format!("({})", self)
        } else {
            self.to_string()
        }
    }
}
