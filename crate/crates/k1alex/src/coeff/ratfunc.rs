use std::fmt;

use super::{CoeffError, Field, Laurent};

/// Quotient num/den of Laurent polynomials. Normalized: den has offset 0
/// and leading coefficient 1, and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    num: Laurent<F>,
    den: Laurent<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Laurent<F>, den: Laurent<F>) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            let one = den.leading().unwrap().one_like();
            return Ok(RatFunc { num, den: Laurent::constant(one) });
        }
        let shift = num.low().unwrap() - den.low().unwrap();
        let (n0, d0) = (num.shift(-num.low().unwrap()), den.shift(-den.low().unwrap()));
        let g = n0.gcd(&d0);
        let n1 = n0.div_exact(&g)?;
        let d1 = d0.div_exact(&g)?;
        let l = d1.leading().unwrap().inv()?;
        Ok(RatFunc { num: n1.scale(&l).shift(shift), den: d1.scale(&l) })
    }

    pub fn from_poly(p: Laurent<F>, one: F) -> Self {
        RatFunc { num: p, den: Laurent::constant(one) }
    }

    pub fn num(&self) -> &Laurent<F> {
        &self.num
    }

    pub fn den(&self) -> &Laurent<F> {
        &self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(n, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// t -> t^-1 and zeta -> zeta^-1.
    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("bar keeps the denominator nonzero")
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.span() == Some(0) && self.den.leading().is_some_and(|c| c.is_unity()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
