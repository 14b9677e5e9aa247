use std::fmt;

use super::{CoeffError, Field};

/// Laurent polynomial sum c[i] t^(off+i). Trimmed: the first and last
/// stored coefficients are nonzero; the zero polynomial stores nothing.
#[derive(Clone, PartialEq)]
pub struct Laurent<F: Field> {
    off: i64,
    c: Vec<F>,
}

impl<F: Field> Laurent<F> {
    pub fn zero() -> Self {
        Laurent { off: 0, c: Vec::new() }
    }

    pub fn new(off: i64, c: Vec<F>) -> Self {
        let mut p = Laurent { off, c };
        p.trim();
        p
    }

    pub fn constant(c: F) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(e: i64, c: F) -> Self {
        Self::new(e, vec![c])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = acc.add(&Self::monomial(e, c));
        }
        acc
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.vanishes()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.vanishes()).count();
        if lead == self.c.len() {
            self.c.clear();
            self.off = 0;
        } else if lead > 0 {
            self.c.drain(..lead);
            self.off += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.off)
    }

    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.off + self.c.len() as i64 - 1)
    }

    /// high - low; zero for constants. None for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.c.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Option<&F> {
        let i = e - self.off;
        if i < 0 {
            return None;
        }
        self.c.get(i as usize)
    }

    pub fn leading(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn trailing(&self) -> Option<&F> {
        self.c.first()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes())
            .map(move |(i, c)| (self.off + i as i64, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.off.min(o.off);
        let hi = self.high().unwrap().max(o.high().unwrap());
        let z = self.c[0].zero_like();
        let mut c = vec![z; (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            let k = (self.off - lo) as usize + i;
            c[k] = c[k].add(x);
        }
        for (i, x) in o.c.iter().enumerate() {
            let k = (o.off - lo) as usize + i;
            c[k] = c[k].add(x);
        }
        Self::new(lo, c)
    }

    pub fn neg(&self) -> Self {
        Laurent { off: self.off, c: self.c.iter().map(F::neg).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let z = self.c[0].zero_like();
        let mut c = vec![z; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.vanishes() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        Self::new(self.off + o.off, c)
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.off, self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { off: self.off + k, c: self.c.clone() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Laurent<G> {
        Laurent::new(self.off, self.c.iter().map(f).collect())
    }

    /// t -> t^-1 with coefficientwise conjugation.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.high().unwrap();
        let c = self.c.iter().rev().map(F::conj).collect();
        Laurent { off: -hi, c }
    }

    /// Division with remainder of the underlying ordinary polynomials
    /// (offsets are ignored: both sides are shifted to start at t^0).
    pub fn divrem_poly(&self, d: &Self) -> Result<(Self, Self), CoeffError> {
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let mut r = self.c.clone();
        let db = d.c.len() - 1;
        if r.len() < d.c.len() {
            return Ok((Self::zero(), Self::new(0, r)));
        }
        let lead_inv = d.c[db].inv()?;
        let z = d.c[0].zero_like();
        let mut q = vec![z; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].mul(&lead_inv);
            if !c.vanishes() {
                for j in 0..=db {
                    r[i + j] = r[i + j].sub(&c.mul(&d.c[j]));
                }
            }
            q[i] = c;
        }
        Ok((Self::new(0, q), Self::new(0, r)))
    }

    /// Exact quotient self / d in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self, CoeffError> {
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (q, r) = self.divrem_poly(d)?;
        if !r.is_zero() {
            return Err(CoeffError::InexactDivision);
        }
        Ok(q.shift(self.off - d.off))
    }

    /// Monic gcd of the underlying ordinary polynomials, at offset 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.shift(-self.off), o.shift(-o.off));
        while !b.is_zero() {
            let (_, r) = a.divrem_poly(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        match a.leading() {
            Some(l) => a.scale(&l.inv().expect("nonzero leading coefficient")),
            None => a,
        }
    }

    pub fn normalize_class(&self) -> Result<PolyClass<F>, CoeffError> {
        let (Some(lead), Some(shift)) = (self.leading(), self.low()) else {
            return Err(CoeffError::ZeroPolynomial);
        };
        let scalar = lead.clone();
        let rep = self.shift(-shift).scale(&scalar.inv()?);
        Ok(PolyClass { rep, shift, scalar })
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", e),
            };
            if e == 0 {
                write!(f, "{}", c.render())?;
            } else if c.is_unity() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", c.render(), var)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonzero Laurent polynomial modulo units a t^l: the representative
/// has lowest exponent 0 and leading coefficient 1, and
/// `original = scalar * t^shift * rep`.
#[derive(Clone, Debug)]
pub struct PolyClass<F: Field> {
    pub rep: Laurent<F>,
    pub shift: i64,
    pub scalar: F,
}

impl<F: Field> PolyClass<F> {
    pub fn class_equal(&self, other: &Self) -> bool {
        self.rep == other.rep
    }

    pub fn degree(&self) -> i64 {
        self.rep.span().unwrap_or(0)
    }
}

impl<F: Field> PartialEq for PolyClass<F> {
    fn eq(&self, other: &Self) -> bool {
        self.class_equal(other)
    }
}

impl<F: Field> fmt::Display for PolyClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rep, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rational};

    fn q(v: &[(i64, i64)]) -> Laurent<Rational> {
        Laurent::from_terms(v.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn printing_matches_documented_format() {
        let p = q(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(p.to_string(), "(-1)*t^-1 + 3 + (-1)*t");
        assert_eq!(Laurent::<Rational>::zero().to_string(), "0");
    }

    #[test]
    fn normalize_examples() {
        let c = q(&[(3, 2), (2, -2)]).normalize_class().unwrap();
        assert_eq!(c.rep, q(&[(0, -1), (1, 1)]));
        assert_eq!((c.shift, c.scalar.clone()), (2, rat(2)));

        let c = q(&[(0, 1)]).normalize_class().unwrap();
        assert_eq!(c.rep, q(&[(0, 1)]));
        assert_eq!((c.shift, c.scalar.clone()), (0, rat(1)));

        let c = q(&[(-1, -1), (0, 3), (1, -1)]).normalize_class().unwrap();
        assert_eq!(c.rep, q(&[(0, 1), (1, -3), (2, 1)]));
        assert_eq!((c.shift, c.scalar.clone()), (-1, rat(-1)));

        assert_eq!(
            Laurent::<Rational>::zero().normalize_class().unwrap_err(),
            CoeffError::ZeroPolynomial
        );
    }

    #[test]
    fn class_equal_examples() {
        let a = q(&[(3, 2), (2, -2)]).normalize_class().unwrap();
        let b = q(&[(0, 1), (1, -1)]).normalize_class().unwrap();
        let c = q(&[(0, 1), (1, 1)]).normalize_class().unwrap();
        assert!(a.class_equal(&b));
        assert!(!a.class_equal(&c));
        let d = q(&[(5, 7)]).normalize_class().unwrap();
        assert!(d.class_equal(&q(&[(0, 1)]).normalize_class().unwrap()));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(q(&[(1, 1)]).bar(), q(&[(-1, 1)]));
        let f = q(&[(2, 1), (1, -3), (0, 1)]);
        assert_eq!(f.bar(), q(&[(-2, 1), (-1, -3), (0, 1)]));
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = q(&[(0, -1), (1, 1)]);
        let b = q(&[(0, 1), (1, 1)]);
        let ab = a.mul(&b).shift(3);
        assert_eq!(ab.div_exact(&a).unwrap(), b.shift(3));
        assert_eq!(ab.gcd(&a.mul(&a)), a);
        assert_eq!(
            b.div_exact(&a).unwrap_err(),
            CoeffError::InexactDivision
        );
    }
}
