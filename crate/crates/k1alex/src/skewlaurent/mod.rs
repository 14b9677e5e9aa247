//! Skew Laurent polynomials over Q[H] with tau a = kappa(a) tau, matrices
//! over them, and truncated Novikov-series inversion.

mod novikov;

use std::fmt;

use thiserror::Error;

use crate::groupring::{Automorphism, FiniteAbelian, GroupElem, GroupRingElem};

pub use novikov::{
    default_truncation, geometric_inverse, DEFAULT_TRUNCATION, novikov_invertible, novikov_invertible_with, NovikovSeries, NovikovVerdict,
    PivotOrder,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("lowest coefficient {0} is not a unit of Q[H]")]
    NonUnitLowestCoefficient(String),
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("truncation {0} too small; retry with at least {1}")]
    TruncationTooSmall(usize, usize),
}

/// The coefficient ring Q[H] together with the twist kappa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRing {
    pub h: FiniteAbelian,
    pub kappa: Automorphism,
}

impl SkewRing {
    pub fn new(h: FiniteAbelian, kappa: Automorphism) -> Self {
        SkewRing { h, kappa }
    }

    /// Trivial H, identity twist: the commutative ring Q[tau^(+-1)].
    pub fn classical() -> Self {
        let h = FiniteAbelian::trivial();
        let kappa = Automorphism::identity(&h);
        SkewRing { h, kappa }
    }

    pub fn kappa_order(&self) -> u32 {
        self.kappa.order()
    }

    pub fn twist(&self, a: &GroupRingElem, k: i64) -> GroupRingElem {
        a.apply_kappa_pow(&self.h, &self.kappa, k)
    }

    /// (a tau^i)(b tau^j) = a kappa^i(b) tau^(i+j).
    pub fn mul_coeff(&self, a: &GroupRingElem, i: i64, b: &GroupRingElem) -> GroupRingElem {
        a.mul(&self.twist(b, i), &self.h)
    }

    pub fn one(&self) -> GroupRingElem {
        GroupRingElem::one(&self.h)
    }

    /// `out[r][j] = kappa^r(c[j])` for r below the order of kappa, so that
    /// products twist each coefficient once rather than once per term.
    pub(crate) fn twists(&self, c: &[GroupRingElem]) -> Vec<Vec<GroupRingElem>> {
        let ord = self.kappa_order().max(1) as i64;
        (0..ord).map(|r| c.iter().map(|a| self.twist(a, r)).collect()).collect()
    }
}

/// Sum of a_i tau^i, dense from `off`; first and last coefficients nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    off: i64,
    c: Vec<GroupRingElem>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { off: 0, c: Vec::new() }
    }

    pub fn new(off: i64, c: Vec<GroupRingElem>) -> Self {
        let mut p = SkewPoly { off, c };
        p.trim();
        p
    }

    pub fn constant(a: GroupRingElem) -> Self {
        Self::new(0, vec![a])
    }

    pub fn monomial(a: GroupRingElem, e: i64) -> Self {
        Self::new(e, vec![a])
    }

    pub fn one(ring: &SkewRing) -> Self {
        Self::constant(ring.one())
    }

    pub fn tau(ring: &SkewRing, e: i64) -> Self {
        Self::monomial(ring.one(), e)
    }

    /// The group element (g, e) of H x| Z.
    pub fn group_elem(g: GroupElem, e: i64) -> Self {
        Self::monomial(GroupRingElem::group_elem(g), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GroupRingElem)>) -> Self {
        let terms: Vec<(i64, GroupRingElem)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![GroupRingElem::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            let slot = &mut c[(e - lo) as usize];
            *slot = slot.add(&a);
        }
        Self::new(lo, c)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|a| a.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.off += lead as i64;
        }
        if self.c.is_empty() {
            self.off = 0;
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

    pub fn coeff(&self, e: i64) -> GroupRingElem {
        let i = e - self.off;
        if i < 0 || i >= self.c.len() as i64 {
            GroupRingElem::zero()
        } else {
            self.c[i as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&GroupRingElem> {
        self.c.first()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GroupRingElem)> {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(i, a)| (self.off + i as i64, a))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.terms().chain(o.terms()).map(|(e, a)| (e, a.clone())))
    }

    pub fn neg(&self) -> Self {
        SkewPoly { off: self.off, c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self, ring: &SkewRing) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GroupRingElem::zero(); self.c.len() + o.c.len() - 1];
        let tw = ring.twists(&o.c);
        let ord = tw.len() as i64;
        for (i, a) in self.terms() {
            let row = &tw[i.rem_euclid(ord) as usize];
            let di = (i - self.off) as usize;
            for (dj, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    c[di + dj].add_product(a, b, &ring.h);
                }
            }
        }
        Self::new(self.off + o.off, c)
    }

    /// Left multiplication by a scalar of Q[H].
    pub fn scale_left(&self, a: &GroupRingElem, ring: &SkewRing) -> Self {
        Self::new(self.off, self.c.iter().map(|b| a.mul(b, &ring.h)).collect())
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(e, a)| match e {
                0 => format!("({})", a.render()),
                _ => format!("({})*tau^{e}", a.render()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Rectangular matrix of skew polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    rows: usize,
    cols: usize,
    e: Vec<SkewPoly>,
}

impl SkewMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SkewMatrix { rows, cols, e: vec![SkewPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize, ring: &SkewRing) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, SkewPoly::one(ring));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<SkewPoly>>, cols: usize) -> Result<Self, SkewError> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(SkewError::Dimension(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        Ok(SkewMatrix { rows: rows.len(), cols, e: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SkewPoly {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SkewPoly) {
        self.e[i * self.cols + j] = p;
    }

    pub fn remove_column(&self, k: usize) -> Result<Self, SkewError> {
        if k >= self.cols {
            return Err(SkewError::Dimension(format!("column {k} of {}", self.cols)));
        }
        let e = (0..self.rows)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != k).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(SkewMatrix { rows: self.rows, cols: self.cols - 1, e })
    }

    pub fn column(&self, k: usize) -> Vec<SkewPoly> {
        (0..self.rows).map(|i| self.get(i, k).clone()).collect()
    }

    pub fn mul(&self, o: &Self, ring: &SkewRing) -> Result<Self, SkewError> {
        if self.cols != o.rows {
            return Err(SkewError::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = SkewPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j), ring));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SkewMatrix { rows: self.rows, cols: self.cols, e: self.e.iter().map(SkewPoly::neg).collect() }
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect()).collect()
    }
}
