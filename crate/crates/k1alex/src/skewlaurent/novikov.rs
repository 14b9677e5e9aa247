//! Truncated series in A((tau)) with absolute precision tracking, and
//! Gauss–Jordan inversion over them.

use std::fmt;

use super::{SkewError, SkewMatrix, SkewPoly, SkewRing};
use crate::groupring::GroupRingElem;

/// Precision used for exact (polynomial) inputs.
const EXACT: i64 = i64::MAX / 8;

pub const DEFAULT_TRUNCATION: usize = 32;

/// Truncation order: `K1ALEX_TRUNC` if set to an integer >= 4, else 32.
pub fn default_truncation() -> usize {
    std::env::var("K1ALEX_TRUNC")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 4)
        .unwrap_or(DEFAULT_TRUNCATION)
}

/// Sum of a_i tau^i known for i < prec. `c` starts at the valuation and
/// carries no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    off: i64,
    c: Vec<GroupRingElem>,
    prec: i64,
}

impl NovikovSeries {
    pub fn zero(prec: i64) -> Self {
        NovikovSeries { off: prec.min(0), c: Vec::new(), prec }
    }

    pub fn from_poly(p: &SkewPoly, prec: i64) -> Self {
        Self::from_terms(p.terms().map(|(e, a)| (e, a.clone())), prec)
    }

    pub fn exact(p: &SkewPoly) -> Self {
        Self::from_poly(p, EXACT)
    }

    fn from_terms(terms: impl IntoIterator<Item = (i64, GroupRingElem)>, prec: i64) -> Self {
        let p = SkewPoly::from_terms(terms.into_iter().filter(|(e, _)| *e < prec));
        match p.low() {
            None => Self::zero(prec),
            Some(lo) => NovikovSeries { off: lo, c: (lo..=p.high().unwrap()).map(|e| p.coeff(e)).collect(), prec },
        }
    }

    /// Dense coefficients from `off`, already below `prec`.
    fn from_dense(off: i64, mut c: Vec<GroupRingElem>, prec: i64) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        let lead = c.iter().take_while(|a| a.is_zero()).count();
        if lead == c.len() {
            return Self::zero(prec);
        }
        c.drain(..lead);
        NovikovSeries { off: off + lead as i64, c, prec }
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT / 2
    }

    /// Exponents at or above this are unknown.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.off)
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

    fn terms(&self) -> impl Iterator<Item = (i64, &GroupRingElem)> {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(i, a)| (self.off + i as i64, a))
    }

    /// Known part as a polynomial.
    pub fn truncation(&self) -> SkewPoly {
        SkewPoly::from_terms(self.terms().map(|(e, a)| (e, a.clone())))
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        Self::from_terms(self.terms().chain(o.terms()).map(|(e, a)| (e, a.clone())), prec)
    }

    pub fn neg(&self) -> Self {
        NovikovSeries { off: self.off, c: self.c.iter().map(|a| a.neg()).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self, ring: &SkewRing) -> Self {
        let va = self.valuation().unwrap_or(self.prec);
        let vb = o.valuation().unwrap_or(o.prec);
        let prec = (self.prec.saturating_add(vb)).min(o.prec.saturating_add(va)).min(EXACT);
        if self.c.is_empty() || o.c.is_empty() || self.off + o.off >= prec {
            return Self::zero(prec);
        }
        let off = self.off + o.off;
        let len = ((self.c.len() + o.c.len() - 1) as i64).min(prec - off) as usize;
        let mut c = vec![GroupRingElem::zero(); len];
        let tw = ring.twists(&o.c[..o.c.len().min(len)]);
        let ord = tw.len() as i64;
        for (di, a) in self.c.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            let row = &tw[(self.off + di as i64).rem_euclid(ord) as usize];
            for (dj, b) in row.iter().enumerate().take(len - di) {
                if !b.is_zero() {
                    c[di + dj].add_product(a, b, &ring.h);
                }
            }
        }
        Self::from_dense(off, c, prec)
    }

    /// Two-sided inverse with at most `terms` known coefficients; the
    /// lowest coefficient must be a unit of Q[H].
    pub fn inverse(&self, ring: &SkewRing, terms: usize) -> Result<Self, SkewError> {
        let v = self.valuation().ok_or(SkewError::ZeroSeries)?;
        let a0 = &self.c[0];
        let a0inv = a0.inverse(&ring.h).ok_or_else(|| SkewError::NonUnitLowestCoefficient(a0.render()))?;
        let rel = (self.prec - v).min(terms as i64).max(0) as usize;
        // x_{s-v} = kappa^-v(a0^-1 * -(sum_{i=v+1}^{s+v} u_i kappa^i(x_{s-i})))
        let mut x: Vec<GroupRingElem> = Vec::with_capacity(rel);
        for s in 0..rel as i64 {
            let rhs = if s == 0 {
                ring.one()
            } else {
                let mut acc = GroupRingElem::zero();
                for i in v + 1..=s + v {
                    let ui = self.coeff(i);
                    if !ui.is_zero() {
                        acc = acc.add(&ring.mul_coeff(&ui, i, &x[(s - i + v) as usize]));
                    }
                }
                acc.neg()
            };
            x.push(ring.twist(&a0inv.mul(&rhs, &ring.h), -v));
        }
        Ok(Self::from_terms(x.into_iter().enumerate().map(|(s, a)| (s as i64 - v, a)), rel as i64 - v))
    }

    /// True when the series agrees with `target` on every exponent < n,
    /// which requires precision at least n.
    pub fn agrees_to(&self, target: &SkewPoly, n: i64) -> bool {
        if self.prec < n {
            return false;
        }
        let lo = self.off.min(target.low().unwrap_or(0));
        (lo..n).all(|e| self.coeff(e) == target.coeff(e))
    }

    pub fn render(&self) -> String {
        let known = self.truncation().render();
        if self.is_exact() {
            known
        } else {
            format!("{known} + O(tau^{})", self.prec)
        }
    }
}

impl fmt::Debug for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Inverse of a polynomial with unit lowest coefficient; u * result = 1
/// up to tau^n on both sides.
pub fn geometric_inverse(u: &SkewPoly, n: usize, ring: &SkewRing) -> Result<NovikovSeries, SkewError> {
    NovikovSeries::exact(u).inverse(ring, n)
}

#[derive(Clone, Debug)]
pub enum NovikovVerdict {
    /// Two-sided inverse, verified up to tau^order.
    Invertible { inverse: Vec<Vec<NovikovSeries>>, order: usize },
    /// Some character image has zero determinant.
    NotInvertibleCertificate { singular_characters: Vec<String> },
    Inconclusive { reason: String },
}

impl NovikovVerdict {
    pub fn is_invertible(&self) -> bool {
        matches!(self, NovikovVerdict::Invertible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            NovikovVerdict::Invertible { .. } => "invertible",
            NovikovVerdict::NotInvertibleCertificate { .. } => "not-invertible",
            NovikovVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Preference among rows whose pivot candidates tie on valuation.
#[derive(Clone, Debug, Default)]
pub enum PivotOrder {
    #[default]
    First,
    /// Rows listed earlier win ties.
    Ranked(Vec<usize>),
}

impl PivotOrder {
    fn rank(&self, row: usize) -> usize {
        match self {
            PivotOrder::First => row,
            PivotOrder::Ranked(v) => v.iter().position(|&r| r == row).unwrap_or(row),
        }
    }
}

/// Invertibility over A((tau)) with the default pivot order.
pub fn novikov_invertible(m: &SkewMatrix, n: usize, ring: &SkewRing) -> Result<NovikovVerdict, SkewError> {
    novikov_invertible_with(m, n, ring, &PivotOrder::First)
}

/// Working precision doublings before giving up on verification.
const PRECISION_ROUNDS: u32 = 4;

/// Gauss-Jordan over truncated series. The working precision starts at
/// n + size (spread + 1) and doubles whenever the computed inverse fails
/// to verify to order n on both sides.
pub fn novikov_invertible_with(
    m: &SkewMatrix,
    n: usize,
    ring: &SkewRing,
    order: &PivotOrder,
) -> Result<NovikovVerdict, SkewError> {
    if !m.is_square() {
        return Err(SkewError::NotSquare(m.rows(), m.cols()));
    }
    if n < 4 {
        return Err(SkewError::TruncationTooSmall(n, 4));
    }
    let size = m.rows();
    if size == 0 {
        return Ok(NovikovVerdict::Invertible { inverse: vec![], order: n });
    }
    let spread: i64 = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter_map(|(i, j)| Some(m.get(i, j).high()? - m.get(i, j).low()?))
        .max()
        .unwrap_or(0);
    let mut work = n + size * (spread as usize + 1);
    for _ in 0..PRECISION_ROUNDS {
        match eliminate(m, work, ring, order)? {
            Err(col) => return Ok(stuck(m, ring, col)),
            Ok(inverse) if verified(m, &inverse, n as i64, ring) => {
                return Ok(NovikovVerdict::Invertible { inverse, order: n })
            }
            Ok(_) => work *= 2,
        }
    }
    Ok(NovikovVerdict::Inconclusive { reason: format!("inverse not verified to order {n} at working precision {}", work / 2) })
}

/// The inverse at working precision `work`, or the first column without
/// a unit pivot.
fn eliminate(
    m: &SkewMatrix,
    work: usize,
    ring: &SkewRing,
    order: &PivotOrder,
) -> Result<Result<Vec<Vec<NovikovSeries>>, usize>, SkewError> {
    let size = m.rows();
    let one = NovikovSeries::exact(&SkewPoly::one(ring));
    let zero = NovikovSeries::exact(&SkewPoly::zero());
    // augmented [M | I]
    let mut a: Vec<Vec<NovikovSeries>> = (0..size)
        .map(|i| {
            (0..2 * size)
                .map(|j| match j {
                    j if j < size => NovikovSeries::exact(m.get(i, j)),
                    j if j - size == i => one.clone(),
                    _ => zero.clone(),
                })
                .collect()
        })
        .collect();
    let mut pivot_row = vec![usize::MAX; size];
    let mut used = vec![false; size];
    for col in 0..size {
        let pick = (0..size)
            .filter(|&r| !used[r])
            .filter_map(|r| {
                let v = a[r][col].valuation()?;
                a[r][col].lowest_coeff()?.is_unit(&ring.h).then_some((v, order.rank(r), r))
            })
            .min();
        let Some((_, _, r)) = pick else {
            return Ok(Err(col));
        };
        used[r] = true;
        pivot_row[col] = r;
        let inv = a[r][col].inverse(ring, work)?;
        a[r] = a[r].iter().map(|x| inv.mul(x, ring)).collect();
        for other in 0..size {
            if other == r || a[other][col].valuation().is_none() {
                continue;
            }
            let f = a[other][col].clone();
            for j in 0..2 * size {
                // an exact zero contributes nothing, not even a precision loss
                if a[r][j].valuation().is_some() || !a[r][j].is_exact() {
                    let delta = f.mul(&a[r][j], ring);
                    a[other][j] = a[other][j].sub(&delta);
                }
            }
        }
    }
    Ok(Ok((0..size).map(|c| a[pivot_row[c]][size..].to_vec()).collect()))
}

/// X M and M X agree with the identity below tau^n.
fn verified(m: &SkewMatrix, x: &[Vec<NovikovSeries>], n: i64, ring: &SkewRing) -> bool {
    let size = m.rows();
    let exact: Vec<Vec<NovikovSeries>> =
        (0..size).map(|i| (0..size).map(|j| NovikovSeries::exact(m.get(i, j))).collect()).collect();
    let check = |l: &[Vec<NovikovSeries>], r: &[Vec<NovikovSeries>]| {
        (0..size).all(|i| {
            (0..size).all(|j| {
                let mut acc = NovikovSeries::exact(&SkewPoly::zero());
                for k in 0..size {
                    acc = acc.add(&l[i][k].mul(&r[k][j], ring));
                }
                let want = if i == j { SkewPoly::one(ring) } else { SkewPoly::zero() };
                acc.agrees_to(&want, n)
            })
        })
    };
    check(x, &exact) && check(&exact, x)
}

/// No unit pivot in `col`: let the character determinants decide.
fn stuck(m: &SkewMatrix, ring: &SkewRing, col: usize) -> NovikovVerdict {
    let degree = ring.kappa_order() as usize;
    match crate::upsilon::pushforward_det(m, ring, degree) {
        Ok(dets) => {
            let singular: Vec<String> =
                dets.iter().filter(|d| d.class.is_none()).map(|d| d.character.to_string()).collect();
            if singular.is_empty() {
                NovikovVerdict::Inconclusive {
                    reason: format!("no pivot with unit lowest coefficient in column {col}"),
                }
            } else {
                NovikovVerdict::NotInvertibleCertificate { singular_characters: singular }
            }
        }
        Err(e) => NovikovVerdict::Inconclusive { reason: e.to_string() },
    }
}
