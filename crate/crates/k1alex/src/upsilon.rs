//! The block-matrix homomorphism Upsilon from skew polynomials over Q[H]
//! to m x m matrices over Q[H][t^(+-1)], and per-character determinants.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::{Cyclotomic, Field, Laurent, PolyClass};
use crate::groupring::{Character, FiniteAbelian, GroupRingElem};
use crate::skewlaurent::{SkewMatrix, SkewPoly, SkewRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpsilonError {
    #[error("block index {0} outside 0..={1}")]
    BadIndex(usize, usize),
    #[error("kappa has order {order}, which does not divide m = {m}")]
    KappaOrderMismatch { order: u32, m: usize },
    #[error("block matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
}

/// Laurent polynomial in t with Q[H] coefficients (untwisted).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HLaurent {
    terms: BTreeMap<i64, GroupRingElem>,
}

impl HLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: GroupRingElem, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, &a);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GroupRingElem)> {
        self.terms.iter().map(|(e, a)| (*e, a))
    }

    pub fn add_term(&mut self, e: i64, a: &GroupRingElem) {
        let s = self.terms.get(&e).map_or_else(|| a.clone(), |b| b.add(a));
        if s.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, a) in o.terms() {
            out.add_term(e, a);
        }
        out
    }

    pub fn neg(&self) -> Self {
        HLaurent { terms: self.terms.iter().map(|(e, a)| (*e, a.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self, h: &FiniteAbelian) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.terms() {
            for (j, b) in o.terms() {
                out.add_term(i + j, &a.mul(b, h));
            }
        }
        out
    }

    pub fn shift(&self, k: i64) -> Self {
        HLaurent { terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect() }
    }

    pub fn eval(&self, chi: &Character) -> Laurent<Cyclotomic> {
        Laurent::from_terms(self.terms().map(|(e, a)| (e, chi.eval(a))))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(e, a)| match e {
                0 => format!("({})", a.render()),
                _ => format!("({})*t^{e}", a.render()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Matrix over Q[H][t^(+-1)], row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMatrix {
    rows: usize,
    cols: usize,
    e: Vec<HLaurent>,
}

impl BlockMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BlockMatrix { rows, cols, e: vec![HLaurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize, h: &FiniteAbelian) -> Self {
        let mut b = Self::zeros(n, n);
        for i in 0..n {
            b.set(i, i, HLaurent::monomial(GroupRingElem::one(h), 0));
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &HLaurent {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: HLaurent) {
        self.e[i * self.cols + j] = p;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "block matrix shapes");
        BlockMatrix { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn mul(&self, o: &Self, h: &FiniteAbelian) -> Self {
        assert_eq!(self.cols, o.rows, "block matrix shapes");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let prod = a.mul(o.get(k, j), h);
                    let cur = out.get(i, j).add(&prod);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn scale_t(&self, k: i64) -> Self {
        BlockMatrix { rows: self.rows, cols: self.cols, e: self.e.iter().map(|p| p.shift(k)).collect() }
    }

    /// Entry (i, j) multiplied by t^(shift(j) - shift(i)): conjugation by
    /// diag(t^shift(i)).
    pub fn conjugate_diag(&self, shift: impl Fn(usize) -> i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).shift(shift(j) - shift(i)));
            }
        }
        out
    }

    pub fn eval(&self, chi: &Character) -> Vec<Vec<Laurent<Cyclotomic>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(chi)).collect()).collect()
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect()).collect()
    }
}

/// diag(kappa^l(a), kappa^(l-1)(a), .., kappa(a)).
pub fn d_block(l: usize, a: &GroupRingElem, ring: &SkewRing, m: usize) -> Result<Vec<GroupRingElem>, UpsilonError> {
    if l > m {
        return Err(UpsilonError::BadIndex(l, m));
    }
    Ok((1..=l as i64).rev().map(|k| ring.twist(a, k)).collect())
}

/// m x m matrix with kappa^i(a) at (i, (i + l) mod m): the block with the
/// same placement as diag(a, .., kappa^(m-1) a) times the l-th power of
/// the cyclic shift. Nonzero blocks sit top-right ((m-l) square) and
/// bottom-left (l square).
pub fn m_block(l: usize, a: &GroupRingElem, ring: &SkewRing, m: usize) -> Result<Vec<Vec<GroupRingElem>>, UpsilonError> {
    if l >= m {
        return Err(UpsilonError::BadIndex(l, m.saturating_sub(1)));
    }
    let mut out = vec![vec![GroupRingElem::zero(); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        row[(i + l) % m] = ring.twist(a, i as i64);
    }
    Ok(out)
}

fn check_order(ring: &SkewRing, m: usize) -> Result<(), UpsilonError> {
    let order = ring.kappa_order();
    if m == 0 || !m.is_multiple_of(order as usize) {
        return Err(UpsilonError::KappaOrderMismatch { order, m });
    }
    Ok(())
}

/// sum_j M_(j mod m)(a_j) t^j.
pub fn apply_upsilon(p: &SkewPoly, ring: &SkewRing, m: usize) -> Result<BlockMatrix, UpsilonError> {
    check_order(ring, m)?;
    let mut out = BlockMatrix::zeros(m, m);
    add_upsilon(&mut out, 0, 0, p, ring, m);
    Ok(out)
}

fn add_upsilon(out: &mut BlockMatrix, r0: usize, c0: usize, p: &SkewPoly, ring: &SkewRing, m: usize) {
    for (j, a) in p.terms() {
        let l = j.rem_euclid(m as i64) as usize;
        for i in 0..m {
            let col = (i + l) % m;
            let mut e = out.get(r0 + i, c0 + col).clone();
            e.add_term(j, &ring.twist(a, i as i64));
            out.set(r0 + i, c0 + col, e);
        }
    }
}

/// Entrywise Upsilon: an (r m) x (c m) matrix, block (i, j) = Upsilon(M_ij).
pub fn apply_upsilon_matrix(mat: &SkewMatrix, ring: &SkewRing, m: usize) -> Result<BlockMatrix, UpsilonError> {
    check_order(ring, m)?;
    let mut out = BlockMatrix::zeros(mat.rows() * m, mat.cols() * m);
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            add_upsilon(&mut out, i * m, j * m, mat.get(i, j), ring, m);
        }
    }
    Ok(out)
}

/// Fraction-free determinant over F[t^(+-1)].
pub fn bareiss_det<F: Field>(mut a: Vec<Vec<Laurent<F>>>, one: F) -> Laurent<F> {
    let n = a.len();
    let mut prev = Laurent::constant(one.clone());
    let mut negate = false;
    if n == 0 {
        return prev;
    }
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Laurent::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant of one character image; `class` is None when it vanishes.
#[derive(Clone, Debug)]
pub struct CharacterDet {
    pub character: Character,
    pub det: Laurent<Cyclotomic>,
    pub class: Option<PolyClass<Cyclotomic>>,
}

pub fn morita_det(b: &BlockMatrix, h: &FiniteAbelian) -> Result<Vec<CharacterDet>, UpsilonError> {
    if b.rows() != b.cols() {
        return Err(UpsilonError::NotSquare(b.rows(), b.cols()));
    }
    Ok(h.characters()
        .into_iter()
        .map(|chi| {
            let det = bareiss_det(b.eval(&chi), Cyclotomic::one(chi.conductor));
            let class = det.normalize_class().ok();
            CharacterDet { character: chi, det, class }
        })
        .collect())
}

pub fn pushforward_det(mat: &SkewMatrix, ring: &SkewRing, m: usize) -> Result<Vec<CharacterDet>, UpsilonError> {
    morita_det(&apply_upsilon_matrix(mat, ring, m)?, &ring.h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::groupring::{Automorphism, GroupElem};

    fn z3_inversion() -> SkewRing {
        let h = FiniteAbelian::cyclic(3);
        let kappa = Automorphism::new(&h, vec![GroupElem(vec![2])]).unwrap();
        SkewRing::new(h, kappa)
    }

    #[test]
    fn blocks() {
        let ring = z3_inversion();
        let one = ring.one();
        let g = GroupRingElem::group_elem(GroupElem(vec![1]));
        assert!(d_block(0, &g, &ring, 2).unwrap().is_empty());
        assert_eq!(d_block(1, &g, &ring, 2).unwrap(), vec![ring.twist(&g, 1)]);
        assert!(d_block(3, &g, &ring, 2).is_err());
        let m1 = m_block(1, &one, &ring, 2).unwrap();
        assert!(m1[0][0].is_zero() && m1[0][1] == one && m1[1][0] == one);
    }

    #[test]
    fn tau_squared() {
        let ring = SkewRing::classical();
        let t = apply_upsilon(&SkewPoly::tau(&ring, 1), &ring, 2).unwrap();
        assert!(t.get(0, 0).is_zero());
        assert_eq!(t.get(0, 1), &HLaurent::monomial(ring.one(), 1));
        let t2 = t.mul(&t, &ring.h);
        assert_eq!(t2, BlockMatrix::identity(2, &ring.h).scale_t(2));
    }

    #[test]
    fn one_minus_tau_determinant() {
        let ring = SkewRing::classical();
        let p = SkewPoly::from_terms([(0, ring.one()), (1, ring.one().neg())]);
        let dets = morita_det(&apply_upsilon(&p, &ring, 2).unwrap(), &ring.h).unwrap();
        assert_eq!(dets.len(), 1);
        assert_eq!(dets[0].det.to_string(), "1 + (-1)*t^2");
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let c = |v: &[i64]| Laurent::from_terms(v.iter().enumerate().map(|(i, &x)| (i as i64, rat(x))));
        let a = vec![vec![c(&[1, 1]), c(&[2]), c(&[0, 0, 1])], vec![c(&[0]), c(&[3, -1]), c(&[1])], vec![c(&[1]), c(&[0]), c(&[2])]];
        // cofactor expansion along the first row
        let d = c(&[1, 1]).mul(&c(&[3, -1]).mul(&c(&[2])).sub(&c(&[1]).mul(&c(&[0]))))
            .sub(&c(&[2]).mul(&c(&[0]).mul(&c(&[2])).sub(&c(&[1]).mul(&c(&[1])))))
            .add(&c(&[0, 0, 1]).mul(&c(&[0]).mul(&c(&[0])).sub(&c(&[3, -1]).mul(&c(&[1])))));
        assert_eq!(bareiss_det(a, rat(1)), d);
    }

    #[test]
    fn order_mismatch() {
        let ring = z3_inversion();
        assert_eq!(
            apply_upsilon(&SkewPoly::one(&ring), &ring, 3),
            Err(UpsilonError::KappaOrderMismatch { order: 2, m: 3 })
        );
    }
}
