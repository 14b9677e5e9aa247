//! Oracles that share no code with the library: integer polynomials,
//! Seifert-form determinants, Sylvester resultants and the regular
//! representation of Q[H].
#![allow(dead_code)]

use k1alex::coeff::{Cyclotomic, Field, Laurent, Rational};
use k1alex::groupring::{FiniteAbelian, GroupRingElem};
use num_traits::{One, Zero};

/// Integer polynomial in t, ascending coefficients.
pub type IPoly = Vec<i64>;

fn trim(mut p: IPoly) -> IPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn padd(a: &[i64], b: &[i64]) -> IPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub fn pneg(a: &[i64]) -> IPoly {
    a.iter().map(|x| -x).collect()
}

pub fn pmul(a: &[i64], b: &[i64]) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Cofactor expansion along the first row; fine for the 2x2 and 4x4
/// matrices used here.
pub fn det_poly(m: &[Vec<IPoly>]) -> IPoly {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let mut acc: IPoly = vec![];
    for j in 0..n {
        let minor: Vec<Vec<IPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = pmul(&m[0][j], &det_poly(&minor));
        acc = if j % 2 == 0 { padd(&acc, &term) } else { padd(&acc, &pneg(&term)) };
    }
    acc
}

/// det(V - t V^T).
pub fn seifert_alexander(v: &[Vec<i64>]) -> IPoly {
    let n = v.len();
    let m: Vec<Vec<IPoly>> = (0..n).map(|i| (0..n).map(|j| trim(vec![v[i][j], -v[j][i]])).collect()).collect();
    det_poly(&m)
}

/// Seifert matrix of the genus-one two-bridge knot K(m, n) in the
/// convention where K(1, 1) is the figure-eight and K(1, -1) the trefoil.
pub fn two_bridge_seifert(m: i64, n: i64) -> Vec<Vec<i64>> {
    vec![vec![m, 1], vec![0, -n]]
}

/// Resultant via the Sylvester matrix, with exact fraction-free
/// elimination in i128.
pub fn resultant(a: &[i64], b: &[i64]) -> i128 {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    if n == 0 {
        return 1;
    }
    let mut s = vec![vec![0i128; n]; n];
    for r in 0..db {
        for (i, &c) in a.iter().rev().enumerate() {
            s[r][r + i] = c as i128;
        }
    }
    for r in 0..da {
        for (i, &c) in b.iter().rev().enumerate() {
            s[db + r][r + i] = c as i128;
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if s[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| s[i][k] != 0) else { return 0 };
            s.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                s[i][j] = (s[i][j] * s[k][k] - s[i][k] * s[k][j]) / prev;
            }
        }
        prev = s[k][k];
    }
    sign * s[n - 1][n - 1]
}

/// (t^m - 1)/(t - 1).
pub fn cyclic_sum(m: usize) -> IPoly {
    vec![1; m]
}

/// Coefficients of a determinant whose values are all rational; None if
/// some coefficient is irrational.
pub fn rational_terms(l: &Laurent<Cyclotomic>) -> Option<Vec<(i64, Rational)>> {
    l.terms().map(|(e, c)| c.as_rational().map(|q| (e, q.clone()))).collect()
}

/// f equals c t^k o for some nonzero rational c and integer k.
pub fn same_class_as(oracle: &[i64], f: &Laurent<Cyclotomic>) -> bool {
    let o = trim(oracle.to_vec());
    let Some(terms) = rational_terms(f) else { return false };
    let lo = o.iter().position(|&c| c != 0);
    let (Some(lo), Some(&(flo, _))) = (lo, terms.first()) else {
        return o.is_empty() && terms.is_empty();
    };
    let o = &o[lo..];
    if terms.len() != o.iter().filter(|&&c| c != 0).count() {
        return false;
    }
    let ratio = terms[0].1.clone() / Rational::from_integer(o[0].into());
    terms.iter().all(|(e, c)| {
        let idx = (e - flo) as usize;
        idx < o.len() && *c == &ratio * Rational::from_integer(o[idx].into())
    })
}

/// Left-multiplication matrix of a on the basis H of Q[H].
pub fn regular_matrix(a: &GroupRingElem, h: &FiniteAbelian) -> Vec<Vec<Rational>> {
    let els = h.elements();
    let mut m = vec![vec![Rational::zero(); els.len()]; els.len()];
    for (j, g) in els.iter().enumerate() {
        for (x, c) in a.terms() {
            let i = els.iter().position(|e| *e == h.add(x, g)).unwrap();
            m[i][j] += c;
        }
    }
    m
}

pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return Rational::zero() };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let piv = m[k][k].clone();
        det *= &piv;
        for i in k + 1..n {
            let f = &m[i][k] / &piv;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Product of all character values; equals the regular-representation
/// determinant.
pub fn character_norm(a: &GroupRingElem, h: &FiniteAbelian) -> Rational {
    let mut acc: Option<Cyclotomic> = None;
    for g in h.elements() {
        let chi = k1alex::groupring::Character::new(h, g);
        let v = chi.eval(a);
        acc = Some(match acc {
            None => v,
            Some(x) => lift_mul(&x, &v),
        });
    }
    acc.and_then(|c| c.as_rational().cloned()).expect("norm is rational")
}

fn lift_mul(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if a.conductor() == b.conductor() {
        return a.mul(b);
    }
    let n = num_integer::lcm(a.conductor(), b.conductor());
    let lift = |x: &Cyclotomic| {
        let k = (n / x.conductor()) as i64;
        x.coeffs()
            .iter()
            .enumerate()
            .fold(Cyclotomic::zero(n), |acc, (i, c)| {
                acc.add(&Cyclotomic::zeta_pow(n, i as i64 * k).mul(&Cyclotomic::from_rational(n, c.clone())))
            })
    };
    lift(a).mul(&lift(b))
}
