//! Closed form for rho(dr/dx) on the genus-one two-bridge knots K(m, n),
//! r = w^n x w^-n y^-1, w = (x y^-1)^m (x^-1 y)^m.

use serde::Serialize;

use super::{InvariantError, Provenance, TwistedRep};
use crate::groupring::{Automorphism, FiniteAbelian, GroupElem};
use crate::presentations::{two_bridge_presentation, two_bridge_w};
use crate::skewlaurent::{SkewPoly, SkewRing};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZmnReading {
    /// Middle factor 1 - rho(w y^-1), geometric sums as in the Fox
    /// expansion. Agrees with the raw Fox derivative.
    Corrected,
    /// Middle factor 1 - rho(w x^-1); for n < 0 the extra rho(w^-1) in
    /// front of (1 - w^n)/(1 - w).
    Printed,
}

/// Z_{m,n} for a representation defined on `two_bridge_presentation(m, n)`.
pub fn z_mn(m: i64, n: i64, rep: &TwistedRep, reading: ZmnReading) -> Result<SkewPoly, InvariantError> {
    two_bridge_presentation(m, n)?;
    let ring = &rep.ring;
    let ev = |w: &Word| rep.eval_elem(&rep.eval_word(w));
    let (x, y) = (Word::gen(0), Word::gen(1));
    let w = two_bridge_w(m);
    let u = x.mul(&y.inverse());
    let one = SkewPoly::one(ring);
    // sum of rho(base)^k for k in lo..=hi
    let geo = |base: &Word, lo: i64, hi: i64| {
        (lo..=hi).fold(SkewPoly::zero(), |acc, k| acc.add(&ev(&base.pow(k))))
    };
    let s_u = geo(&u, 0, m - 1);
    let middle = match reading {
        ZmnReading::Corrected => one.sub(&ev(&w.mul(&y.inverse()))),
        ZmnReading::Printed => one.sub(&ev(&w.mul(&x.inverse()))),
    };
    let (front, sum) = if n > 0 {
        (one.sub(&ev(&y)), geo(&w, 0, n - 1))
    } else {
        let sum = match reading {
            ZmnReading::Corrected => geo(&w, n, -1),
            // (1 - w^n)/(1 - w) = -(w^n + .. + w^-1), after rho(w^-1)
            ZmnReading::Printed => ev(&w.inverse()).mul(&geo(&w, n, -1).neg(), ring),
        };
        (ev(&y).sub(&one), sum)
    };
    let tail = front.mul(&sum, ring).mul(&middle, ring).mul(&s_u, ring);
    Ok(ev(&w.pow(n)).add(&tail))
}

/// Representations of K(m, n) into Z/p x| Z sending x and y to (a, 1),
/// (b, 1) with kappa the identity or inversion, excluding a = b = 0.
pub fn search_cyclic_reps(m: i64, n: i64, p: u64) -> Result<Vec<TwistedRep>, InvariantError> {
    let pres = two_bridge_presentation(m, n)?;
    let h = FiniteAbelian::cyclic(p);
    let mut kappas = vec![Automorphism::identity(&h)];
    if p > 2 {
        kappas.push(Automorphism::new(&h, vec![GroupElem(vec![p - 1])])?);
    }
    let mut out = Vec::new();
    for kappa in kappas {
        let ring = SkewRing::new(h.clone(), kappa);
        let degree = ring.kappa_order() as usize;
        for a in 0..p {
            for b in 0..p {
                if a == 0 && b == 0 {
                    continue;
                }
                let images = vec![(GroupElem(vec![a]), 1), (GroupElem(vec![b]), 1)];
                if let Ok(rep) = TwistedRep::new(&pres, ring.clone(), images, degree, Provenance::Explicit) {
                    out.push(rep);
                }
            }
        }
    }
    Ok(out)
}
