//! Twisted Alexander invariants: representations into H x| Z, Fox
//! Jacobians, per-character determinant classes and the checks built on
//! them.

mod metabelian;
mod report;
mod seifert;
mod wada;
mod zmn;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::CoeffError;
use crate::groupring::{Automorphism, FiniteAbelian, GroupElem, GroupRingElem, GroupRingError};
use crate::presentations::{Presentation, PresentationError, TietzeMove};
use crate::skewlaurent::{novikov_invertible, SkewError, SkewMatrix, SkewPoly, SkewRing};
use crate::upsilon::{pushforward_det, UpsilonError};
use crate::words::{fox_derivative, FreeRingElem, Word};

pub use metabelian::{
    build_metabelian_rep, metabelian_polynomial, metabelian_polynomial_seifert, reciprocity_check,
    slice_conditions, SliceVerdict,
};
pub use report::{CharacterEntry, InvariantReport, Verdict};
pub use seifert::{afw_class, afw_matrix, cover_jacobian, cover_torsion_check, CoverCheck};
pub use wada::{parse_matrices, wada_polynomial, RationalMatrix, WadaResult};
pub use zmn::{search_cyclic_reps, z_mn, ZmnReading};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Upsilon(#[from] UpsilonError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("representation does not kill relator {0}")]
    NotHomomorphism(usize),
    #[error("representation has {got} generator images, presentation has {expected} generators")]
    ImageCount { got: usize, expected: usize },
    #[error("column {0} out of range for {1} generators")]
    BadColumn(usize, usize),
    #[error("presentation has deficiency {0}, expected 1")]
    DeficiencyNotOne(i64),
    #[error("first Betti number of the cover is {0}, expected 1")]
    FreeRankNotOne(usize),
    #[error("metabelian construction failed: {0}")]
    HomomorphismCheckFailed(String),
    #[error("hypothesis mH = H fails: {0}")]
    HypothesisFailed(String),
    #[error("matrix expected invertible is singular for {0}")]
    UnexpectedSingular(String),
    #[error("no longitude available and no other reciprocity hypothesis certified")]
    LongitudeMissing,
    #[error("cover matrices disagree: {0}")]
    OrderingMismatch(String),
    #[error("bad matrix input: {0}")]
    BadMatrices(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "type", content = "m")]
pub enum Provenance {
    Trivial,
    Explicit,
    Metabelian(usize),
}

/// rho: F(x_1..x_n) -> H x| Z with rho(x_i) = a_i tau^(e_i), a
/// homomorphism on the attached presentation. `degree` is the block size
/// used for Upsilon; kappa^degree = id.
#[derive(Clone, Debug)]
pub struct TwistedRep {
    pub ring: SkewRing,
    pub images: Vec<(GroupElem, i64)>,
    pub degree: usize,
    pub provenance: Provenance,
}

impl TwistedRep {
    pub fn new(
        p: &Presentation,
        ring: SkewRing,
        images: Vec<(GroupElem, i64)>,
        degree: usize,
        provenance: Provenance,
    ) -> Result<Self, InvariantError> {
        if images.len() != p.ngens() {
            return Err(InvariantError::ImageCount { got: images.len(), expected: p.ngens() });
        }
        for (g, _) in &images {
            if !ring.h.contains(g) {
                return Err(GroupRingError::MismatchedGroup(g.0.clone()).into());
            }
        }
        if degree == 0 || !degree.is_multiple_of(ring.kappa_order() as usize) {
            return Err(UpsilonError::KappaOrderMismatch { order: ring.kappa_order(), m: degree }.into());
        }
        let rep = TwistedRep { ring, images, degree, provenance };
        for (i, r) in p.relators.iter().enumerate() {
            if !rep.kills(r) {
                return Err(InvariantError::NotHomomorphism(i));
            }
        }
        Ok(rep)
    }

    /// Abelianization to Z: every generator goes to tau^(winding).
    pub fn trivial(p: &Presentation) -> Result<Self, InvariantError> {
        let w = p.windings()?;
        let ring = SkewRing::classical();
        let images = w.into_iter().map(|e| (ring.h.identity(), e)).collect();
        Self::new(p, ring, images, 1, Provenance::Trivial)
    }

    /// Same homomorphism, Upsilon taken with m x m blocks.
    pub fn with_degree(&self, degree: usize) -> Result<Self, InvariantError> {
        if degree == 0 || !degree.is_multiple_of(self.ring.kappa_order() as usize) {
            return Err(UpsilonError::KappaOrderMismatch { order: self.ring.kappa_order(), m: degree }.into());
        }
        Ok(TwistedRep { degree, ..self.clone() })
    }

    /// The same homomorphism on the presentation obtained by `mv`.
    pub fn transport(&self, q: &Presentation, mv: &TietzeMove) -> Result<Self, InvariantError> {
        let mut images = self.images.clone();
        if let TietzeMove::AddGenerator(w) = mv {
            images.push(self.eval_word(w));
        }
        Self::new(q, self.ring.clone(), images, self.degree, self.provenance)
    }

    pub fn h(&self) -> &FiniteAbelian {
        &self.ring.h
    }

    pub fn kappa(&self) -> &Automorphism {
        &self.ring.kappa
    }

    /// (h1, e1)(h2, e2) = (h1 + kappa^e1(h2), e1 + e2).
    pub fn compose(&self, a: &(GroupElem, i64), b: &(GroupElem, i64)) -> (GroupElem, i64) {
        let h = &self.ring.h;
        (h.add(&a.0, &self.ring.kappa.apply_pow(h, &b.0, a.1)), a.1 + b.1)
    }

    pub fn invert(&self, a: &(GroupElem, i64)) -> (GroupElem, i64) {
        let h = &self.ring.h;
        (h.neg(&self.ring.kappa.apply_pow(h, &a.0, -a.1)), -a.1)
    }

    pub fn eval_word(&self, w: &Word) -> (GroupElem, i64) {
        let mut acc = (self.ring.h.identity(), 0);
        for l in w.letters() {
            let x = &self.images[l.gen];
            let y = if l.inv { self.invert(x) } else { x.clone() };
            acc = self.compose(&acc, &y);
        }
        acc
    }

    pub fn kills(&self, w: &Word) -> bool {
        let (g, e) = self.eval_word(w);
        e == 0 && g == self.ring.h.identity()
    }

    pub fn eval_elem(&self, x: &(GroupElem, i64)) -> SkewPoly {
        SkewPoly::group_elem(x.0.clone(), x.1)
    }

    /// Linear extension to the free group ring.
    pub fn eval_ring(&self, f: &FreeRingElem) -> SkewPoly {
        SkewPoly::from_terms(f.terms().map(|(w, c)| {
            let (g, e) = self.eval_word(w);
            (e, GroupRingElem::monomial(g, c.clone()))
        }))
    }
}

/// (i, j) entry rho(d r_i / d x_j).
pub fn fox_jacobian(p: &Presentation, rep: &TwistedRep) -> SkewMatrix {
    let mut m = SkewMatrix::zeros(p.relators.len(), p.ngens());
    for (i, r) in p.relators.iter().enumerate() {
        for j in 0..p.ngens() {
            m.set(i, j, rep.eval_ring(&fox_derivative(r, j)));
        }
    }
    m
}

/// Phi_{rho,k}: the determinant classes of the Jacobian with column k
/// removed, per character of H after Upsilon. Not invertible means every
/// class is zero.
pub fn phi_class(p: &Presentation, rep: &TwistedRep, k: usize, trunc: usize) -> Result<InvariantReport, InvariantError> {
    if k >= p.ngens() {
        return Err(InvariantError::BadColumn(k, p.ngens()));
    }
    if p.deficiency() != 1 {
        return Err(InvariantError::DeficiencyNotOne(p.deficiency()));
    }
    let a = fox_jacobian(p, rep).remove_column(k)?;
    let mut report = square_report(&a, rep, trunc)?;
    report.deleted_column = Some(k);
    report.kind = p.kind.to_string();
    Ok(report)
}

/// Determinant classes and invertibility verdict of a square matrix.
pub(crate) fn square_report(a: &SkewMatrix, rep: &TwistedRep, trunc: usize) -> Result<InvariantReport, InvariantError> {
    let dets = pushforward_det(a, &rep.ring, rep.degree)?;
    let singular = dets.iter().any(|d| d.class.is_none());
    let (verdict, note) = if singular {
        (Verdict::NotInvertible, None)
    } else {
        match novikov_invertible(a, trunc, &rep.ring)? {
            v if v.is_invertible() => (Verdict::Invertible, None),
            v => (
                Verdict::Invertible,
                Some(format!("Novikov elimination {}; invertibility certified by nonzero character determinants", v.label())),
            ),
        }
    };
    let mut report = InvariantReport::from_dets(dets, verdict, rep);
    report.notes.extend(note);
    if verdict == Verdict::Invertible {
        report.fiberedness = Some(report::fiberedness_note(&report.dets));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{two_bridge_presentation, wirtinger_from_braid};

    #[test]
    fn trivial_rep_classical_polynomials() {
        let p = wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        let rep = TwistedRep::trivial(&p).unwrap();
        let r = phi_class(&p, &rep, 0, 32).unwrap();
        assert_eq!(r.characters[0].polynomial, "1 + (-1)*t + t^2");
        let p = two_bridge_presentation(1, 1).unwrap();
        let rep = TwistedRep::trivial(&p).unwrap();
        let r = phi_class(&p, &rep, 1, 32).unwrap();
        assert_eq!(r.characters[0].polynomial, "1 + (-3)*t + t^2");
        assert_eq!(r.verdict, Verdict::Invertible);
    }

    #[test]
    fn unknot_is_one() {
        let p = wirtinger_from_braid(&[1], 2).unwrap();
        let rep = TwistedRep::trivial(&p).unwrap();
        let j = fox_jacobian(&p, &rep);
        assert_eq!((j.rows(), j.cols()), (0, 1));
        let r = phi_class(&p, &rep, 0, 32).unwrap();
        assert_eq!(r.characters[0].polynomial, "1");
    }

    #[test]
    fn rejects_non_homomorphism() {
        let p = two_bridge_presentation(1, 1).unwrap();
        let ring = SkewRing::classical();
        let e = ring.h.identity();
        let err = TwistedRep::new(&p, ring, vec![(e.clone(), 1), (e, 2)], 1, Provenance::Explicit).unwrap_err();
        assert_eq!(err, InvariantError::NotHomomorphism(0));
    }
}
