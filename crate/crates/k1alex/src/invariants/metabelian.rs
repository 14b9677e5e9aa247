//! Metabelian representations from the m-fold cyclic cover, and the
//! reciprocity and slice checks on their reports.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::{afw_class, phi_class, InvariantError, InvariantReport, Provenance, TwistedRep, Verdict};
use crate::groupring::{Automorphism, FiniteAbelian};
use crate::presentations::{rs_cover, seifert_presentation, Presentation, SeifertData};
use crate::skewlaurent::SkewRing;
use crate::words::Word;

/// rho(g) = (class of g t^-w(g) in the torsion of H_1 of the m-fold cover,
/// w(g)), with kappa the deck action on that torsion.
pub fn build_metabelian_rep(p: &Presentation, m: usize) -> Result<TwistedRep, InvariantError> {
    let cover = rs_cover(p, m)?;
    let ab = cover.presentation.abelianize();
    if ab.invariants.free_rank != 1 {
        return Err(InvariantError::FreeRankNotOne(ab.invariants.free_rank));
    }
    let h = FiniteAbelian::new(ab.invariants.torsion.clone())?;
    let n = cover.ngens();
    let torsion_of = |w: &Word, what: &str| -> Result<Vec<u64>, InvariantError> {
        let (free, tors) = ab.coordinates(&w.exponent_sums(n));
        if free.iter().any(|&f| f != 0) {
            return Err(InvariantError::HomomorphismCheckFailed(format!("{what} has a free homology component")));
        }
        Ok(tors)
    };
    let mut images = Vec::with_capacity(h.rank());
    for k in 0..h.rank() {
        let v = ab.torsion_generator(k);
        let w = Word::from_powers(&v.iter().enumerate().map(|(g, &e)| (g, e)).collect::<Vec<_>>());
        let img = torsion_of(&cover.deck(&w), "deck image of a torsion class")?;
        images.push(h.reduce(&img.iter().map(|&x| x as i64).collect::<Vec<_>>()));
    }
    let kappa = Automorphism::new(&h, images)?;
    let t = Word::gen(cover.meridian_gen);
    let mut gens = Vec::with_capacity(p.ngens());
    for i in 0..p.ngens() {
        let wi = cover.windings[i];
        let (cw, end) = cover.rewrite(&Word::gen(i).mul(&t.pow(-wi)), 0);
        debug_assert_eq!(end, 0);
        let a = torsion_of(&cw, "generator class")?;
        gens.push((h.reduce(&a.iter().map(|&x| x as i64).collect::<Vec<_>>()), wi));
    }
    let ring = SkewRing::new(h, kappa);
    TwistedRep::new(p, ring, gens, m, Provenance::Metabelian(m)).map_err(|e| match e {
        InvariantError::NotHomomorphism(i) => {
            InvariantError::HomomorphismCheckFailed(format!("relator {i} not killed by the metabelian images"))
        }
        e => e,
    })
}

fn check_hypothesis(rep: &TwistedRep, m: usize) -> Result<(), InvariantError> {
    match rep.h().factors().iter().find(|&&d| d.gcd(&(m as u64)) != 1) {
        Some(d) => Err(InvariantError::HypothesisFailed(format!("m = {m} shares a factor with Z/{d}"))),
        None => Ok(()),
    }
}

fn finish(mut report: InvariantReport, rep: &TwistedRep, m: usize) -> Result<InvariantReport, InvariantError> {
    if report.verdict == Verdict::NotInvertible {
        let bad: Vec<String> =
            report.dets.iter().filter(|d| d.class.is_none()).map(|d| d.character.to_string()).collect();
        return Err(InvariantError::UnexpectedSingular(bad.join(", ")));
    }
    report.m = m;
    report.representation = rep.provenance;
    report.reciprocity = Some(reciprocity_check(&report)?);
    report.slice = Some(slice_conditions(&report));
    Ok(report)
}

/// Wirtinger route: Phi of the metabelian representation, column k.
pub fn metabelian_polynomial(
    p: &Presentation,
    m: usize,
    k: usize,
    trunc: usize,
) -> Result<InvariantReport, InvariantError> {
    let rep = build_metabelian_rep(p, m)?;
    check_hypothesis(&rep, m)?;
    let mut report = phi_class(p, &rep, k, trunc)?;
    if let Some(l) = &p.longitude {
        report.longitude_trivial = Some(rep.kills(l));
    }
    finish(report, &rep, m)
}

/// Seifert route: det Upsilon(A_{F,W}) for the metabelian representation.
pub fn metabelian_polynomial_seifert(data: &SeifertData, m: usize, trunc: usize) -> Result<InvariantReport, InvariantError> {
    let p = seifert_presentation(data);
    let rep = build_metabelian_rep(&p, m)?;
    check_hypothesis(&rep, m)?;
    finish(afw_class(data, &rep, trunc)?, &rep, m)
}

/// Per character: the class of f equals the class of its conjugate
/// f(t^-1). Needs rho(longitude) = 1, which holds for abelian and
/// metabelian representations and is otherwise read off the report.
pub fn reciprocity_check(report: &InvariantReport) -> Result<Vec<bool>, InvariantError> {
    let certified = match report.representation {
        Provenance::Trivial | Provenance::Metabelian(_) => true,
        Provenance::Explicit => report.longitude_trivial == Some(true),
    };
    if !certified {
        return Err(InvariantError::LongitudeMissing);
    }
    Ok(report
        .dets
        .iter()
        .map(|d| match d.det.normalize_class() {
            Ok(c) => d.det.bar().normalize_class().is_ok_and(|b| b == c),
            Err(_) => true,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum SliceVerdict {
    Obstructed(String),
    NotObstructed,
}

impl fmt::Display for SliceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceVerdict::Obstructed(r) => write!(f, "obstructed ({r})"),
            SliceVerdict::NotObstructed => write!(f, "not obstructed"),
        }
    }
}

/// Necessary conditions only; a pass never certifies sliceness.
pub fn slice_conditions(report: &InvariantReport) -> SliceVerdict {
    let n = report.h_order;
    let r = n.isqrt();
    if r * r != n {
        return SliceVerdict::Obstructed(format!("|H| = {n} is not a perfect square"));
    }
    if let Some(d) = report.dets.iter().find(|d| d.character.is_trivial()) {
        if let Some(span) = d.det.span() {
            if span % 2 != 0 {
                return SliceVerdict::Obstructed(format!("trivial-character class has odd span {span}"));
            }
        }
    }
    if let Some(bad) = report.reciprocity.as_ref().and_then(|r| r.iter().position(|&ok| !ok)) {
        return SliceVerdict::Obstructed(format!("{} fails reciprocity", report.characters[bad].character));
    }
    SliceVerdict::NotObstructed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{two_bridge_presentation, wirtinger_from_braid};

    #[test]
    fn trefoil_double_cover() {
        let p = wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        let rep = build_metabelian_rep(&p, 2).unwrap();
        assert_eq!(rep.h().factors(), &[3]);
        assert_eq!(rep.kappa().order(), 2);
        assert!(rep.kills(p.longitude.as_ref().unwrap()));
    }

    #[test]
    fn figure_eight_double_cover() {
        let p = two_bridge_presentation(1, 1).unwrap();
        let rep = build_metabelian_rep(&p, 2).unwrap();
        assert_eq!(rep.h().factors(), &[5]);
        assert_eq!(rep.kappa().order(), 2);
    }

    #[test]
    fn unknot_is_trivial() {
        let p = wirtinger_from_braid(&[1], 2).unwrap();
        let rep = build_metabelian_rep(&p, 3).unwrap();
        assert!(rep.h().is_trivial());
        let r = metabelian_polynomial(&p, 3, 0, 32).unwrap();
        assert_eq!(r.polynomials(), vec!["1".to_string()]);
        assert_eq!(r.slice, Some(SliceVerdict::NotObstructed));
    }
}
