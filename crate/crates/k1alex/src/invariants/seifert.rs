//! The Seifert-surface route: A_{F,W} and the cyclic-cover comparison.

use serde::Serialize;

use super::{square_report, InvariantError, InvariantReport, TwistedRep};
use crate::coeff::{rat, Cyclotomic, Laurent, RatFunc};
use crate::groupring::GroupRingElem;
use crate::presentations::{rs_cover, seifert_presentation, Cover, SeifertData};
use crate::skewlaurent::{SkewMatrix, SkewPoly};
use crate::upsilon::{apply_upsilon, apply_upsilon_matrix, morita_det, BlockMatrix, HLaurent};
use crate::words::fox_derivative;

/// (i, j) entry rho(m)^-1 rho(dy_i/dx_j) - rho(dz_i/dx_j), for `rep`
/// defined on the Seifert presentation of `data` (meridian last).
pub fn afw_matrix(data: &SeifertData, rep: &TwistedRep) -> SkewMatrix {
    let g2 = 2 * data.genus;
    let m_inv = rep.eval_elem(&rep.invert(&rep.images[g2]));
    let mut a = SkewMatrix::zeros(g2, g2);
    for i in 0..g2 {
        for j in 0..g2 {
            let dy = rep.eval_ring(&fox_derivative(&data.y[i], j));
            let dz = rep.eval_ring(&fox_derivative(&data.z[i], j));
            a.set(i, j, m_inv.mul(&dy, &rep.ring).sub(&dz));
        }
    }
    a
}

pub fn afw_class(data: &SeifertData, rep: &TwistedRep, trunc: usize) -> Result<InvariantReport, InvariantError> {
    let mut report = square_report(&afw_matrix(data, rep), rep, trunc)?;
    report.kind = "seifert".into();
    Ok(report)
}

/// Fox Jacobian of the cover presentation in the non-meridian cover
/// generators, with each word sent to rho of its projection. Rows (j, k)
/// and columns (i, k) are ordered with k fastest.
pub fn cover_jacobian(cover: &Cover, rep: &TwistedRep) -> Result<BlockMatrix, InvariantError> {
    let m = cover.m as i64;
    let ncols = cover.ngens() - 1;
    let rels = &cover.presentation.relators;
    let mut j = BlockMatrix::zeros(rels.len(), ncols);
    for (r, rel) in rels.iter().enumerate() {
        for c in 0..ncols {
            let mut entry = HLaurent::zero();
            for (w, coef) in fox_derivative(rel, c).terms() {
                let (g, e) = rep.eval_word(&cover.project(w));
                if e % m != 0 {
                    return Err(InvariantError::OrderingMismatch(format!("cover word with winding {e}")));
                }
                entry.add_term(e, &GroupRingElem::monomial(g, coef.clone()));
            }
            j.set(r, c, entry);
        }
    }
    Ok(j)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverCheck {
    pub m: usize,
    pub matrices_equal: bool,
    pub classes_equal: bool,
    /// (character, Upsilon side, cover side) as reduced rational functions.
    pub per_character: Vec<(String, String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upsilon_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_matrix: Option<Vec<Vec<String>>>,
}

impl CoverCheck {
    pub fn passed(&self) -> bool {
        self.matrices_equal && self.classes_equal
    }
}

fn unit_free(f: &RatFunc<Cyclotomic>) -> Option<(Laurent<Cyclotomic>, Laurent<Cyclotomic>)> {
    let num = f.num().normalize_class().ok()?.rep;
    let den = f.den().normalize_class().ok()?.rep;
    Some((num, den))
}

/// Compares Upsilon(A_{F,W}) with the cover Jacobian conjugated by
/// diag(t^k), then (1 - tau)^-1 A_{F,W} pushed through Upsilon with
/// (1 - t^m)^-1 det of the cover Jacobian, per character.
pub fn cover_torsion_check(
    data: &SeifertData,
    rep: &TwistedRep,
    m: usize,
    dump: bool,
) -> Result<CoverCheck, InvariantError> {
    let rep = rep.with_degree(m)?;
    let ring = &rep.ring;
    let a = afw_matrix(data, &rep);
    let ups = apply_upsilon_matrix(&a, ring, m)?;
    let cover = rs_cover(&seifert_presentation(data), m)?;
    let raw = cover_jacobian(&cover, &rep)?;
    if (raw.rows(), raw.cols()) != (ups.rows(), ups.cols()) {
        return Err(InvariantError::OrderingMismatch(format!(
            "cover Jacobian {}x{}, Upsilon image {}x{}",
            raw.rows(),
            raw.cols(),
            ups.rows(),
            ups.cols()
        )));
    }
    let lifted = raw.conjugate_diag(|i| (i % m) as i64);
    let matrices_equal = lifted == ups;

    let one_minus_tau = SkewPoly::from_terms([(0, ring.one()), (1, ring.one().neg())]);
    let den_ups = morita_det(&apply_upsilon(&one_minus_tau, ring, m)?, &ring.h)?;
    let det_ups = morita_det(&ups, &ring.h)?;
    let det_cov = morita_det(&raw, &ring.h)?;
    let mut classes_equal = true;
    let mut per_character = Vec::new();
    for ((u, d), c) in det_ups.iter().zip(&den_ups).zip(&det_cov) {
        let n = u.character.conductor;
        let one = Cyclotomic::one(n);
        let tm = Laurent::from_terms([(0, one.clone()), (m as i64, Cyclotomic::from_rational(n, rat(-1)))]);
        let left = RatFunc::new(u.det.clone(), d.det.clone())?;
        let right = RatFunc::new(c.det.clone(), tm)?;
        let same = match (unit_free(&left), unit_free(&right)) {
            (Some(x), Some(y)) => x == y,
            (None, None) => true,
            _ => false,
        };
        classes_equal &= same;
        per_character.push((u.character.to_string(), left.to_string(), right.to_string()));
    }
    Ok(CoverCheck {
        m,
        matrices_equal,
        classes_equal,
        per_character,
        upsilon_matrix: dump.then(|| ups.render()),
        cover_matrix: dump.then(|| lifted.render()),
    })
}
