use serde::Serialize;

use super::{Provenance, TwistedRep};
use crate::coeff::Field;
use crate::upsilon::CharacterDet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Invertible,
    NotInvertible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterEntry {
    pub character: String,
    pub conductor: u32,
    /// Normalized class; "0" when the matrix is not invertible.
    pub polynomial: String,
    pub determinant: String,
}

/// Per-character determinant classes with their provenance.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub input: String,
    pub kind: String,
    pub h: String,
    pub h_order: u64,
    pub kappa_order: u32,
    pub m: usize,
    pub representation: Provenance,
    pub deleted_column: Option<usize>,
    pub verdict: Verdict,
    pub characters: Vec<CharacterEntry>,
    pub fiberedness: Option<String>,
    /// rho(longitude) == 1, when a longitude was available.
    pub longitude_trivial: Option<bool>,
    pub reciprocity: Option<Vec<bool>>,
    pub slice: Option<super::SliceVerdict>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub dets: Vec<CharacterDet>,
}

impl InvariantReport {
    pub(crate) fn from_dets(dets: Vec<CharacterDet>, verdict: Verdict, rep: &TwistedRep) -> Self {
        let characters = dets
            .iter()
            .map(|d| CharacterEntry {
                character: d.character.to_string(),
                conductor: d.character.conductor,
                polynomial: match (&d.class, verdict) {
                    (Some(c), Verdict::Invertible) => c.to_string(),
                    _ => "0".into(),
                },
                determinant: d.det.to_string(),
            })
            .collect();
        InvariantReport {
            input: String::new(),
            kind: String::new(),
            h: rep.h().to_string(),
            h_order: rep.h().order(),
            kappa_order: rep.kappa().order(),
            m: rep.degree,
            representation: rep.provenance,
            deleted_column: None,
            verdict,
            characters,
            fiberedness: None,
            longitude_trivial: None,
            reciprocity: None,
            slice: None,
            notes: Vec::new(),
            dets,
        }
    }

    /// Normalized class strings, one per character in report order.
    pub fn polynomials(&self) -> Vec<String> {
        self.characters.iter().map(|c| c.polynomial.clone()).collect()
    }

    /// The same, sorted: comparable across presentations whose H
    /// coordinates differ by an automorphism.
    pub fn class_multiset(&self) -> Vec<String> {
        let mut v = self.polynomials();
        v.sort();
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.input.is_empty() {
            out += &format!("input: {}\n", self.input);
        }
        out += &format!("H: {}  kappa order: {}  m: {}\n", self.h, self.kappa_order, self.m);
        if let Some(k) = self.deleted_column {
            out += &format!("deleted column: {k}\n");
        }
        out += &format!("verdict: {}\n", serde_json::to_value(self.verdict).unwrap().as_str().unwrap());
        for c in &self.characters {
            out += &format!("{}: {}\n", c.character, c.polynomial);
        }
        if let Some(f) = &self.fiberedness {
            out += &format!("fiberedness: {f}\n");
        }
        if let Some(r) = &self.reciprocity {
            out += &format!("reciprocity: {}\n", r.iter().all(|&b| b));
        }
        if let Some(s) = &self.slice {
            out += &format!("slice: {s}\n");
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

/// Fiberedness is only ever "consistent" or not: leading and trailing
/// coefficients of every character determinant must be algebraic-integer
/// units.
pub(crate) fn fiberedness_note(dets: &[CharacterDet]) -> String {
    for d in dets {
        for (end, c) in [("leading", d.det.leading()), ("trailing", d.det.trailing())] {
            if let Some(c) = c {
                if !c.is_integral_unit() {
                    return format!(
                        "not consistent with fibered: {} has {end} coefficient {}, not an integral unit",
                        d.character,
                        c.render()
                    );
                }
            }
        }
    }
    "consistent with fibered: leading and trailing coefficients are units for every character".into()
}
