//! Reidemeister–Schreier presentation of the m-fold cyclic cover, with
//! Schreier transversal 1, t, .., t^(m-1) for t the meridian generator.

use super::{Kind, Presentation, PresentationError};
use crate::words::{Generators, Letter, Word};

/// Cover generators: s(k, i) = t^k x_i t^-((k + w_i) mod m) for every
/// non-meridian x_i, ordered by i then k, followed by tbar = t^m.
#[derive(Clone, Debug)]
pub struct Cover {
    pub base: Presentation,
    pub m: usize,
    pub windings: Vec<i64>,
    pub meridian_gen: usize,
    pub presentation: Presentation,
    slot: Vec<Option<usize>>,
}

pub fn rs_cover(base: &Presentation, m: usize) -> Result<Cover, PresentationError> {
    if m == 0 {
        return Err(PresentationError::BadIndex(0));
    }
    let mg = base.meridian_gen()?;
    let windings = base.windings()?;
    if windings[mg] != 1 {
        return Err(PresentationError::WindingMismatch(format!("meridian winding {}", windings[mg])));
    }
    let mut names = Vec::new();
    let mut slot = vec![None; base.ngens()];
    for i in (0..base.ngens()).filter(|&i| i != mg) {
        slot[i] = Some(names.len());
        names.extend((0..m).map(|k| format!("{}_{k}", base.gens.name(i))));
    }
    let mut gens = Generators::new(names)?;
    let tbar_name = gens.fresh_name("mbar");
    gens.push(tbar_name)?;
    let mut cover = Cover {
        base: base.clone(),
        m,
        windings,
        meridian_gen: mg,
        presentation: Presentation::new(gens, vec![], Kind::Generic)?,
        slot,
    };
    let mut rels = Vec::with_capacity(base.relators.len() * m);
    for r in &base.relators {
        for k in 0..m {
            let (w, end) = cover.rewrite(r, k);
            debug_assert_eq!(end, k, "relators have winding zero");
            rels.push(w);
        }
    }
    cover.presentation.relators = rels;
    cover.presentation.meridian = Some(Word::gen(cover.tbar()));
    Ok(cover)
}

impl Cover {
    pub fn ngens(&self) -> usize {
        self.presentation.ngens()
    }

    pub fn tbar(&self) -> usize {
        self.ngens() - 1
    }

    /// Cover generator s(k, i); `None` for the meridian.
    pub fn gen(&self, k: usize, i: usize) -> Option<usize> {
        self.slot[i].map(|s| s + k % self.m)
    }

    fn coset(&self, c: i64) -> usize {
        c.rem_euclid(self.m as i64) as usize
    }

    /// Rewrite a base word read from coset `start`; returns the cover word
    /// and the final coset.
    pub fn rewrite(&self, w: &Word, start: usize) -> (Word, usize) {
        let mut out = Word::identity();
        let mut c = start;
        for l in w.letters() {
            let wi = self.windings[l.gen];
            if !l.inv {
                let next = self.coset(c as i64 + wi);
                match self.gen(c, l.gen) {
                    Some(s) => out.push(Letter::pos(s)),
                    None if c + 1 == self.m => out.push(Letter::pos(self.tbar())),
                    None => {}
                }
                c = next;
            } else {
                let prev = self.coset(c as i64 - wi);
                match self.gen(prev, l.gen) {
                    Some(s) => out.push(Letter::neg(s)),
                    None if prev + 1 == self.m => out.push(Letter::neg(self.tbar())),
                    None => {}
                }
                c = prev;
            }
        }
        (out, c)
    }

    /// Image of a cover word in the base group.
    pub fn project(&self, w: &Word) -> Word {
        let t = Word::gen(self.meridian_gen);
        let images: Vec<Word> = (0..self.ngens())
            .map(|g| {
                if g == self.tbar() {
                    return t.pow(self.m as i64);
                }
                let i = self.slot.iter().rposition(|s| s.is_some_and(|s| s <= g)).unwrap();
                let k = g - self.slot[i].unwrap();
                let back = self.coset(k as i64 + self.windings[i]) as i64;
                t.pow(k as i64).mul(&Word::gen(i)).mul(&t.pow(-back))
            })
            .collect();
        w.substitute(&images)
    }

    /// Deck transformation: conjugation by the meridian, rewritten from
    /// the base coset.
    pub fn deck(&self, w: &Word) -> Word {
        let t = Word::gen(self.meridian_gen);
        self.rewrite(&self.project(w).conjugate(&t), 0).0
    }
}
