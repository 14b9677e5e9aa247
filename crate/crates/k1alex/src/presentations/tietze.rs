//! Strong Tietze moves. Each keeps the group and the meridian; the result
//! is no longer assumed to be Wirtinger or Seifert.

use rand::Rng;

use super::{Kind, Presentation, PresentationError};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    /// r_i -> r_i^-1
    Invert(usize),
    /// r_i -> w r_i^-1 w^-1
    ConjugateInverse(usize, Word),
    /// r_i -> r_i r_j, i != j
    Multiply(usize, usize),
    /// new generator y with relator y w^-1
    AddGenerator(Word),
}

pub fn tietze_move(p: &Presentation, mv: &TietzeMove) -> Result<Presentation, PresentationError> {
    let nrel = p.relators.len();
    let check = |i: usize| if i < nrel { Ok(()) } else { Err(PresentationError::BadIndex(i)) };
    let check_word = |w: &Word| {
        if w.max_gen().is_some_and(|g| g >= p.ngens()) {
            Err(PresentationError::UndeclaredGenerator(nrel))
        } else {
            Ok(())
        }
    };
    let mut q = p.clone();
    match mv {
        TietzeMove::Invert(i) => {
            check(*i)?;
            q.relators[*i] = p.relators[*i].inverse();
        }
        TietzeMove::ConjugateInverse(i, w) => {
            check(*i)?;
            check_word(w)?;
            q.relators[*i] = p.relators[*i].inverse().conjugate(w);
        }
        TietzeMove::Multiply(i, j) => {
            check(*i)?;
            check(*j)?;
            if i == j {
                return Err(PresentationError::BadIndex(*j));
            }
            q.relators[*i] = p.relators[*i].mul(&p.relators[*j]);
        }
        TietzeMove::AddGenerator(w) => {
            check_word(w)?;
            let name = q.gens.fresh_name("y");
            let y = q.gens.push(name)?;
            q.relators.push(Word::gen(y).mul(&w.inverse()));
        }
    }
    q.kind = Kind::Generic;
    Ok(q)
}

fn random_word<R: Rng>(ngens: usize, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_letters((0..len).map(|_| {
        let g = rng.gen_range(0..ngens);
        if rng.gen_bool(0.5) {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    }))
}

/// A uniformly chosen applicable move with short random words.
pub fn random_move<R: Rng>(p: &Presentation, rng: &mut R) -> TietzeMove {
    let nrel = p.relators.len();
    let kinds = if nrel >= 2 { 4 } else if nrel == 1 { 3 } else { 1 };
    match rng.gen_range(0..kinds) {
        0 => TietzeMove::AddGenerator(random_word(p.ngens(), 3, rng)),
        1 => TietzeMove::Invert(rng.gen_range(0..nrel)),
        2 => TietzeMove::ConjugateInverse(rng.gen_range(0..nrel), random_word(p.ngens(), 3, rng)),
        _ => {
            let i = rng.gen_range(0..nrel);
            let j = (i + rng.gen_range(1..nrel)) % nrel;
            TietzeMove::Multiply(i, j)
        }
    }
}
