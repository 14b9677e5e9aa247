//! Free-group words and Fox calculus.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range")]
    BadIndex(usize),
}

/// Ordered, uniquely named generators of a free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    names: Vec<String>,
}

pub fn valid_generator_name(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic())
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Generators {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !valid_generator_name(&n) {
                return Err(WordError::BadGeneratorName(n));
            }
            if out.contains(&n) {
                return Err(WordError::DuplicateGenerator(n));
            }
            out.push(n);
        }
        Ok(Generators { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Append a generator, returning its index.
    pub fn push(&mut self, name: impl Into<String>) -> Result<usize, WordError> {
        let name = name.into();
        if !valid_generator_name(&name) {
            return Err(WordError::BadGeneratorName(name));
        }
        if self.names.contains(&name) {
            return Err(WordError::DuplicateGenerator(name));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// A name not yet used, built from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| self.index(n).is_none())
            .unwrap()
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.gen, self.inv).cmp(&(other.gen, other.inv))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Freely reduced word. Ordered ShortLex.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter::pos(i)])
    }

    pub fn gen_inv(i: usize) -> Self {
        Word(vec![Letter::neg(i)])
    }

    /// Build from arbitrary letters, freely reducing.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// From (generator, exponent) pairs; exponents expand eagerly.
    pub fn from_powers(pairs: &[(usize, i64)]) -> Self {
        Self::from_letters(pairs.iter().flat_map(|&(g, e)| {
            let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &l in &o.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// x w x^-1.
    pub fn conjugate(&self, x: &Word) -> Word {
        x.mul(self).mul(&x.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0; ngens];
        for l in &self.0 {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Replace each generator by a word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inv {
                for &m in img.0.iter().rev() {
                    w.push(m.inverse());
                }
            } else {
                for &m in &img.0 {
                    w.push(m);
                }
            }
        }
        w
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn render(&self, gens: &Generators) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.sign();
            let name = gens.name(l.gen);
            parts.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inv { format!("g{}^-1", l.gen) } else { format!("g{}", l.gen) })
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// Parse `x1 x2^-1 x1^3`; `1` denotes the identity.
pub fn parse_word(text: &str, gens: &Generators) -> Result<Word, WordError> {
    let mut w = Word::identity();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e.parse().map_err(|_| WordError::MalformedToken(tok.to_string()))?;
                (n, e)
            }
            None => (tok, 1),
        };
        if !valid_generator_name(name) {
            return Err(WordError::MalformedToken(tok.to_string()));
        }
        let g = gens
            .index(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        let l = if exp < 0 { Letter::neg(g) } else { Letter::pos(g) };
        for _ in 0..exp.unsigned_abs() {
            w.push(l);
        }
    }
    Ok(w)
}

/// Element of Q[F]: finitely many words with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeRingElem {
    terms: BTreeMap<Word, Rational>,
}

impl FreeRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeRingElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// w * self.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            out.add_term(w.mul(u), a.clone());
        }
        out
    }

    pub fn render(&self, gens: &Generators) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let cs = if c.is_negative() { format!("({c})") } else { c.to_string() };
                match (w.is_identity(), c.is_one()) {
                    (true, _) => cs,
                    (false, true) => w.render(gens),
                    (false, false) => format!("{cs}*{}", w.render(gens)),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for FreeRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// The Fox derivative d w / d x_i, by one left-to-right scan keeping the
/// running prefix: x_i contributes +prefix, x_i^-1 contributes
/// -prefix x_i^-1.
pub fn fox_derivative(w: &Word, i: usize) -> FreeRingElem {
    let mut acc = FreeRingElem::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.gen == i && !l.inv {
            acc.add_term(prefix.clone(), Rational::one());
        }
        prefix.push(l);
        if l.gen == i && l.inv {
            acc.add_term(prefix.clone(), -Rational::one());
        }
    }
    acc
}

/// Sum_j (d r / d x_j)(x_j - 1) == r - 1.
pub fn fundamental_formula_check(r: &Word, ngens: usize) -> bool {
    let mut lhs = FreeRingElem::zero();
    for j in 0..ngens {
        let xj_minus_1 = FreeRingElem::from_word(Word::gen(j)).sub(&FreeRingElem::one());
        lhs = lhs.add(&fox_derivative(r, j).mul(&xj_minus_1));
    }
    lhs == FreeRingElem::from_word(r.clone()).sub(&FreeRingElem::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Generators {
        Generators::new(["x", "y"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = Generators::new(["x1", "x2"]).unwrap();
        assert_eq!(parse_word("x1 x2^-1 x1", &g).unwrap().len(), 3);
        assert!(parse_word("x1 x1^-1", &g).unwrap().is_identity());
        assert!(parse_word("x1^0", &g).unwrap().is_identity());
        assert_eq!(parse_word("x1^3", &g).unwrap().len(), 3);
        assert_eq!(parse_word("x1^-2", &g).unwrap(), Word::gen_inv(0).pow(2));
        assert_eq!(parse_word("x3", &g), Err(WordError::UnknownGenerator("x3".into())));
        assert_eq!(parse_word("x1^a", &g), Err(WordError::MalformedToken("x1^a".into())));
    }

    #[test]
    fn printing_round_trips() {
        let g = xy();
        for s in ["x y^-1 x", "x^3 y^-2", "1", "y x^-1 y^2 x"] {
            let w = parse_word(s, &g).unwrap();
            assert_eq!(w.render(&g), s);
            assert_eq!(parse_word(&w.render(&g), &g).unwrap(), w);
        }
    }

    #[test]
    fn word_op_examples() {
        let g = xy();
        let x = Word::gen(0);
        let y = Word::gen(1);
        assert_eq!(y.conjugate(&x), parse_word("x y x^-1", &g).unwrap());
        assert_eq!(x.mul(&y).pow(2), parse_word("x y x y", &g).unwrap());
        let w = parse_word("x y^-1", &g).unwrap().pow(2).mul(&parse_word("x^-1 y", &g).unwrap().pow(2));
        assert_eq!(w.len(), 8);
        assert_eq!(w.pow(-3), w.pow(3).inverse());
    }

    #[test]
    fn fox_examples() {
        let g = xy();
        let d = fox_derivative(&parse_word("x y", &g).unwrap(), 0);
        assert_eq!(d, FreeRingElem::one());
        let d = fox_derivative(&Word::gen_inv(0), 0);
        assert_eq!(d, FreeRingElem::monomial(Word::gen_inv(0), -Rational::one()));
        let d = fox_derivative(&parse_word("x y^-1 x^-1 y", &g).unwrap(), 0);
        let expect = FreeRingElem::one().sub(&FreeRingElem::from_word(parse_word("x y^-1 x^-1", &g).unwrap()));
        assert_eq!(d, expect);
        assert_eq!(d.render(&g), "1 + (-1)*x y^-1 x^-1");
    }

    #[test]
    fn fundamental_formula_examples() {
        let g = xy();
        assert!(fundamental_formula_check(&Word::gen(0), 2));
        assert!(fundamental_formula_check(&Word::identity(), 2));
        assert!(fundamental_formula_check(&parse_word("x y x^-1 y^-1", &g).unwrap(), 2));
    }
}
