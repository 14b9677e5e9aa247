//! Finite abelian groups, their rational group rings, automorphisms and
//! characters.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coeff::{Cyclotomic, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupRingError {
    #[error("invariant factors {0:?} do not form a divisibility chain of integers >= 2")]
    BadInvariantFactors(Vec<u64>),
    #[error("element {0:?} does not belong to the group")]
    MismatchedGroup(Vec<u64>),
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("endomorphism is not bijective")]
    NotBijective,
    #[error("cannot parse group description `{0}`")]
    Parse(String),
}

/// Element of a finite abelian group: exponents reduced modulo the
/// invariant factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElem(pub Vec<u64>);

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Z/d_1 + ... + Z/d_r with d_1 | d_2 | ... and every d_i >= 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelian {
    factors: Vec<u64>,
}

impl FiniteAbelian {
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupRingError> {
        let ok = factors.iter().all(|&d| d >= 2)
            && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(GroupRingError::BadInvariantFactors(factors));
        }
        Ok(FiniteAbelian { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelian { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelian { factors: vec![n] }
        }
    }

    /// Parse `Z/3 + Z/9`, optionally prefixed by `H:`; `1` is trivial.
    pub fn parse(text: &str) -> Result<Self, GroupRingError> {
        let body = text.trim();
        let body = body.strip_prefix("H:").unwrap_or(body).trim();
        if body == "1" || body == "0" || body.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in body.split('+') {
            let d = part
                .trim()
                .strip_prefix("Z/")
                .and_then(|d| d.trim().parse::<u64>().ok())
                .ok_or_else(|| GroupRingError::Parse(text.to_string()))?;
            factors.push(d);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.factors[i];
        GroupElem(v)
    }

    pub fn reduce(&self, v: &[i64]) -> GroupElem {
        GroupElem(
            v.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
                .collect(),
        )
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(a.0.iter().zip(&self.factors).map(|(x, d)| (d - x) % d).collect())
    }

    pub fn scale(&self, a: &GroupElem, k: i64) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElem) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / x.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElem> {
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElem).collect()
    }

    /// The full dual group, sorted by conductor then dual exponent vector.
    pub fn characters(&self) -> Vec<Character> {
        let mut chars: Vec<Character> = self.elements().into_iter().map(|c| Character::new(self, c)).collect();
        chars.sort_by(|a, b| (a.conductor, &a.dual).cmp(&(b.conductor, &b.dual)));
        chars
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Group automorphism given by the images of the canonical generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    images: Vec<GroupElem>,
    order: u32,
}

impl Automorphism {
    pub fn identity(h: &FiniteAbelian) -> Self {
        Automorphism { images: (0..h.rank()).map(|i| h.generator(i)).collect(), order: 1 }
    }

    /// Checks well-definedness, bijectivity, and computes the order.
    pub fn new(h: &FiniteAbelian, images: Vec<GroupElem>) -> Result<Self, GroupRingError> {
        if images.len() != h.rank() {
            return Err(GroupRingError::NotHomomorphism);
        }
        for (img, &d) in images.iter().zip(h.factors()) {
            if !h.contains(img) {
                return Err(GroupRingError::MismatchedGroup(img.0.clone()));
            }
            if h.scale(img, d as i64) != h.identity() {
                return Err(GroupRingError::NotHomomorphism);
            }
        }
        let mut a = Automorphism { images, order: 0 };
        let mut seen: Vec<GroupElem> = h.elements().iter().map(|g| a.apply(h, g)).collect();
        seen.sort();
        seen.dedup();
        if seen.len() as u64 != h.order() {
            return Err(GroupRingError::NotBijective);
        }
        let gens: Vec<GroupElem> = (0..h.rank()).map(|i| h.generator(i)).collect();
        let mut cur = gens.clone();
        let mut k = 1;
        loop {
            cur = cur.iter().map(|g| a.apply(h, g)).collect();
            if cur == gens {
                break;
            }
            k += 1;
        }
        a.order = k;
        Ok(a)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn images(&self) -> &[GroupElem] {
        &self.images
    }

    pub fn apply(&self, h: &FiniteAbelian, g: &GroupElem) -> GroupElem {
        let mut acc = h.identity();
        for (x, img) in g.0.iter().zip(&self.images) {
            acc = h.add(&acc, &h.scale(img, *x as i64));
        }
        acc
    }

    /// kappa^k for any integer k.
    pub fn apply_pow(&self, h: &FiniteAbelian, g: &GroupElem, k: i64) -> GroupElem {
        let k = k.rem_euclid(self.order.max(1) as i64);
        let mut x = g.clone();
        for _ in 0..k {
            x = self.apply(h, &x);
        }
        x
    }
}

/// A homomorphism H -> Q(zeta_n)^x, generator i going to zeta_n^exps[i].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub conductor: u32,
    pub exps: Vec<u64>,
    /// Dual coordinates c: generator i goes to exp(2 pi i c_i / d_i).
    pub dual: GroupElem,
}

impl Character {
    pub fn new(h: &FiniteAbelian, dual: GroupElem) -> Self {
        let n = dual
            .0
            .iter()
            .zip(h.factors())
            .map(|(&c, &d)| d / c.gcd(&d))
            .fold(1u64, |acc, o| acc.lcm(&o));
        let exps = dual.0.iter().zip(h.factors()).map(|(&c, &d)| c * n / d).collect();
        Character { conductor: n as u32, exps, dual }
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    /// Exponent e with chi(g) = zeta_n^e.
    pub fn exponent_of(&self, g: &GroupElem) -> u64 {
        let n = self.conductor as u64;
        g.0.iter().zip(&self.exps).map(|(x, e)| x * e % n).sum::<u64>() % n
    }

    pub fn eval(&self, a: &GroupRingElem) -> Cyclotomic {
        let n = self.conductor;
        let mut v = vec![Rational::zero(); n as usize];
        for (g, c) in a.terms() {
            v[self.exponent_of(g) as usize] += c;
        }
        Cyclotomic::from_coeffs(n, v)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", self.dual)
    }
}

/// Element of Q[H]: finitely supported map H -> Q without zero values.
#[derive(Clone, PartialEq, Eq, Default, Debug, PartialOrd, Ord)]
pub struct GroupRingElem {
    terms: BTreeMap<GroupElem, Rational>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(h: &FiniteAbelian, c: Rational) -> Self {
        Self::monomial(h.identity(), c)
    }

    pub fn one(h: &FiniteAbelian) -> Self {
        Self::scalar(h, Rational::one())
    }

    pub fn group_elem(g: GroupElem) -> Self {
        Self::monomial(g, Rational::one())
    }

    pub fn monomial(g: GroupElem, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElem, Rational)>) -> Self {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &GroupElem) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check(&self, h: &FiniteAbelian) -> Result<(), GroupRingError> {
        match self.terms.keys().find(|g| !h.contains(g)) {
            Some(g) => Err(GroupRingError::MismatchedGroup(g.0.clone())),
            None => Ok(()),
        }
    }

    pub fn add_term(&mut self, g: GroupElem, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (g, c) in &o.terms {
            self.add_term(g.clone(), c.clone());
        }
    }

    /// self += a * b, without building the product.
    pub fn add_product(&mut self, a: &Self, b: &Self, h: &FiniteAbelian) {
        for (g, x) in &a.terms {
            for (k, y) in &b.terms {
                self.add_term(h.add(g, k), x * y);
            }
        }
    }

    pub fn neg(&self) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, x)| (g.clone(), x * c)))
    }

    pub fn mul(&self, o: &Self, h: &FiniteAbelian) -> Self {
        let mut out = Self::zero();
        out.add_product(self, o, h);
        out
    }

    /// Translate by a group element: g * self.
    pub fn shift(&self, g: &GroupElem, h: &FiniteAbelian) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(k, c)| (h.add(g, k), c.clone())).collect() }
    }

    pub fn apply_kappa(&self, h: &FiniteAbelian, kappa: &Automorphism) -> Self {
        self.apply_kappa_pow(h, kappa, 1)
    }

    pub fn apply_kappa_pow(&self, h: &FiniteAbelian, kappa: &Automorphism, k: i64) -> Self {
        if k.rem_euclid(kappa.order().max(1) as i64) == 0 {
            return self.clone();
        }
        Self::from_terms(self.terms.iter().map(|(g, c)| (kappa.apply_pow(h, g, k), c.clone())))
    }

    /// g -> g^-1, extended linearly.
    pub fn bar(&self, h: &FiniteAbelian) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(g, c)| (h.neg(g), c.clone())).collect() }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// The inverse when every character value is nonzero, reconstructed by
    /// inverse Fourier transform over the dual group and verified.
    pub fn inverse(&self, h: &FiniteAbelian) -> Option<Self> {
        let n = h.exponent() as u32;
        let chars: Vec<Character> = h.elements().into_iter().map(|c| full_character(h, c)).collect();
        let mut inv_vals = Vec::with_capacity(chars.len());
        for chi in &chars {
            let v = chi.eval(self);
            if v.vanishes() {
                return None;
            }
            inv_vals.push(v.inv().ok()?);
        }
        let order = Rational::from_integer(h.order().into());
        let mut out = Self::zero();
        for g in h.elements() {
            let mut acc = Cyclotomic::zero(n);
            for (chi, iv) in chars.iter().zip(&inv_vals) {
                let e = chi.exponent_of(&h.neg(&g)) as i64;
                acc = acc.add(&iv.mul(&Cyclotomic::zeta_pow(n, e)));
            }
            let q = acc.as_rational().expect("inverse Fourier transform of a rational element is rational");
            out.add_term(g, q / &order);
        }
        (self.mul(&out, h) == Self::one(h)).then_some(out)
    }

    pub fn is_unit(&self, h: &FiniteAbelian) -> bool {
        h.characters().iter().all(|chi| !chi.eval(self).vanishes())
    }

    /// Some(g) when the element is a single group element with coefficient 1.
    pub fn as_group_elem(&self) -> Option<&GroupElem> {
        match self.terms.iter().next() {
            Some((g, c)) if self.terms.len() == 1 && c.is_one() => Some(g),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                let cs = if c.is_negative() { format!("({c})") } else { c.to_string() };
                if g.0.iter().all(|&x| x == 0) {
                    cs
                } else if c.is_one() {
                    g.to_string()
                } else {
                    format!("{cs}*{g}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Character with conductor fixed to the group exponent, so that all
/// values live in one field.
fn full_character(h: &FiniteAbelian, dual: GroupElem) -> Character {
    let n = h.exponent();
    let exps = dual.0.iter().zip(h.factors()).map(|(&c, &d)| c * n / d).collect();
    Character { conductor: n as u32, exps, dual }
}
