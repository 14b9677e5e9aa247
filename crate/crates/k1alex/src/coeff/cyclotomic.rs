use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CoeffError, Field, Rational};

static PHI_CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// The n-th cyclotomic polynomial, coefficients low to high. Cached.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of conductor 0");
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every proper divisor's cyclotomic polynomial
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = int_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    cache
        .lock()
        .expect("phi cache poisoned")
        .insert(n, p.clone());
    p
}

fn int_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !Zero::is_zero(&c) {
            for j in 0..=db {
                r[i + j] -= &c * &b[j];
            }
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Element of Q(zeta_n) as a residue modulo Phi_n; `c.len() == phi(n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic { n, c: vec![Rational::zero(); euler_phi(n)] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u32, q: Rational) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = q;
        z
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::reduce(n, v)
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(n, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn reduce(n: u32, mut v: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if Zero::is_zero(&c) {
                    continue;
                }
                for j in 0..d {
                    let pj = &phi[j];
                    if !Zero::is_zero(pj) {
                        v[i - d + j] -= &c * Rational::from_integer(pj.clone());
                    }
                }
            }
        }
        v.resize(d, Rational::zero());
        Cyclotomic { n, c: v }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "cyclotomic conductor mismatch {} vs {}",
            self.n, other.n
        );
    }

    /// Field norm down to Q, as the determinant of multiplication by self.
    pub fn norm(&self) -> Rational {
        let d = self.c.len();
        let mut m: Vec<Vec<Rational>> = Vec::with_capacity(d);
        for k in 0..d {
            m.push(self.mul(&Self::zeta_pow(self.n, k as i64)).c);
        }
        rational_det(m)
    }

    /// True when the element is an algebraic integer unit of Z[zeta].
    pub fn is_integral_unit(&self) -> bool {
        self.c.iter().all(|q| q.is_integer()) && One::is_one(&self.norm().abs())
    }

    /// Apply the Galois automorphism zeta -> zeta^k, gcd(k, n) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let mut v = vec![Rational::zero(); self.n as usize];
        for (i, c) in self.c.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(self.n as i64) as usize;
            v[e] += c;
        }
        Self::reduce(self.n, v)
    }
}

pub(crate) fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !Zero::is_zero(&m[r][col])) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            if Zero::is_zero(&m[r][col]) {
                continue;
            }
            let f = &m[r][col] / &piv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

fn poly_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if !Zero::is_zero(&c) {
            for j in 0..=db {
                r[i + j] -= &c * &b[j];
            }
        }
        q[i] = c;
    }
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !Zero::is_zero(y) {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Self::zero(self.n)
    }
    fn one_like(&self) -> Self {
        Self::one(self.n)
    }
    fn vanishes(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
        Cyclotomic { n: self.n, c }
    }
    fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        Cyclotomic { n: self.n, c }
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.c.len() == 1 {
            return Cyclotomic { n: self.n, c: vec![&self.c[0] * &other.c[0]] };
        }
        Self::reduce(self.n, poly_mul(&self.c, &other.c))
    }
    fn neg(&self) -> Self {
        Cyclotomic { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }
    fn inv(&self) -> Result<Self, CoeffError> {
        if self.vanishes() {
            return Err(CoeffError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.n, q.recip()));
        }
        // extended Euclid: s*self + t*phi = g, g a nonzero constant
        let phi: Vec<Rational> = cyclotomic_poly(self.n)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut a = self.c.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_n is irreducible, so the last nonzero remainder is a constant
        let g = r1[0].recip();
        Ok(Self::reduce(self.n, s1.into_iter().map(|c| c * &g).collect()))
    }
    fn conj(&self) -> Self {
        self.galois(-1)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        Self::from_rational(self.n, q.clone())
    }
    fn render(&self) -> String {
        match self.as_rational() {
            Some(q) if q.is_negative() => format!("({})", q),
            Some(q) => q.to_string(),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let parts: Vec<String> = self.c.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]@zeta({})", parts.join(","), self.n)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
