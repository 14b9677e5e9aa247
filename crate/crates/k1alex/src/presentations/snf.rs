use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// free_rank copies of Z plus Z/d_1 + ... with d_1 | d_2 | ..., d_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal D with P A Q = D. Only the column transform Q and its
/// inverse are kept, which is what coordinates need.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub q: Vec<Vec<BigInt>>,
    pub q_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    q: Vec<Vec<BigInt>>,
    q_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// col_j -= f * col_t
    fn col_op(&mut self, j: usize, t: usize, f: &BigInt) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            let v = &row[t] * f;
            row[j] -= v;
        }
        let rj = self.q_inv[j].clone();
        for (x, y) in self.q_inv[t].iter_mut().zip(rj) {
            *x += y * f;
        }
    }

    /// row_i -= f * row_t
    fn row_op(&mut self, i: usize, t: usize, f: &BigInt) {
        let rt = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(rt) {
            *x -= y * f;
        }
    }
}

/// Smith normal form over Z, pivoting on minimal absolute value.
pub fn smith_normal_form(a: Vec<Vec<BigInt>>, ncols: usize) -> SmithForm {
    let nrows = a.len();
    let mut w = Work { a, q: identity(ncols), q_inv: identity(ncols) };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.a.swap(t, pi);
        if pj != t {
            w.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if !w.a[i][t].is_zero() {
                    let f = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_op(i, t, &f);
                    dirty |= !w.a[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !w.a[t][j].is_zero() {
                    let f = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_op(j, t, &f);
                    dirty |= !w.a[t][j].is_zero();
                }
            }
            if dirty {
                // move the smallest remainder in row t / column t to the pivot
                let mut best = (t, t);
                for i in t + 1..nrows {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..ncols {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.a.swap(t, best.0);
                } else if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility: fold an offending row into row t
            let p = w.a[t][t].clone();
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let f = -BigInt::one();
                    w.row_op(t, i, &f);
                }
                None => break,
            }
        }
        diag.push(w.a[t][t].abs());
        t += 1;
    }
    SmithForm { diag, q: w.q, q_inv: w.q_inv }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coord {
    Trivial,
    Torsion(usize),
    Free(usize),
}

/// Abelianization of a presentation with its coordinate map.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub invariants: AbelianInvariants,
    smith: SmithForm,
    coords: Vec<Coord>,
}

impl Abelianization {
    /// Rows are exponent-sum vectors of relators over `ngens` generators.
    pub fn from_relation_matrix(rows: Vec<Vec<i64>>, ngens: usize) -> Self {
        let a = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let smith = smith_normal_form(a, ngens);
        let mut coords = Vec::with_capacity(ngens);
        let (mut nfree, mut torsion) = (0, Vec::new());
        for j in 0..ngens {
            let d = smith.diag.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                coords.push(Coord::Free(nfree));
                nfree += 1;
            } else if d.is_one() {
                coords.push(Coord::Trivial);
            } else {
                coords.push(Coord::Torsion(torsion.len()));
                torsion.push(d.to_u64().expect("torsion coefficient fits in u64"));
            }
        }
        Abelianization { invariants: AbelianInvariants { free_rank: nfree, torsion }, smith, coords }
    }

    /// (free coordinates, torsion coordinates) of an exponent-sum vector.
    pub fn coordinates(&self, v: &[i64]) -> (Vec<i64>, Vec<u64>) {
        let n = v.len();
        let mut free = vec![0i64; self.invariants.free_rank];
        let mut tors = vec![0u64; self.invariants.torsion.len()];
        for (j, c) in self.coords.iter().enumerate() {
            if *c == Coord::Trivial {
                continue;
            }
            let mut s = BigInt::zero();
            for (i, &x) in v.iter().enumerate().take(n) {
                if x != 0 {
                    s += &self.smith.q[i][j] * x;
                }
            }
            match *c {
                Coord::Free(k) => free[k] = s.to_i64().expect("free coordinate fits in i64"),
                Coord::Torsion(k) => {
                    let d = BigInt::from(self.invariants.torsion[k]);
                    tors[k] = s.mod_floor(&d).to_u64().unwrap();
                }
                Coord::Trivial => unreachable!(),
            }
        }
        (free, tors)
    }

    /// An exponent vector whose class is the k-th torsion generator.
    pub fn torsion_generator(&self, k: usize) -> Vec<i64> {
        let j = self.coords.iter().position(|c| *c == Coord::Torsion(k)).expect("torsion index in range");
        self.smith.q_inv[j].iter().map(|x| x.to_i64().expect("fits in i64")).collect()
    }
}
