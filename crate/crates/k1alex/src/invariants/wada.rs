//! Wada's twisted polynomial for a representation into GL(n, Q), with
//! each generator x_i sent to X_i t^(winding).

use num_traits::{One, Zero};
use serde::Serialize;

use super::InvariantError;
use crate::coeff::{rat, Laurent, RatFunc, Rational};
use crate::presentations::Presentation;
use crate::upsilon::bareiss_det;
use crate::words::{fox_derivative, Word};

pub type RationalMatrix = Vec<Vec<Rational>>;

fn identity(n: usize) -> RationalMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect()).collect()
}

fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

fn mat_inverse(a: &RationalMatrix) -> Option<RationalMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let d = &f * &m[c][j];
                    m[r][j] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_det(a: &RationalMatrix) -> Rational {
    let rows = a.iter().map(|r| r.iter().map(|x| Laurent::constant(x.clone())).collect()).collect();
    bareiss_det(rows, rat(1)).coeff(0).cloned().unwrap_or_else(Rational::zero)
}

/// Matrices from JSON: a list of square matrices, or an object with a
/// `generators` list. Entries are integers or strings like "-3/4".
pub fn parse_matrices(text: &str) -> Result<Vec<RationalMatrix>, InvariantError> {
    let bad = |m: &str| InvariantError::BadMatrices(m.to_string());
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let list = match &v {
        serde_json::Value::Object(o) => o.get("generators").ok_or_else(|| bad("missing `generators`"))?,
        other => other,
    };
    let entry = |x: &serde_json::Value| -> Result<Rational, InvariantError> {
        match x {
            serde_json::Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| bad("non-integer number; use \"p/q\"")),
            serde_json::Value::String(s) => s.trim().parse::<Rational>().map_err(|_| bad(&format!("bad rational `{s}`"))),
            _ => Err(bad("entries must be integers or strings")),
        }
    };
    let mats = list
        .as_array()
        .ok_or_else(|| bad("expected a list of matrices"))?
        .iter()
        .map(|m| {
            m.as_array()
                .ok_or_else(|| bad("matrix must be a list of rows"))?
                .iter()
                .map(|r| r.as_array().ok_or_else(|| bad("row must be a list"))?.iter().map(entry).collect())
                .collect::<Result<RationalMatrix, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = mats.first().map_or(0, |m| m.len());
    if n == 0 || mats.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
        return Err(bad("matrices must all be n x n with n >= 1"));
    }
    Ok(mats)
}

#[derive(Clone, Debug, Serialize)]
pub struct WadaResult {
    /// det of the Jacobian with column block k removed, normalized.
    pub det_class: String,
    /// det(A_k) / det(X_k t^(w_k) - 1), reduced.
    pub wada: String,
    pub deleted_column: usize,
    pub warnings: Vec<String>,
}

pub fn wada_polynomial(p: &Presentation, mats: &[RationalMatrix], k: usize) -> Result<WadaResult, InvariantError> {
    if mats.len() != p.ngens() {
        return Err(InvariantError::ImageCount { got: mats.len(), expected: p.ngens() });
    }
    if k >= p.ngens() {
        return Err(InvariantError::BadColumn(k, p.ngens()));
    }
    let n = mats[0].len();
    let windings = p.windings()?;
    let inverses = mats
        .iter()
        .map(mat_inverse)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| InvariantError::BadMatrices("singular generator image".into()))?;
    let mut warnings = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        if !mat_det(m).is_one() {
            warnings.push(format!("image of {} has determinant {} != 1", p.gens.name(i), mat_det(m)));
        }
    }
    let eval = |w: &Word| {
        w.letters().iter().fold(identity(n), |acc, l| {
            mat_mul(&acc, if l.inv { &inverses[l.gen] } else { &mats[l.gen] })
        })
    };
    for (i, r) in p.relators.iter().enumerate() {
        if eval(r) != identity(n) {
            return Err(InvariantError::NotHomomorphism(i));
        }
    }
    let cols: Vec<usize> = (0..p.ngens()).filter(|&j| j != k).collect();
    let size = p.relators.len() * n;
    let mut big = vec![vec![Laurent::<Rational>::zero(); cols.len() * n]; size];
    for (ri, r) in p.relators.iter().enumerate() {
        for (cj, &j) in cols.iter().enumerate() {
            for (w, c) in fox_derivative(r, j).terms() {
                let e = w.letters().iter().map(|l| l.sign() * windings[l.gen]).sum::<i64>();
                let m = eval(w);
                for a in 0..n {
                    for b in 0..n {
                        if !m[a][b].is_zero() {
                            let cell = &mut big[ri * n + a][cj * n + b];
                            *cell = cell.add(&Laurent::monomial(e, c * &m[a][b]));
                        }
                    }
                }
            }
        }
    }
    if big.iter().any(|r| r.len() != size) {
        return Err(InvariantError::DeficiencyNotOne(p.deficiency()));
    }
    let det = bareiss_det(big, rat(1));
    let xk: Vec<Vec<Laurent<Rational>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let x = Laurent::monomial(windings[k], mats[k][a][b].clone());
                    if a == b {
                        x.sub(&Laurent::constant(rat(1)))
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let den = bareiss_det(xk, rat(1));
    let det_class = det.normalize_class().map_or_else(|_| "0".to_string(), |c| c.to_string());
    let wada = if den.is_zero() {
        warnings.push("det(X_k t^w - 1) vanishes; Wada quotient undefined".into());
        "undefined".into()
    } else {
        let q = RatFunc::new(det, den)?;
        let num = q.num().normalize_class().map_or_else(|_| "0".to_string(), |c| c.to_string());
        format!("({num}) / ({})", q.den())
    };
    Ok(WadaResult { det_class, wada, deleted_column: k, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::wirtinger_from_braid;

    #[test]
    fn trivial_one_dimensional_trefoil() {
        let p = wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        let mats = parse_matrices("[[[1]], [[1]], [[1]]]").unwrap();
        let r = wada_polynomial(&p, &mats, 0).unwrap();
        assert_eq!(r.det_class, "1 + (-1)*t + t^2");
        assert_eq!(r.wada, "(1 + (-1)*t + t^2) / ((-1) + t)");
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        assert_eq!(mat_mul(&a, &mat_inverse(&a).unwrap()), identity(2));
        assert_eq!(mat_det(&a), rat(1));
    }
}
