//! Wirtinger presentations of closed braids.

use super::{Kind, Presentation, PresentationError};
use crate::words::{Generators, Letter, Word};

/// Accepts `[1,-2,1]` (strand count inferred) or `3; s1 s2^-1 s1`.
pub fn parse_braid(text: &str) -> Result<(Vec<i32>, usize), PresentationError> {
    let text = text.trim();
    let bad = |msg: &str| PresentationError::Parse { line: 0, msg: format!("braid: {msg}") };
    if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let letters = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i32>().map_err(|_| bad(&format!("bad letter `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let n = letters.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(0) + 1;
        check_braid(&letters, n)?;
        return Ok((letters, n));
    }
    let (n, body) = text.split_once(';').ok_or_else(|| bad("expected `[..]` or `n; s1 s2^-1 ..`"))?;
    let n: usize = n.trim().parse().map_err(|_| bad("bad strand count"))?;
    let mut letters = Vec::new();
    for tok in body.split_whitespace() {
        let rest = tok.strip_prefix('s').ok_or_else(|| bad(&format!("bad token `{tok}`")))?;
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad(&format!("bad exponent in `{tok}`")))?),
            None => (rest, 1),
        };
        let idx: i32 = idx.parse().map_err(|_| bad(&format!("bad index in `{tok}`")))?;
        let sign = exp.signum();
        for _ in 0..exp.unsigned_abs() {
            letters.push(sign * idx);
        }
    }
    check_braid(&letters, n)?;
    Ok((letters, n))
}

fn check_braid(letters: &[i32], n: usize) -> Result<(), PresentationError> {
    if letters.is_empty() {
        return Err(PresentationError::EmptyBraid);
    }
    for &s in letters {
        if s == 0 || s.unsigned_abs() as usize >= n {
            return Err(PresentationError::BadBraidLetter(s, n));
        }
    }
    Ok(())
}

/// Number of components of the closure: cycles of the braid permutation.
pub fn braid_components(letters: &[i32], n: usize) -> usize {
    let mut perm: Vec<usize> = (0..n).collect();
    for &s in letters {
        let i = s.unsigned_abs() as usize;
        perm.swap(i - 1, i);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
        }
    }
    count
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct Crossing {
    sign: i32,
    // 0-indexed left position
    left: usize,
    a: usize,
    b: usize,
    c: usize,
}

/// Wirtinger presentation of the closure. The last crossing relator is
/// dropped; the longitude is set only when the closure is a knot.
pub fn wirtinger_from_braid(letters: &[i32], n: usize) -> Result<Presentation, PresentationError> {
    check_braid(letters, n)?;
    let mut labels: Vec<usize> = (0..n).collect();
    let mut next = n;
    let mut crossings = Vec::with_capacity(letters.len());
    for &s in letters {
        let left = s.unsigned_abs() as usize - 1;
        let (a, b) = (labels[left], labels[left + 1]);
        let c = next;
        next += 1;
        if s > 0 {
            // b passes under a and lands on the left as a b a^-1
            labels[left] = c;
            labels[left + 1] = a;
        } else {
            // a passes under b and lands on the right as b^-1 a b
            labels[left] = b;
            labels[left + 1] = c;
        }
        crossings.push(Crossing { sign: s.signum(), left, a, b, c });
    }
    let mut parent: Vec<usize> = (0..next).collect();
    for (p, &bottom) in labels.iter().enumerate() {
        let (x, y) = (find(&mut parent, p), find(&mut parent, bottom));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            parent[hi] = lo;
        }
    }
    let mut gen_of = vec![usize::MAX; next];
    let mut ngens = 0;
    for raw in 0..next {
        let root = find(&mut parent, raw);
        if gen_of[root] == usize::MAX {
            gen_of[root] = ngens;
            ngens += 1;
        }
        gen_of[raw] = gen_of[root];
    }
    let g = |raw: usize| Word::gen(gen_of[raw]);
    let mut relators: Vec<Word> = crossings
        .iter()
        .map(|x| {
            if x.sign > 0 {
                g(x.b).conjugate(&g(x.a)).mul(&g(x.c).inverse())
            } else {
                g(x.a).conjugate(&g(x.b).inverse()).mul(&g(x.c).inverse())
            }
        })
        .collect();
    relators.pop();
    let gens = Generators::new((1..=ngens).map(|i| format!("x{i}")))?;
    let mut p = Presentation::new(gens, relators, Kind::Wirtinger)?.with_meridian(Word::gen(0));
    if braid_components(letters, n) == 1 {
        p.longitude = Some(longitude(&crossings, n, &g));
    }
    Ok(p)
}

/// Follow the knot from top position 0; each undercrossing conjugates the
/// current arc, and those conjugators accumulate on the left.
fn longitude(crossings: &[Crossing], n: usize, g: &dyn Fn(usize) -> Word) -> Word {
    let mut acc = Word::identity();
    let mut writhe = 0i64;
    let mut pos = 0;
    for _ in 0..n {
        for x in crossings {
            let (under_from, under_to, conj) = if x.sign > 0 {
                (x.left + 1, x.left, g(x.a))
            } else {
                (x.left, x.left + 1, g(x.b).inverse())
            };
            if pos == under_from {
                acc = conj.mul(&acc);
                writhe += x.sign as i64;
                pos = under_to;
            } else if pos == under_to {
                pos = under_from;
            }
        }
        if pos == 0 {
            break;
        }
    }
    acc.mul(&Word::from_letters(std::iter::repeat_n(
        if writhe > 0 { Letter::neg(0) } else { Letter::pos(0) },
        writhe.unsigned_abs() as usize,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_braid("[1,-2,1,-2]").unwrap(), (vec![1, -2, 1, -2], 3));
        assert_eq!(parse_braid("3; s1 s2^-1 s1^2").unwrap(), (vec![1, -2, 1, 1], 3));
        assert_eq!(parse_braid("[]"), Err(PresentationError::EmptyBraid));
        assert_eq!(parse_braid("2; s2"), Err(PresentationError::BadBraidLetter(2, 2)));
    }

    #[test]
    fn trefoil_arcs() {
        let p = wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(p.ngens(), 3);
        assert_eq!(p.relators.len(), 2);
        let l = p.longitude.unwrap();
        assert!(l.exponent_sums(3).iter().sum::<i64>() == 0);
    }

    #[test]
    fn components() {
        assert_eq!(braid_components(&[1, 1], 2), 2);
        assert_eq!(braid_components(&[1, -2, 1, -2], 3), 1);
        let p = wirtinger_from_braid(&[1, 1], 2).unwrap();
        assert!(p.longitude.is_none());
        assert_eq!(p.abelianize().invariants.free_rank, 2);
    }

    #[test]
    fn unknot_closure() {
        let p = wirtinger_from_braid(&[1], 2).unwrap();
        assert_eq!(p.ngens(), 1);
        assert!(p.relators.is_empty());
        assert!(p.longitude.unwrap().is_identity());
    }
}
