mod common;

use common::*;
use k1alex::coeff::rat;
use k1alex::groupring::{FiniteAbelian, GroupElem, GroupRingElem};
use k1alex::invariants::{afw_class, build_metabelian_rep, phi_class, TwistedRep};
use k1alex::presentations::{
    parse_braid, seifert_presentation, two_bridge_presentation, wirtinger_from_braid, Presentation, SeifertData,
};

fn classical_det(p: &Presentation) -> k1alex::coeff::Laurent<k1alex::coeff::Cyclotomic> {
    let rep = TwistedRep::trivial(p).unwrap();
    let r = phi_class(p, &rep, p.ngens() - 1, 32).unwrap();
    assert_eq!(r.dets.len(), 1);
    r.dets[0].det.clone()
}

#[test]
fn oracle_self_check() {
    // trefoil and figure-eight by hand
    assert_eq!(seifert_alexander(&[vec![-1, 1], vec![0, -1]]), vec![1, -1, 1]);
    assert_eq!(seifert_alexander(&[vec![1, 1], vec![0, -1]]), vec![-1, 3, -1]);
    // Res(t - a, t - b) = a - b up to sign; Res(t^2 - t + 1, 1 + t) = 3
    assert_eq!(resultant(&[-2, 1], &[-5, 1]).abs(), 3);
    assert_eq!(resultant(&[1, -1, 1], &[1, 1]).abs(), 3);
}

#[test]
fn braid_closures_match_seifert_forms() {
    let cases: [(&str, Vec<Vec<i64>>); 2] =
        [("[1,1,1]", vec![vec![-1, 1], vec![0, -1]]), ("[1,-2,1,-2]", vec![vec![1, 1], vec![0, -1]])];
    for (braid, v) in cases {
        let (letters, n) = parse_braid(braid).unwrap();
        let p = wirtinger_from_braid(&letters, n).unwrap();
        assert!(same_class_as(&seifert_alexander(&v), &classical_det(&p)), "{braid}");
    }
}

#[test]
fn two_bridge_family_matches_seifert_forms() {
    for m in 1..=3 {
        for n in [-3, -2, -1, 1, 2, 3] {
            let p = two_bridge_presentation(m, n).unwrap();
            let oracle = seifert_alexander(&two_bridge_seifert(m, n));
            assert_eq!(oracle, vec![-m * n, 2 * m * n + 1, -m * n]);
            assert!(same_class_as(&oracle, &classical_det(&p)), "K({m},{n})");
        }
    }
}

#[test]
fn seifert_route_matches_seifert_forms() {
    for (data, v) in [
        (SeifertData::trefoil(), vec![vec![-1, 1], vec![0, -1]]),
        (SeifertData::figure_eight(), vec![vec![1, 1], vec![0, -1]]),
    ] {
        let rep = TwistedRep::trivial(&seifert_presentation(&data)).unwrap();
        let r = afw_class(&data, &rep, 32).unwrap();
        assert!(same_class_as(&seifert_alexander(&v), &r.dets[0].det));
    }
}

#[test]
fn cover_torsion_order_is_a_resultant() {
    let knots: [(&str, Presentation); 3] = [
        ("trefoil", wirtinger_from_braid(&[1, 1, 1], 2).unwrap()),
        ("figure-eight", two_bridge_presentation(1, 1).unwrap()),
        ("K(2,1)", two_bridge_presentation(2, 1).unwrap()),
    ];
    for (name, p) in knots {
        let delta = {
            let d = classical_det(&p);
            let terms = rational_terms(&d).unwrap();
            let lo = terms[0].0;
            let mut v = vec![0i64; (terms.last().unwrap().0 - lo + 1) as usize];
            for (e, c) in terms {
                assert!(c.is_integer());
                v[(e - lo) as usize] = i64::try_from(c.to_integer()).unwrap();
            }
            v
        };
        for m in 2..=4 {
            let expected = resultant(&delta, &cyclic_sum(m)).unsigned_abs() as u64;
            let rep = build_metabelian_rep(&p, m).unwrap();
            assert_eq!(rep.h().order(), expected, "{name} m={m}");
        }
    }
}

#[test]
fn known_cover_homology() {
    let tref = wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
    assert_eq!(build_metabelian_rep(&tref, 2).unwrap().h().to_string(), "Z/3");
    assert_eq!(build_metabelian_rep(&tref, 3).unwrap().h().to_string(), "Z/2 + Z/2");
    let fig8 = two_bridge_presentation(1, 1).unwrap();
    assert_eq!(build_metabelian_rep(&fig8, 2).unwrap().h().to_string(), "Z/5");
    assert_eq!(build_metabelian_rep(&fig8, 3).unwrap().h().to_string(), "Z/4 + Z/4");
}

#[test]
fn group_ring_units_match_regular_determinant() {
    let groups = [FiniteAbelian::cyclic(3), FiniteAbelian::cyclic(4), FiniteAbelian::new(vec![2, 2]).unwrap()];
    for h in groups {
        let els = h.elements();
        // every element of the form a + b g with small a, b
        for g in &els {
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    let mut x = GroupRingElem::zero();
                    x.add_term(h.identity(), rat(a));
                    x.add_term(g.clone(), rat(b));
                    let det = rational_det(regular_matrix(&x, &h));
                    assert_eq!(det, character_norm(&x, &h), "{h} {}", x.render());
                    let unit = det != rat(0);
                    assert_eq!(x.is_unit(&h), unit, "{h} {}", x.render());
                    match x.inverse(&h) {
                        Some(y) => {
                            assert!(unit);
                            assert_eq!(x.mul(&y, &h), GroupRingElem::one(&h));
                        }
                        None => assert!(!unit),
                    }
                }
            }
        }
    }
}

#[test]
fn one_minus_generator_is_a_zero_divisor() {
    let h = FiniteAbelian::cyclic(5);
    let x = GroupRingElem::one(&h).sub(&GroupRingElem::group_elem(GroupElem(vec![1])));
    assert_eq!(rational_det(regular_matrix(&x, &h)), rat(0));
    assert!(x.inverse(&h).is_none());
}
