mod common;

use std::collections::BTreeMap;

use common::rank;
use klr::klr::{crossing, dot, graded_monomials, idempotent, minimal_transition, multiply, product, Element, Monomial};
use klr::quiver::Seq;
use num_rational::BigRational;

fn s(v: &[i32]) -> Seq {
    Seq::from_labels(v)
}

/// `1_{iij} = -δ T δ x_1 + x_2 δ T δ` with `T = (1_{iij} ← 1_{iji})(1_{iji} ← 1_{iij})`.
#[test]
fn iij_factorization() {
    for (a, b) in [(0, 1), (1, 0), (3, 2), (-1, 0)] {
        let i = s(&[a, a, b]);
        let j = s(&[a, b, a]);
        let t = multiply(&minimal_transition(&j, &i).unwrap(), &minimal_transition(&i, &j).unwrap()).unwrap();
        let d = crossing(1, &i).unwrap();
        let dtd = product(&[d.clone(), t, d]).unwrap();
        let lhs = multiply(&dot(2, &i).unwrap(), &dtd).unwrap().sub(&multiply(&dtd, &dot(1, &i).unwrap()).unwrap());
        assert_eq!(lhs, idempotent(&i), "i={i}");
    }
}

fn rows(elems: &[Element]) -> Vec<BTreeMap<Monomial, BigRational>> {
    elems.iter().map(|e| e.terms().clone()).collect()
}

/// Degree-zero elements of `1_i R 1_i` that pass through one of `via`.
fn through(i: &Seq, via: &[Seq], depth: i64) -> Vec<Element> {
    let nu = i.root();
    let mut out = Vec::new();
    for j in via {
        for d in -depth..=depth {
            let down = graded_monomials(&nu, i, j, d).unwrap();
            let up = graded_monomials(&nu, j, i, -d).unwrap();
            for p in &up {
                for q in &down {
                    out.push(multiply(&Element::from_monomial(p.clone()), &Element::from_monomial(q.clone())).unwrap());
                }
            }
        }
    }
    out
}

/// `1_{i_r i_{r+1} i_r i_{r+3}}` with `i_{r+1} — i_r — i_{r+3}` factors through sequences
/// with the repeated colour moved apart.
#[test]
fn complex_example_factorization() {
    let i = s(&[0, 1, 0, -1]);
    let via = [s(&[1, 0, -1, 0]), s(&[0, -1, 0, 1])];
    let span = through(&i, &via, 4);
    let r = rank(&rows(&span));
    let mut with = span.clone();
    with.push(idempotent(&i));
    assert_eq!(rank(&rows(&with)), r, "1_i lies in the span");
    assert!(r > 0);
}

/// `1_{01}` does not factor through `1_{10}`.
#[test]
fn adjacent_pair_does_not_factor() {
    let i = s(&[0, 1]);
    let span = through(&i, &[s(&[1, 0])], 4);
    let mut with = span.clone();
    with.push(idempotent(&i));
    assert_eq!(rank(&rows(&with)), rank(&rows(&span)) + 1);
}
