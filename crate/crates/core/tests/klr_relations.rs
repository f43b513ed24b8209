mod common;

use common::*;
use klr::klr::*;
use klr::quiver::Seq;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WINDOW: [i32; 4] = [0, 1, 2, 3];

fn combo(terms: &[(i64, Vec<Gen>)], i: &Seq, eval: impl Fn(&[Gen], &Seq) -> Element) -> Element {
    terms.iter().fold(Element::zero(), |acc, (c, w)| {
        acc.add(&eval(w, i).scaled(&BigRational::from_integer((*c).into())))
    })
}

#[test]
fn relation_suite_engine() {
    let e = default_engine();
    for m in 1..=4 {
        for i in all_seqs(&WINDOW, m) {
            for r in relations_on(&i) {
                let z = combo(&r.terms, &i, |w, i| e.eval_gens(w, i));
                assert!(z.is_zero(), "{} on {}: {}", r.name, i, z);
            }
        }
    }
}

#[test]
fn relation_suite_rewriter() {
    for m in 1..=3 {
        for i in all_seqs(&WINDOW, m) {
            for r in relations_on(&i) {
                for s in STRATEGIES {
                    let z = combo(&r.terms, &i, |w, i| reduce_word(w, i, s));
                    assert!(z.is_zero(), "{} on {} ({s:?}): {}", r.name, i, z);
                }
            }
        }
    }
}

fn rho_word(w: &[Gen], i: &Seq, v: &PolyVector) -> PolyVector {
    poly_rep_apply_word(w, i, v).unwrap()
}

fn test_vectors(i: &Seq) -> Vec<PolyVector> {
    let m = i.len();
    let mut out = vec![PolyVector::unit(i)];
    let mut e = vec![0u32; m];
    for k in 0..m {
        e[k] = (k as u32 % 3) + 1;
    }
    out.push(PolyVector::single(i.clone(), Poly::monomial(e.clone(), BigRational::one())));
    if m > 0 {
        let mut f = vec![0u32; m];
        f[0] = 2;
        out.push(PolyVector::single(
            i.clone(),
            Poly::monomial(f, BigRational::from_integer(3.into())).add(&Poly::one(m)),
        ));
    }
    out
}

#[test]
fn relations_vanish_under_rho() {
    for m in 1..=4 {
        for i in all_seqs(&WINDOW, m) {
            for r in relations_on(&i) {
                for v in test_vectors(&i) {
                    let mut acc = PolyVector::zero();
                    for (c, w) in &r.terms {
                        let out = rho_word(w, &i, &v);
                        for (j, p) in out.components() {
                            acc.add_component(j.clone(), p.scaled(&BigRational::from_integer((*c).into())));
                        }
                    }
                    assert!(acc.is_zero(), "{} on {} acts nontrivially", r.name, i);
                }
            }
        }
    }
}

#[test]
fn associativity_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let m = rng.gen_range(1..=4);
        let i = random_seq(&mut rng, &WINDOW, m);
        let wc = random_word_upto(&mut rng, m, 3);
        let j = word_target(&wc, &i);
        let wb = random_word_upto(&mut rng, m, 3);
        let k = word_target(&wb, &j);
        let wa = random_word_upto(&mut rng, m, 3);
        let e = default_engine();
        let (a, b, c) = (e.eval_gens(&wa, &k), e.eval_gens(&wb, &j), e.eval_gens(&wc, &i));
        let left = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        let whole = [wc.clone(), wb.clone(), wa.clone()].concat();
        assert_eq!(left, e.eval_gens(&whole, &i));
    }
}

#[test]
fn confluence_of_strategies() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=4);
        let i = random_seq(&mut rng, &WINDOW, m);
        let w = random_word_upto(&mut rng, m, 6);
        let a = reduce_word(&w, &i, Strategy::DotsFirst);
        let b = reduce_word(&w, &i, Strategy::BraidFirst);
        assert_eq!(a, b, "{w:?} on {i}");
        assert_eq!(a, default_engine().eval_gens(&w, &i), "{w:?} on {i}");
    }
}

#[test]
fn rho_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e = default_engine();
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let i = random_seq(&mut rng, &WINDOW, m);
        let wb = random_word_upto(&mut rng, m, 4);
        let j = word_target(&wb, &i);
        let wa = random_word_upto(&mut rng, m, 4);
        let (a, b) = (e.eval_gens(&wa, &j), e.eval_gens(&wb, &i));
        let ab = multiply(&a, &b).unwrap();
        for v in test_vectors(&i) {
            let lhs = poly_rep_apply(&ab, &v).unwrap();
            let rhs = poly_rep_apply(&a, &poly_rep_apply(&b, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            // raw words act the same as their normal forms
            assert_eq!(rho_word(&[wb.clone(), wa.clone()].concat(), &i, &v), lhs);
        }
    }
}

#[test]
fn unit_and_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = default_engine();
    for _ in 0..100 {
        let m = rng.gen_range(1..=4);
        let i = random_seq(&mut rng, &WINDOW, m);
        let w = random_word_upto(&mut rng, m, 4);
        let j = word_target(&w, &i);
        let a = e.eval_gens(&w, &i);
        assert_eq!(multiply(&idempotent(&j), &multiply(&a, &idempotent(&i)).unwrap()).unwrap(), a);
        let other = if rng.gen_bool(0.5) { word_target(&random_word(&mut rng, m, 3), &i) } else { random_seq(&mut rng, &WINDOW, m) };
        match (other == i, other.root() == i.root()) {
            (true, _) => {}
            (false, true) => assert!(multiply(&idempotent(&i), &idempotent(&other)).unwrap().is_zero()),
            (false, false) => assert_eq!(multiply(&idempotent(&i), &idempotent(&other)), Err(KlrError::RootMismatch)),
        }
    }
}

#[test]
fn degree_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let e = default_engine();
    for _ in 0..200 {
        let m = rng.gen_range(1..=4);
        let i = random_seq(&mut rng, &WINDOW, m);
        let wb = random_word_upto(&mut rng, m, 3);
        let j = word_target(&wb, &i);
        let wa = random_word_upto(&mut rng, m, 3);
        let (a, b) = (e.eval_gens(&wa, &j), e.eval_gens(&wb, &i));
        let ab = multiply(&a, &b).unwrap();
        if let (Some(da), Some(db), false) = (a.degree(), b.degree(), ab.is_zero()) {
            assert_eq!(ab.degree(), Some(da + db));
        }
    }
}

/// Distinct monomials of low degree act independently on polynomials.
#[test]
fn oracle_faithfulness() {
    use std::collections::BTreeMap;
    for m in 1..=3 {
        for bottom in all_seqs(&[0, 1, 2], m) {
            for top in all_seqs(&[0, 1, 2], m) {
                if top.root() != bottom.root() {
                    continue;
                }
                for d in -6..=8i64 {
                    let mons = graded_monomials(&bottom.root(), &bottom, &top, d).unwrap();
                    if mons.is_empty() {
                        continue;
                    }
                    // evaluate each monomial on a basis of polynomials of degree <= 8
                    let mut rows: Vec<BTreeMap<Vec<u32>, BigRational>> = Vec::new();
                    for mono in &mons {
                        let el = Element::from_monomial(mono.clone());
                        let mut row = BTreeMap::new();
                        for e in polys_up_to(m, 4) {
                            let v = PolyVector::single(bottom.clone(), Poly::monomial(e.clone(), BigRational::one()));
                            let out = poly_rep_apply(&el, &v).unwrap().component(&top);
                            for (k, c) in out.terms() {
                                let mut key = e.clone();
                                key.extend_from_slice(k);
                                row.insert(key, c.clone());
                            }
                        }
                        rows.push(row);
                    }
                    assert_eq!(rank(&rows), mons.len(), "{bottom} -> {top} degree {d}");
                }
            }
        }
    }
}

fn polys_up_to(m: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for t in 0..=deg {
        out.extend(compositions(t, m));
    }
    out
}
