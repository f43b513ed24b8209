//! The polynomial representation of `R(ν)` on `⊕_i Q[x_1, …, x_m] 1_i`.
//!
//! `1_i` projects onto component `i`, `x_r` multiplies by the `r`-th variable
//! and `ψ_r` acts, according to the colours `(a, b)` at positions `r, r+1`, by
//! the divided difference if `a = b`, by swapping the two variables if
//! `a · b = 0`, and for joined colours by the swap on the ascending side and by
//! `(x_r + x_{r+1}) ·` swap on the descending side (`a > b`).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Element, Gen, KlrError};
use crate::quiver::{CartanDatum, Seq, Vertex};

/// A polynomial in commuting variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![0; m], c);
        p
    }

    pub fn one(m: usize) -> Self {
        Poly::constant(m, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiplication by `x^e`.
    pub fn mul_monomial(&self, e: &[u32]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Exchange of the variables `r` and `r + 1` (0-based).
    pub fn swapped(&self, r: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(r, r + 1);
            out.add_term(e, c.clone());
        }
        out
    }

    /// `(f - s_r f) / (x_r - x_{r+1})` (0-based `r`).
    pub fn divided_difference(&self, r: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let (a, b) = (e[r], e[r + 1]);
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c.clone()) };
            // x^hi y^lo - x^lo y^hi = (x - y) Σ_{k=0}^{hi-lo-1} x^{hi-1-k} y^{lo+k}
            for k in 0..hi - lo {
                let mut f = e.clone();
                f[r] = hi - 1 - k;
                f[r + 1] = lo + k;
                out.add_term(f, sign.clone());
            }
        }
        out
    }

    fn times_sum(&self, r: usize) -> Poly {
        let mut a = vec![0; self.terms.keys().next().map_or(0, |e| e.len())];
        if a.is_empty() {
            return Poly::zero();
        }
        a[r] = 1;
        let mut b = vec![0; a.len()];
        b[r + 1] = 1;
        self.mul_monomial(&a).add(&self.mul_monomial(&b))
    }
}

/// Per-sequence polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyVector {
    components: BTreeMap<Seq, Poly>,
}

impl PolyVector {
    pub fn zero() -> Self {
        PolyVector::default()
    }

    pub fn unit(i: &Seq) -> Self {
        PolyVector::single(i.clone(), Poly::one(i.len()))
    }

    pub fn single(i: Seq, p: Poly) -> Self {
        let mut v = PolyVector::zero();
        v.add_component(i, p);
        v
    }

    pub fn components(&self) -> &BTreeMap<Seq, Poly> {
        &self.components
    }

    pub fn component(&self, i: &Seq) -> Poly {
        self.components.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_component(&mut self, i: Seq, p: Poly) {
        let slot = self.components.entry(i.clone()).or_default();
        *slot = slot.add(&p);
        if slot.is_zero() {
            self.components.remove(&i);
        }
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        let mut out = self.clone();
        for (i, p) in &other.components {
            out.add_component(i.clone(), p.clone());
        }
        out
    }
}

/// `ψ_r` on `f` sitting at colours `col`; returns the new colours and polynomial.
fn cross(datum: &CartanDatum, r: usize, col: &[Vertex], f: &Poly) -> (Vec<Vertex>, Poly) {
    let (a, b) = (col[r], col[r + 1]);
    let mut out = col.to_vec();
    out.swap(r, r + 1);
    let g = match datum.pair(a, b) {
        2 => f.divided_difference(r),
        0 => f.swapped(r),
        -1 if a > b => f.swapped(r).times_sum(r),
        -1 => f.swapped(r),
        other => panic!("unsupported Cartan entry {other}"),
    };
    (out, g)
}

fn check_root(i: &Seq, v: &PolyVector) -> Result<(), KlrError> {
    match v.components.keys().next() {
        Some(j) if j.root() != i.root() => Err(KlrError::RootMismatch),
        _ => Ok(()),
    }
}

/// `ρ(A) v`.
pub fn poly_rep_apply(a: &Element, v: &PolyVector) -> Result<PolyVector, KlrError> {
    let datum = CartanDatum::AInfinity;
    let mut out = PolyVector::zero();
    for (m, c) in a.terms() {
        check_root(m.source(), v)?;
        let f = v.component(m.source());
        if f.is_zero() {
            continue;
        }
        let mut f = f.mul_monomial(m.exps());
        let mut col = m.source().entries().to_vec();
        for &r in m.word() {
            let (c2, g) = cross(&datum, r as usize, &col, &f);
            col = c2;
            f = g;
        }
        out.add_component(Seq::new(col), f.scaled(c));
    }
    Ok(out)
}

/// `ρ(g_n ⋯ g_1 1_i) v` for a raw generator word applied bottom-up.
pub fn poly_rep_apply_word(gens: &[Gen], i: &Seq, v: &PolyVector) -> Result<PolyVector, KlrError> {
    check_root(i, v)?;
    let datum = CartanDatum::AInfinity;
    let m = i.len();
    let mut f = v.component(i);
    let mut col = i.entries().to_vec();
    for g in gens {
        match *g {
            Gen::Dot(k) => {
                let mut e = vec![0; m];
                e[k as usize] = 1;
                f = f.mul_monomial(&e);
            }
            Gen::Cross(r) => {
                let (c2, g) = cross(&datum, r as usize, &col, &f);
                col = c2;
                f = g;
            }
        }
    }
    Ok(PolyVector::single(Seq::new(col), f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::{crossing, dot, idempotent};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn unit_projection() {
        let i = Seq::from_labels(&[0, 1]);
        let u = PolyVector::unit(&i);
        assert_eq!(poly_rep_apply(&idempotent(&i), &u).unwrap(), u);
        let j = Seq::from_labels(&[1, 0]);
        assert!(poly_rep_apply(&idempotent(&j), &u).unwrap().is_zero());
    }

    #[test]
    fn divided_difference_of_constant() {
        let i = Seq::from_labels(&[0, 0]);
        let d = crossing(1, &i).unwrap();
        assert!(poly_rep_apply(&d, &PolyVector::unit(&i)).unwrap().is_zero());
        let x1 = PolyVector::single(i.clone(), Poly::monomial(vec![1, 0], q(1)));
        assert_eq!(poly_rep_apply(&d, &x1).unwrap(), PolyVector::unit(&i));
    }

    #[test]
    fn divided_difference_formula() {
        let f = Poly::monomial(vec![3, 1], q(1));
        // (x^3 y - x y^3)/(x - y) = x^2 y + x y^2
        let want = Poly::monomial(vec![2, 1], q(1)).add(&Poly::monomial(vec![1, 2], q(1)));
        assert_eq!(f.divided_difference(0), want);
        assert_eq!(Poly::monomial(vec![1, 3], q(1)).divided_difference(0), want.scaled(&q(-1)));
    }

    #[test]
    fn dots_multiply() {
        let i = Seq::from_labels(&[2]);
        let v = poly_rep_apply(&dot(1, &i).unwrap(), &PolyVector::unit(&i)).unwrap();
        assert_eq!(v.component(&i), Poly::monomial(vec![1], q(1)));
    }
}
