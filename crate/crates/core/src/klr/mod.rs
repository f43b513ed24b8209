//! The KLR algebra `R(ν)` of type A (or any simply-laced datum) over `Q`.
//!
//! Elements are finite combinations of normal-form monomials `ψ_w x^a 1_i`:
//! the idempotent at the bottom, then the dots, then the crossings of the
//! lexicographically smallest reduced word of `w` (read bottom-up). `A · B`
//! stacks `A` on top of `B`.
//!
//! Local relations used by the engine, with `c = i_r · i_{r+1}` below the crossing:
//!
//! * `ψ_r² 1_i` is `0` if `c = 2`, `1_i` if `c = 0`, `(x_r + x_{r+1}) 1_i` if `c = -1`;
//! * `x_r ψ_r 1_i = ψ_r x_{r+1} 1_i + [i_r = i_{r+1}]`, `x_{r+1} ψ_r 1_i = ψ_r x_r 1_i - [i_r = i_{r+1}]`;
//! * distant crossings commute, and `ψ_rψ_{r+1}ψ_r - ψ_{r+1}ψ_rψ_{r+1}` acting on `1_i`
//!   is `1_i` when `i_r = i_{r+2}` is joined to `i_{r+1}`, and `0` otherwise.

mod engine;
pub mod perm;
pub mod poly;
pub mod rewrite;

pub use engine::Engine;
pub use poly::{poly_rep_apply, poly_rep_apply_word, Poly, PolyVector};
pub use rewrite::{reduce_word, Gen, Strategy};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{enumerate_sequences_capped, CartanDatum, RootSpec, Seq, DEFAULT_SEQ_CAP};
pub(crate) use engine::{add_to, Lin, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlrError {
    #[error("position {r} out of range for a sequence of length {len}")]
    PositionOutOfRange { r: usize, len: usize },
    #[error("elements live in different blocks R(ν)")]
    RootMismatch,
    #[error("{to} is not a rearrangement of {from}")]
    NotRearrangement { from: String, to: String },
    #[error("strands {start}..={end} of {seq} are not identically coloured")]
    NotARun { seq: String, start: usize, end: usize },
    #[error("need a >= s - 1 (got a = {a}, s = {s})")]
    PowerTooSmall { a: u32, s: usize },
    #[error("|ν| = {len} exceeds the cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("invalid element JSON: {0}")]
    Json(String),
}

static DEFAULT_ENGINE: LazyLock<Engine> = LazyLock::new(|| Engine::new(CartanDatum::AInfinity));

/// The process-wide engine for `A_∞`.
pub fn default_engine() -> &'static Engine {
    &DEFAULT_ENGINE
}

/// A normal-form monomial `ψ_w x^a 1_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    source: Seq,
    word: Vec<u8>,
    exps: Vec<u32>,
}

impl Monomial {
    /// `word` is 0-based and must be the canonical reduced word of its permutation.
    pub fn new(source: Seq, word: Vec<u8>, exps: Vec<u32>) -> Result<Self, KlrError> {
        let m = source.len();
        if exps.len() != m {
            return Err(KlrError::InvalidMonomial(format!("{} exponents for {} strands", exps.len(), m)));
        }
        if word.iter().any(|&r| r as usize + 1 >= m) || !perm::is_canonical(&word, m) {
            return Err(KlrError::InvalidMonomial(format!("{word:?} is not a canonical reduced word")));
        }
        Ok(Monomial { source, word, exps })
    }

    pub fn idempotent(source: Seq) -> Self {
        let m = source.len();
        Monomial { source, word: Vec::new(), exps: vec![0; m] }
    }

    pub(crate) fn from_term(source: &Seq, t: Term) -> Self {
        Monomial { source: source.clone(), word: t.word, exps: t.exps }
    }

    pub(crate) fn term(&self) -> Term {
        Term { word: self.word.clone(), exps: self.exps.clone() }
    }

    pub fn source(&self) -> &Seq {
        &self.source
    }

    /// Crossing positions bottom-up, 0-based.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn target(&self) -> Seq {
        Seq::new(perm::act(&self.word, self.source.entries()))
    }

    pub fn permutation(&self) -> Vec<u8> {
        perm::perm_of_word(&self.word, self.len())
    }

    pub fn degree(&self) -> i64 {
        DEFAULT_ENGINE.degree(&self.word, &self.exps, self.source.entries())
    }

    pub fn dot_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Right multiplication by `x^e`.
    pub fn shifted(&self, e: &[u32]) -> Monomial {
        let exps = self.exps.iter().zip(e).map(|(a, b)| a + b).collect();
        Monomial { source: self.source.clone(), word: self.word.clone(), exps }
    }
}

impl fmt::Display for Monomial {
    /// Top-to-bottom product in the expression syntax: `d(2)*d(1)*x(1)^2*e(0,1,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in self.word.iter().rev() {
            write!(f, "d({})*", r + 1)?;
        }
        for (k, &a) in self.exps.iter().enumerate() {
            match a {
                0 => {}
                1 => write!(f, "x({})*", k + 1)?,
                _ => write!(f, "x({})^{}*", k + 1, a)?,
            }
        }
        let labels: Vec<String> = self.source.labels().iter().map(|v| v.to_string()).collect();
        write!(f, "e({})", labels.join(","))
    }
}

/// A finite `Q`-linear combination of normal-form monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<usize>,
    exps: Vec<u32>,
    seq: Vec<i32>,
    coeff: String,
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::term(m, BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub(crate) fn from_lin(source: &Seq, lin: &Lin, scale: &BigRational) -> Self {
        let mut e = Element::zero();
        for (t, &c) in lin {
            e.add_term(Monomial::from_term(source, t.clone()), BigRational::from_integer(c.into()) * scale);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common `ν`, or `None` for the zero element.
    pub fn root(&self) -> Option<RootSpec> {
        self.terms.keys().next().map(|m| m.source.root())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scaled(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scaled(&-BigRational::one())
    }

    /// Degree if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut ds = self.terms.keys().map(|m| m.degree());
        let d = ds.next()?;
        ds.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Components `1_top · A · 1_bottom`, keyed by `(bottom, top)`.
    pub fn blocks(&self) -> BTreeMap<(Seq, Seq), Element> {
        let mut out: BTreeMap<(Seq, Seq), Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.source.clone(), m.target())).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Right multiplication by `x^e` (exact on normal forms).
    pub fn shifted(&self, e: &[u32]) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (m.shifted(e), c.clone())).collect() }
    }

    pub fn to_json(&self) -> String {
        let items: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                word: m.word.iter().map(|&r| r as usize + 1).collect(),
                exps: m.exps.clone(),
                seq: m.source.labels(),
                coeff: format!("{}/{}", c.numer(), c.denom()),
            })
            .collect();
        serde_json::to_string(&items).expect("element serializes")
    }

    pub fn from_json(text: &str) -> Result<Element, KlrError> {
        let items: Vec<TermJson> = serde_json::from_str(text).map_err(|e| KlrError::Json(e.to_string()))?;
        let mut out = Element::zero();
        for t in items {
            let c = parse_rational(&t.coeff).ok_or_else(|| KlrError::Json(format!("bad coefficient {:?}", t.coeff)))?;
            if t.word.iter().any(|&r| r == 0 || r > 255) {
                return Err(KlrError::Json("word letters are 1-based".into()));
            }
            let word = t.word.iter().map(|&r| (r - 1) as u8).collect();
            out.add_term(Monomial::new(Seq::from_labels(&t.seq), word, t.exps)?, c);
        }
        Ok(out)
    }

    fn common_denominator(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if !a.is_one() {
                if a.is_integer() {
                    write!(f, "{}*", a.numer())?;
                } else {
                    write!(f, "{}/{}*", a.numer(), a.denom())?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn check_pos(r: usize, len: usize) -> Result<(), KlrError> {
    if r == 0 || r > len {
        Err(KlrError::PositionOutOfRange { r, len })
    } else {
        Ok(())
    }
}

/// `1_i`.
pub fn idempotent(i: &Seq) -> Element {
    Element::from_monomial(Monomial::idempotent(i.clone()))
}

/// `x_{r,i}` (1-based `r`).
pub fn dot(r: usize, i: &Seq) -> Result<Element, KlrError> {
    dot_power(r, 1, i)
}

/// `x_{r,i}^n` (1-based `r`).
pub fn dot_power(r: usize, n: u32, i: &Seq) -> Result<Element, KlrError> {
    check_pos(r, i.len())?;
    let mut exps = vec![0; i.len()];
    exps[r - 1] = n;
    Ok(Element::from_monomial(Monomial { source: i.clone(), word: Vec::new(), exps }))
}

/// `δ_{r,i}` (1-based `r`, `1 <= r < m`).
pub fn crossing(r: usize, i: &Seq) -> Result<Element, KlrError> {
    check_pos(r, i.len().saturating_sub(1))?;
    Ok(Element::from_monomial(Monomial { source: i.clone(), word: vec![(r - 1) as u8], exps: vec![0; i.len()] }))
}

impl Engine {
    /// `A · B` (A on top).
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, KlrError> {
        if let (Some(ra), Some(rb)) = (a.root(), b.root()) {
            if ra != rb {
                return Err(KlrError::RootMismatch);
            }
        }
        let mut out = Element::zero();
        let bb = b.blocks();
        // group B by its top idempotent
        let mut by_top: BTreeMap<&Seq, Vec<(&Seq, &Element)>> = BTreeMap::new();
        for ((bottom, top), e) in &bb {
            by_top.entry(top).or_default().push((bottom, e));
        }
        for (ma, ca) in &a.terms {
            let Some(blocks) = by_top.get(&ma.source) else { continue };
            for &(bottom, eb) in blocks {
                let den = eb.common_denominator();
                let mut lin = Lin::new();
                for (mb, cb) in &eb.terms {
                    let c = cb * BigRational::from_integer(den.clone());
                    let c: i64 = c.to_integer().try_into().expect("coefficient overflow");
                    engine::add_to(&mut lin, mb.term(), c);
                }
                let prod = self.left_mul(&ma.word, &ma.exps, &lin, bottom.entries());
                let scale = ca / BigRational::from_integer(den);
                out = out.add(&Element::from_lin(bottom, &prod, &scale));
            }
        }
        Ok(out)
    }

    /// Normal form of a raw product of generators applied bottom-up to `1_i`.
    pub fn eval_gens(&self, gens: &[Gen], i: &Seq) -> Element {
        let src = i.entries();
        let mut cur = Lin::new();
        cur.insert(Term { word: Vec::new(), exps: vec![0; i.len()] }, 1);
        for g in gens {
            cur = match *g {
                Gen::Dot(k) => self.dot_lin(k, &cur, src),
                Gen::Cross(r) => self.cross_lin(r, &cur, src),
            };
        }
        Element::from_lin(i, &cur, &BigRational::one())
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        self.degree(&m.word, &m.exps, m.source.entries())
    }
}

/// `A · B` with the `A_∞` engine.
pub fn multiply(a: &Element, b: &Element) -> Result<Element, KlrError> {
    DEFAULT_ENGINE.multiply(a, b)
}

/// Product of a list of factors, leftmost on top.
pub fn product(factors: &[Element]) -> Result<Element, KlrError> {
    let mut it = factors.iter().rev();
    let Some(first) = it.next() else { return Ok(Element::zero()) };
    let mut acc = first.clone();
    for f in it {
        acc = multiply(f, &acc)?;
    }
    Ok(acc)
}

/// `A^n` for `n >= 1`; `A^0` is the sum of the idempotents of `A`'s blocks.
pub fn power(a: &Element, n: u32) -> Result<Element, KlrError> {
    if n == 0 {
        let mut out = Element::zero();
        for (bottom, _) in a.blocks().keys() {
            out = out.add(&idempotent(bottom));
        }
        return Ok(out);
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = multiply(a, &acc)?;
    }
    Ok(acc)
}

pub fn degree(m: &Monomial) -> i64 {
    m.degree()
}

/// `{}_j 1_i`: the crossing pattern of minimal length from `i` to `j` in which
/// equal labels never cross.
pub fn minimal_transition(i: &Seq, j: &Seq) -> Result<Element, KlrError> {
    let p = perm::minimal_perm(i.entries(), j.entries())
        .ok_or_else(|| KlrError::NotRearrangement { from: i.to_string(), to: j.to_string() })?;
    let word = perm::canonical_word(&p);
    Ok(Element::from_monomial(Monomial { source: i.clone(), word, exps: vec![0; i.len()] }))
}

/// `Σ_{ℓ_1+…+ℓ_s = a-(s-1)} x_{r+1}^{ℓ_1} … x_{r+s}^{ℓ_s} 1_i`, where `r` is the
/// number of strands before the run.
pub fn symmetric_dot_sum(i: &Seq, r: usize, s: usize, a: u32) -> Result<Element, KlrError> {
    let m = i.len();
    if s == 0 || r + s > m {
        return Err(KlrError::PositionOutOfRange { r: r + s, len: m });
    }
    let run = &i.entries()[r..r + s];
    if run.iter().any(|&v| v != run[0]) {
        return Err(KlrError::NotARun { seq: i.to_string(), start: r + 1, end: r + s });
    }
    if (a as usize) + 1 < s {
        return Err(KlrError::PowerTooSmall { a, s });
    }
    let total = a + 1 - s as u32;
    let mut out = Element::zero();
    for comp in compositions(total, s) {
        let mut exps = vec![0; m];
        exps[r..r + s].copy_from_slice(&comp);
        out.add_term(Monomial { source: i.clone(), word: Vec::new(), exps }, BigRational::one());
    }
    Ok(out)
}

/// Weak compositions of `n` into `k` parts, lexicographically decreasing.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=n).rev() {
            cur.push(a);
            go(n - a, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// All normal-form monomials `ψ_w x^a 1_bottom` with target `top` and degree `d`.
pub fn graded_monomials(nu: &RootSpec, bottom: &Seq, top: &Seq, d: i64) -> Result<Vec<Monomial>, KlrError> {
    graded_monomials_capped(nu, bottom, top, d, DEFAULT_SEQ_CAP)
}

pub fn graded_monomials_capped(
    nu: &RootSpec,
    bottom: &Seq,
    top: &Seq,
    d: i64,
    cap: usize,
) -> Result<Vec<Monomial>, KlrError> {
    if nu.len() > cap {
        return Err(KlrError::CapExceeded { len: nu.len(), cap });
    }
    if bottom.root() != *nu || top.root() != *nu {
        return Err(KlrError::RootMismatch);
    }
    Ok(graded_monomials_in(&DEFAULT_ENGINE, bottom, top, d))
}

pub(crate) fn graded_monomials_in(engine: &Engine, bottom: &Seq, top: &Seq, d: i64) -> Vec<Monomial> {
    let m = bottom.len();
    let mut out = Vec::new();
    for p in perm::transition_perms(bottom.entries(), top.entries()) {
        let word = perm::canonical_word(&p);
        let base = engine.degree(&word, &vec![0; m], bottom.entries());
        let rest = d - base;
        if rest < 0 || rest % 2 != 0 {
            continue;
        }
        if m == 0 {
            if rest == 0 {
                out.push(Monomial { source: bottom.clone(), word, exps: Vec::new() });
            }
            continue;
        }
        for exps in compositions((rest / 2) as u32, m) {
            out.push(Monomial { source: bottom.clone(), word: word.clone(), exps });
        }
    }
    out.sort();
    out
}

/// Every sequence block `(bottom, top)` of `ν` (bounded by the cap).
pub fn sequence_blocks(nu: &RootSpec) -> Result<Vec<(Seq, Seq)>, KlrError> {
    let seqs = enumerate_sequences_capped(nu, DEFAULT_SEQ_CAP)
        .map_err(|_| KlrError::CapExceeded { len: nu.len(), cap: DEFAULT_SEQ_CAP })?;
    Ok(seqs.iter().flat_map(|b| seqs.iter().map(move |t| (b.clone(), t.clone()))).collect())
}

/// Lowest possible degree of a monomial on `m` strands: every crossing is at least `-2`.
pub fn min_monomial_degree(m: usize) -> i64 {
    -((m * m.saturating_sub(1)) as i64)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i32]) -> Seq {
        Seq::from_labels(v)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn generators() {
        let e = idempotent(&s(&[0, 1]));
        assert_eq!(e.len(), 1);
        let m = e.terms().keys().next().unwrap();
        assert!(m.word().is_empty() && m.exps() == [0, 0]);
        let c = crossing(1, &s(&[0, 1])).unwrap();
        assert_eq!(c.terms().keys().next().unwrap().target(), s(&[1, 0]));
        assert!(crossing(2, &s(&[0, 1])).is_err());
        assert!(dot(3, &s(&[0, 1])).is_err());
    }

    #[test]
    fn double_crossings() {
        let d00 = crossing(1, &s(&[0, 0])).unwrap();
        assert!(multiply(&d00, &d00).unwrap().is_zero());
        let up = crossing(1, &s(&[5, 0])).unwrap();
        let dn = crossing(1, &s(&[0, 5])).unwrap();
        assert_eq!(multiply(&up, &dn).unwrap(), idempotent(&s(&[0, 5])));
        let up = crossing(1, &s(&[1, 0])).unwrap();
        let dn = crossing(1, &s(&[0, 1])).unwrap();
        let want = dot(1, &s(&[0, 1])).unwrap().add(&dot(2, &s(&[0, 1])).unwrap());
        assert_eq!(multiply(&up, &dn).unwrap(), want);
    }

    #[test]
    fn dot_slide() {
        let i = s(&[0, 0]);
        let d = crossing(1, &i).unwrap();
        // x_2 ψ_1 = ψ_1 x_1 - 1
        let lhs = multiply(&dot(2, &i).unwrap(), &d).unwrap();
        let rhs = multiply(&d, &dot(1, &i).unwrap()).unwrap().sub(&idempotent(&i));
        assert_eq!(lhs, rhs);
        // ψ_1 x_1 is already normal
        assert_eq!(multiply(&d, &dot(1, &i).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(dot(1, &s(&[0])).unwrap().degree(), Some(2));
        assert_eq!(crossing(1, &s(&[0, 5])).unwrap().degree(), Some(0));
        assert_eq!(crossing(1, &s(&[0, 0])).unwrap().degree(), Some(-2));
        assert_eq!(crossing(1, &s(&[0, 1])).unwrap().degree(), Some(1));
    }

    #[test]
    fn transitions() {
        assert_eq!(minimal_transition(&s(&[0, 1]), &s(&[0, 1])).unwrap(), idempotent(&s(&[0, 1])));
        assert_eq!(minimal_transition(&s(&[0, 5]), &s(&[5, 0])).unwrap(), crossing(1, &s(&[0, 5])).unwrap());
        assert!(minimal_transition(&s(&[0, 5]), &s(&[5, 5])).is_err());
    }

    #[test]
    fn symmetric_sums() {
        let i = s(&[0, 0]);
        assert_eq!(symmetric_dot_sum(&s(&[3]), 0, 1, 4).unwrap(), dot_power(1, 4, &s(&[3])).unwrap());
        let two = symmetric_dot_sum(&i, 0, 2, 2).unwrap();
        assert_eq!(two, dot(1, &i).unwrap().add(&dot(2, &i).unwrap()));
        let three = symmetric_dot_sum(&i, 0, 2, 3).unwrap();
        assert_eq!(three.len(), 3);
        assert!(symmetric_dot_sum(&s(&[0, 1]), 0, 2, 3).is_err());
        assert!(symmetric_dot_sum(&i, 0, 2, 0).is_err());
    }

    #[test]
    fn graded_pieces() {
        let nu = RootSpec::new([(0, 1)]);
        assert_eq!(graded_monomials(&nu, &s(&[0]), &s(&[0]), 0).unwrap().len(), 1);
        let g = graded_monomials(&nu, &s(&[0]), &s(&[0]), 2).unwrap();
        assert_eq!(g, vec![Monomial::new(s(&[0]), vec![], vec![1]).unwrap()]);
        let nu = RootSpec::new([(0, 2)]);
        let g = graded_monomials(&nu, &s(&[0, 0]), &s(&[0, 0]), 0).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn json_round_trip() {
        let i = s(&[0, 0]);
        let e = multiply(&dot(2, &i).unwrap(), &crossing(1, &i).unwrap()).unwrap().scaled(&BigRational::new(3.into(), 2.into()));
        let j = e.to_json();
        assert!(j.contains(r#""coeff":"-3/2""#));
        assert_eq!(Element::from_json(&j).unwrap(), e);
        assert_eq!(e.to_string(), "-3/2*e(0,0) + 3/2*d(1)*x(1)*e(0,0)");
        let _ = q(1);
    }
}
