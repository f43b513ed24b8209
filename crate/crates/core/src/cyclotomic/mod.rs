//! The cyclotomic ideal `J_Λ ⊂ R(ν)` and exact membership in its graded pieces.
//!
//! For a block `1_t R(ν) 1_i` the ideal piece is spanned by
//! `ψ_u x_1^{λ_{j_1}} ψ_v x^e 1_i`, where `v` runs over all permutations
//! (with `j = v · i`), `u` over the permutations taking `j` to `t`, and `e` over
//! exponent vectors of the right degree. A general `p · g_j · q` reduces to
//! this shape because dots below `g_j` commute with it and `1_j R 1_i` is
//! spanned by `ψ_v x^e 1_i`.

mod cache;
mod report;

pub use report::{AnchorReport, AnchorViolation, Check, Report, Scope, TightnessEntry};

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use dashmap::DashMap;
use num_rational::BigRational;
use thiserror::Error;

use crate::abacus::AbacusError;
use crate::klr::{
    add_to, compositions, default_engine, dot_power, graded_monomials_in, idempotent, min_monomial_degree, perm,
    Element, Engine, KlrError, Lin, Monomial, Term,
};
use crate::linalg::{Echelon, Field};
use crate::quiver::{enumerate_sequences_capped, RootSpec, Seq, Vertex, WeightSpec};

/// Default cap on `|ν|`.
pub const DEFAULT_LEN_CAP: usize = 5;
/// Default cap on `ℓ(Λ)`.
pub const DEFAULT_LEVEL_CAP: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("|ν| = {len} exceeds the cap {cap}")]
    LengthCap { len: usize, cap: usize },
    #[error("level {level} exceeds the cap {cap}")]
    LevelCap { level: u32, cap: u32 },
    #[error("element does not live in R(ν) for ν = {0}")]
    RootMismatch(String),
    #[error("no n <= {level} with x_{r}^n 1_{seq} in the ideal")]
    NotNilpotent { seq: String, r: usize, level: u32 },
    #[error(transparent)]
    Klr(#[from] KlrError),
    #[error(transparent)]
    Abacus(#[from] AbacusError),
    #[error("cache: {0}")]
    Cache(String),
}

/// Size of one reduced ideal piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceStats {
    pub columns: usize,
    pub rank: usize,
    pub rows_tried: usize,
}

pub(crate) struct Piece {
    columns: Vec<Monomial>,
    index: HashMap<Term, usize>,
    echelon: Echelon,
    rows_tried: usize,
}

impl Piece {
    fn new(columns: Vec<Monomial>, field: Field) -> Piece {
        let index = columns.iter().enumerate().map(|(k, m)| (m.term(), k)).collect();
        let echelon = Echelon::new(field, columns.len());
        Piece { columns, index, echelon, rows_tried: 0 }
    }

    fn insert(&mut self, lin: &Lin, shift: &[u32]) {
        let row: Vec<(usize, i64)> = lin
            .iter()
            .map(|(t, &c)| {
                let exps: Vec<u32> = t.exps.iter().zip(shift).map(|(a, b)| a + b).collect();
                let key = Term { word: t.word.clone(), exps };
                (*self.index.get(&key).expect("ideal row leaves its graded piece"), c)
            })
            .collect();
        self.rows_tried += 1;
        self.echelon.insert_int(&row);
    }

    fn fill(&mut self) {
        for k in 0..self.columns.len() {
            self.echelon.insert_int(&[(k, 1)]);
        }
    }

    fn contains(&self, e: &Element) -> bool {
        let row: Vec<(usize, BigRational)> = e
            .terms()
            .iter()
            .map(|(m, c)| (*self.index.get(&m.term()).expect("element outside its graded piece"), c.clone()))
            .collect();
        self.echelon.contains_rational(&row)
    }

    fn stats(&self) -> PieceStats {
        PieceStats { columns: self.columns.len(), rank: self.echelon.rank(), rows_tried: self.rows_tried }
    }
}

type PieceKey = (Seq, Seq, i64);
type Cell<V> = Arc<OnceLock<Arc<V>>>;

/// `(ν, Λ)` together with lazily reduced ideal pieces.
pub struct QuotientContext {
    root: RootSpec,
    weight: WeightSpec,
    field: Field,
    engine: &'static Engine,
    cache_dir: Option<PathBuf>,
    pieces: DashMap<PieceKey, Cell<Piece>>,
    // x_1^{λ_{j_1}} ψ_v 1_i, keyed by (i, v)
    lowers: DashMap<(Seq, Vec<u8>), Cell<Lin>>,
    built: Mutex<Vec<(PieceKey, PieceStats)>>,
}

fn memo<K: Eq + std::hash::Hash, V>(map: &DashMap<K, Cell<V>>, key: K, f: impl FnOnce() -> V) -> Arc<V> {
    let cell = map.entry(key).or_default().clone();
    cell.get_or_init(|| Arc::new(f())).clone()
}

impl QuotientContext {
    /// A context with the default caps.
    pub fn new(root: RootSpec, weight: WeightSpec) -> Result<Self, CyclotomicError> {
        QuotientContext::with_caps(root, weight, DEFAULT_LEN_CAP, DEFAULT_LEVEL_CAP)
    }

    pub fn with_caps(root: RootSpec, weight: WeightSpec, len_cap: usize, level_cap: u32) -> Result<Self, CyclotomicError> {
        if root.len() > len_cap {
            return Err(CyclotomicError::LengthCap { len: root.len(), cap: len_cap });
        }
        if weight.level() > level_cap {
            return Err(CyclotomicError::LevelCap { level: weight.level(), cap: level_cap });
        }
        Ok(QuotientContext {
            root,
            weight,
            field: Field::Exact,
            engine: default_engine(),
            cache_dir: None,
            pieces: DashMap::new(),
            lowers: DashMap::new(),
            built: Mutex::new(Vec::new()),
        })
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    /// Persist exact pieces under `dir`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn root(&self) -> &RootSpec {
        &self.root
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn level(&self) -> u32 {
        self.weight.level()
    }

    pub fn sequences(&self) -> Vec<Seq> {
        enumerate_sequences_capped(&self.root, usize::MAX).expect("length already capped")
    }

    /// Pieces reduced so far with their sizes, sorted by key.
    pub fn piece_stats(&self) -> Vec<(Seq, Seq, i64, PieceStats)> {
        let mut v: Vec<_> = self.built.lock().unwrap().iter().map(|((b, t, d), s)| (b.clone(), t.clone(), *d, *s)).collect();
        v.sort_by(|a, b| (&a.0, &a.1, a.2).cmp(&(&b.0, &b.1, b.2)));
        v
    }

    fn check_seq(&self, s: &Seq) -> Result<(), CyclotomicError> {
        if s.root() != self.root {
            return Err(CyclotomicError::RootMismatch(self.root.to_json()));
        }
        Ok(())
    }

    fn lambda(&self, v: Vertex) -> u32 {
        self.weight.get(v)
    }

    fn lower(&self, i: &Seq, vword: &[u8]) -> Arc<Lin> {
        memo(&self.lowers, (i.clone(), vword.to_vec()), || {
            let m = i.len();
            let j = perm::act(vword, i.entries());
            let mut lin = Lin::new();
            add_to(&mut lin, Term { word: vword.to_vec(), exps: vec![0; m] }, 1);
            for _ in 0..self.lambda(j[0]) {
                lin = self.engine.dot_lin(0, &lin, i.entries());
            }
            lin
        })
    }

    /// The reduced piece `J ∩ 1_top R_d 1_bottom`.
    pub(crate) fn piece(&self, bottom: &Seq, top: &Seq, d: i64) -> Arc<Piece> {
        let key = (bottom.clone(), top.clone(), d);
        memo(&self.pieces, key, || self.load_or_build(bottom, top, d))
    }

    fn load_or_build(&self, bottom: &Seq, top: &Seq, d: i64) -> Piece {
        let columns = graded_monomials_in(self.engine, bottom, top, d);
        if let (Some(dir), Field::Exact) = (&self.cache_dir, self.field) {
            if let Some(p) = cache::load(dir, self, bottom, top, d, &columns) {
                return p;
            }
        }
        let p = self.build(bottom, top, d, columns);
        self.built.lock().unwrap().push(((bottom.clone(), top.clone(), d), p.stats()));
        if let (Some(dir), Field::Exact) = (&self.cache_dir, self.field) {
            // a failed write only costs a recomputation later
            let _ = cache::store(dir, self, bottom, top, d, &p);
        }
        p
    }

    fn build(&self, bottom: &Seq, top: &Seq, d: i64, columns: Vec<Monomial>) -> Piece {
        let mut piece = Piece::new(columns, self.field);
        if piece.columns.is_empty() {
            return piece;
        }
        if !(bottom == top && d == 0) && (self.idempotent_vanishes(bottom) || self.idempotent_vanishes(top)) {
            piece.fill();
            return piece;
        }
        let m = bottom.len();
        let src = bottom.entries();
        let zeros = vec![0u8; m];
        for v in perm::transition_perms(&zeros, &zeros) {
            let vword = perm::canonical_word(&v);
            let j = perm::act(&vword, src);
            let lam = self.lambda(j[0]) as i64;
            let deg_v = self.engine.degree(&vword, &vec![0; m], src);
            for u in perm::transition_perms(&j, top.entries()) {
                let uword = perm::canonical_word(&u);
                let deg_u = self.engine.degree(&uword, &vec![0; m], &j);
                let rest = d - deg_v - 2 * lam - deg_u;
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                let lower = self.lower(bottom, &vword);
                let mut g = Lin::new();
                for (t, &c) in lower.iter() {
                    let mut one = Lin::new();
                    add_to(&mut one, Term { word: t.word.clone(), exps: vec![0; m] }, 1);
                    let up = self.engine.left_mul(&uword, &vec![0; m], &one, src);
                    for (t2, &c2) in &up {
                        let exps = t2.exps.iter().zip(&t.exps).map(|(a, b)| a + b).collect();
                        add_to(&mut g, Term { word: t2.word.clone(), exps }, c * c2);
                    }
                }
                if g.is_empty() {
                    continue;
                }
                for e in compositions((rest / 2) as u32, m) {
                    piece.insert(&g, &e);
                    if piece.echelon.is_full() {
                        return piece;
                    }
                }
            }
        }
        piece
    }

    /// Whether `1_i ∈ J_Λ`.
    pub fn idempotent_vanishes(&self, i: &Seq) -> bool {
        let p = self.piece(i, i, 0);
        p.contains(&idempotent(i))
    }

    /// Whether `A ∈ J_Λ`, tested block by block and degree by degree.
    pub fn is_zero_in_quotient(&self, a: &Element) -> Result<bool, CyclotomicError> {
        if let Some(r) = a.root() {
            if r != self.root {
                return Err(CyclotomicError::RootMismatch(self.root.to_json()));
            }
        }
        for (d, part) in a.homogeneous_components() {
            for ((bottom, top), block) in part.blocks() {
                if !self.piece(&bottom, &top, d).contains(&block) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `x_{r,i}^n ∈ J_Λ`.
    pub fn dot_power_vanishes(&self, i: &Seq, r: usize, n: u32) -> Result<bool, CyclotomicError> {
        self.check_seq(i)?;
        let x = dot_power(r, n, i)?;
        self.is_zero_in_quotient(&x)
    }

    /// Smallest `n <= ℓ(Λ)` with `x_{r,i}^n = 0`, if any.
    pub fn find_nilpotency(&self, i: &Seq, r: usize) -> Result<Option<u32>, CyclotomicError> {
        self.check_seq(i)?;
        for n in 0..=self.level() {
            if self.dot_power_vanishes(i, r, n)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Smallest `n >= 0` with `x_{r,i}^n = 0` in the quotient.
    pub fn nilpotency_degree(&self, i: &Seq, r: usize) -> Result<u32, CyclotomicError> {
        self.find_nilpotency(i, r)?.ok_or_else(|| CyclotomicError::NotNilpotent {
            seq: i.to_string(),
            r,
            level: self.level(),
        })
    }

    /// Every product `p · x_1^{λ_{j_1}} 1_j · q` of normal-form monomials landing in
    /// `1_top R_d 1_bottom`.
    pub fn ideal_spanning_set(&self, bottom: &Seq, top: &Seq, d: i64) -> Result<Vec<Element>, CyclotomicError> {
        self.check_seq(bottom)?;
        self.check_seq(top)?;
        let m = bottom.len();
        let min = min_monomial_degree(m);
        let mut out = Vec::new();
        for j in self.sequences() {
            let lam = self.lambda(j.at(1));
            let g = dot_power(1, lam, &j)?;
            let gdeg = 2 * lam as i64;
            for dq in min..=d - gdeg - min {
                let dp = d - gdeg - dq;
                let qs = graded_monomials_in(self.engine, bottom, &j, dq);
                if qs.is_empty() {
                    continue;
                }
                let ps = graded_monomials_in(self.engine, &j, top, dp);
                for q in &qs {
                    let gq = self.engine.multiply(&g, &Element::from_monomial(q.clone()))?;
                    for p in &ps {
                        out.push(self.engine.multiply(&Element::from_monomial(p.clone()), &gq)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `dim (R_ν^Λ)_d`.
    pub fn graded_dimension(&self, d: i64) -> usize {
        let seqs = self.sequences();
        let mut total = 0;
        for b in &seqs {
            for t in &seqs {
                let p = self.piece(b, t, d);
                total += p.columns.len() - p.echelon.rank();
            }
        }
        total
    }

    /// Degrees that can carry a nonzero class: dots below `ℓ(Λ)` and crossings of degree at most one.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let level = self.level() as i64;
        if level == 0 {
            return None;
        }
        let m = self.root.len() as i64;
        Some((min_monomial_degree(m as usize), 2 * m * (level - 1) + m * (m - 1) / 2))
    }

    /// `(d, dim (R_ν^Λ)_d)` for every nonzero graded piece.
    pub fn graded_dimensions(&self) -> Vec<(i64, usize)> {
        let Some((lo, hi)) = self.degree_range() else { return Vec::new() };
        (lo..=hi).map(|d| (d, self.graded_dimension(d))).filter(|&(_, n)| n > 0).collect()
    }

    /// Size and rank of the ideal piece `J ∩ 1_top R_d 1_bottom`.
    pub fn piece_size(&self, bottom: &Seq, top: &Seq, d: i64) -> Result<PieceStats, CyclotomicError> {
        self.check_seq(bottom)?;
        self.check_seq(top)?;
        Ok(self.piece(bottom, top, d).stats())
    }

    /// `dim 1_top R_ν^Λ 1_bottom`.
    pub fn block_dimension(&self, bottom: &Seq, top: &Seq) -> usize {
        let Some((lo, hi)) = self.degree_range() else { return 0 };
        (lo..=hi)
            .map(|d| {
                let p = self.piece(bottom, top, d);
                p.columns.len() - p.echelon.rank()
            })
            .sum()
    }

    pub fn total_dimension(&self) -> usize {
        self.graded_dimensions().iter().map(|&(_, n)| n).sum()
    }

    pub(crate) fn elapsed_ms(start: Instant) -> u64 {
        start.elapsed().as_millis() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::{crossing, dot};

    fn ctx(nu: &[(i32, u32)], w: &[(i32, u32)]) -> QuotientContext {
        QuotientContext::new(RootSpec::new(nu.iter().copied()), WeightSpec::new(w.iter().copied())).unwrap()
    }

    fn s(v: &[i32]) -> Seq {
        Seq::from_labels(v)
    }

    #[test]
    fn one_strand() {
        let c = ctx(&[(0, 1)], &[(0, 2)]);
        let i = s(&[0]);
        assert!(c.is_zero_in_quotient(&dot_power(1, 2, &i).unwrap()).unwrap());
        assert!(!c.is_zero_in_quotient(&dot_power(1, 1, &i).unwrap()).unwrap());
        assert_eq!(c.nilpotency_degree(&i, 1).unwrap(), 2);
        assert_eq!(c.total_dimension(), 2);
        assert_eq!(c.graded_dimensions(), vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn vanishing_idempotent() {
        let c = ctx(&[(0, 1), (1, 1)], &[(0, 1)]);
        assert!(c.is_zero_in_quotient(&idempotent(&s(&[1, 0]))).unwrap());
        assert_eq!(c.nilpotency_degree(&s(&[1, 0]), 2).unwrap(), 0);
        assert!(!c.is_zero_in_quotient(&idempotent(&s(&[0, 1]))).unwrap());
    }

    #[test]
    fn two_colours() {
        let c = ctx(&[(0, 1), (1, 1)], &[(0, 1), (1, 1)]);
        // 1_{01} R^Λ 1_{01} is spanned by 1 and x_2, so x_2 survives
        assert_eq!(c.nilpotency_degree(&s(&[0, 1]), 2).unwrap(), 2);
        assert_eq!(c.nilpotency_degree(&s(&[0, 1]), 1).unwrap(), 1);
        assert_eq!(c.total_dimension(), 6);
        let far = ctx(&[(0, 1), (5, 1)], &[(0, 1), (5, 1)]);
        assert_eq!(far.total_dimension(), 4);
        assert_eq!(far.graded_dimensions(), vec![(0, 4)]);
    }

    #[test]
    fn trivial_weight() {
        let c = ctx(&[(0, 1)], &[]);
        assert_eq!(c.total_dimension(), 0);
        assert!(c.is_zero_in_quotient(&idempotent(&s(&[0]))).unwrap());
    }

    #[test]
    fn root_mismatch() {
        let c = ctx(&[(0, 1)], &[(0, 1)]);
        assert!(c.is_zero_in_quotient(&idempotent(&s(&[1]))).is_err());
    }

    #[test]
    fn prime_agrees_with_exact() {
        let nu = RootSpec::new([(0, 2), (1, 1)]);
        let w = WeightSpec::new([(0, 2)]);
        let exact = QuotientContext::new(nu.clone(), w.clone()).unwrap();
        let prime = QuotientContext::new(nu, w).unwrap().with_field(Field::Prime(crate::linalg::DEFAULT_PRIME));
        for i in exact.sequences() {
            for r in 1..=3 {
                assert_eq!(exact.find_nilpotency(&i, r).unwrap(), prime.find_nilpotency(&i, r).unwrap());
            }
        }
        let i = s(&[0, 0, 1]);
        let e = crossing(1, &i).unwrap().add(&dot(3, &i).unwrap());
        assert_eq!(exact.is_zero_in_quotient(&e).unwrap(), prime.is_zero_in_quotient(&e).unwrap());
    }
}
