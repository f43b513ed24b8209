//! Memoized normal-form multiplication.
//!
//! Every product is built by multiplying generators onto the top of a
//! normal-form monomial `ψ_w x^a 1_i`. Dots at the bottom commute with each
//! other, so `g · ψ_w x^a 1_i = (g · ψ_w 1_i) · x^a` and only dot-free
//! monomials need to be memoized.

use std::collections::BTreeMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use super::perm::{self, MoveKind, WordMove};
use crate::quiver::{CartanDatum, Vertex};

/// A normal-form monomial without its source idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Term {
    pub word: Vec<u8>,
    pub exps: Vec<u32>,
}

/// Integer combination of terms sharing one source idempotent.
pub(crate) type Lin = BTreeMap<Term, i64>;

type Cell<V> = Arc<OnceLock<Arc<V>>>;
type Memo<K, V> = DashMap<K, Cell<V>>;

fn memo<K: Eq + Hash, V>(map: &Memo<K, V>, key: K, f: impl FnOnce() -> V) -> Arc<V> {
    let cell = map.entry(key).or_default().clone();
    cell.get_or_init(|| Arc::new(f())).clone()
}

pub(crate) fn add_to(out: &mut Lin, t: Term, c: i64) {
    if c == 0 {
        return;
    }
    use std::collections::btree_map::Entry;
    match out.entry(t) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get().checked_add(c).expect("coefficient overflow");
            if v == 0 {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

fn add_scaled(out: &mut Lin, src: &Lin, c: i64, shift: &[u32]) {
    for (t, &k) in src {
        let exps = if shift.iter().all(|&e| e == 0) {
            t.exps.clone()
        } else {
            t.exps.iter().zip(shift).map(|(a, b)| a + b).collect()
        };
        add_to(out, Term { word: t.word.clone(), exps }, k.checked_mul(c).expect("coefficient overflow"));
    }
}

type Key = (u8, Box<[u8]>, Box<[Vertex]>);

/// Normal-form multiplication engine for one Cartan datum.
pub struct Engine {
    datum: CartanDatum,
    cross: Memo<Key, Lin>,
    dot: Memo<Key, Lin>,
    paths: Memo<(Box<[u8]>, Box<[u8]>), Vec<WordMove>>,
}

impl Engine {
    pub fn new(datum: CartanDatum) -> Self {
        Engine { datum, cross: DashMap::new(), dot: DashMap::new(), paths: DashMap::new() }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub(crate) fn pair(&self, a: Vertex, b: Vertex) -> i32 {
        self.datum.pair(a, b)
    }

    /// Number of memoized entries, for diagnostics.
    pub fn memo_len(&self) -> usize {
        self.cross.len() + self.dot.len() + self.paths.len()
    }

    fn path(&self, from: &[u8], to: &[u8]) -> Arc<Vec<WordMove>> {
        memo(&self.paths, (from.into(), to.into()), || perm::move_path(from, to))
    }

    /// Degree of `ψ_w x^a 1_src`.
    pub(crate) fn degree(&self, word: &[u8], exps: &[u32], src: &[Vertex]) -> i64 {
        let mut col = src.to_vec();
        let mut d: i64 = 2 * exps.iter().map(|&e| e as i64).sum::<i64>();
        for &r in word {
            let r = r as usize;
            d -= self.pair(col[r], col[r + 1]) as i64;
            col.swap(r, r + 1);
        }
        d
    }

    /// `ψ_from 1_src` rewritten as `ψ_to 1_src` plus corrections, where `from`
    /// and `to` are reduced words of one permutation.
    fn straighten(&self, from: &[u8], to: &[u8], src: &[Vertex]) -> Vec<(i64, Vec<u8>)> {
        let mut w = from.to_vec();
        let mut corrections = Vec::new();
        for &mv in self.path(from, to).iter() {
            if mv.kind == MoveKind::Braid {
                let t = mv.at;
                let col = perm::act(&w[..t], src);
                let lo = w[t].min(w[t + 1]) as usize;
                let (p, q, s) = (col[lo], col[lo + 1], col[lo + 2]);
                if p == s && self.pair(p, q) == -1 {
                    let sign = if w[t] < w[t + 1] { 1 } else { -1 };
                    let mut short = w[..t].to_vec();
                    short.extend_from_slice(&w[t + 3..]);
                    corrections.push((sign, short));
                }
            }
            perm::apply_move(&mut w, mv);
        }
        corrections
    }

    /// Normal form of an arbitrary crossing word on `1_src`.
    pub(crate) fn eval_word(&self, word: &[u8], src: &[Vertex]) -> Lin {
        let m = src.len();
        let mut cur = Lin::new();
        cur.insert(Term { word: Vec::new(), exps: vec![0; m] }, 1);
        for &r in word {
            cur = self.cross_lin(r, &cur, src);
        }
        cur
    }

    fn cross_memo(&self, r: u8, word: &[u8], src: &[Vertex]) -> Arc<Lin> {
        memo(&self.cross, (r, word.into(), src.into()), || self.compute_cross(r, word, src))
    }

    fn compute_cross(&self, r: u8, word: &[u8], src: &[Vertex]) -> Lin {
        let m = src.len();
        let zero = vec![0u32; m];
        let at = perm::strands_after(word, m);
        let ri = r as usize;
        let mut out = Lin::new();
        if at[ri] < at[ri + 1] {
            let mut longer = word.to_vec();
            longer.push(r);
            let canon = perm::canonical_word(&perm::perm_of_word(&longer, m));
            for (sign, short) in self.straighten(&longer, &canon, src) {
                add_scaled(&mut out, &self.eval_word(&short, src), sign, &zero);
            }
            add_to(&mut out, Term { word: canon, exps: zero }, 1);
        } else {
            let mut p = perm::perm_of_word(word, m);
            for v in p.iter_mut() {
                if *v == r {
                    *v = r + 1;
                } else if *v == r + 1 {
                    *v = r;
                }
            }
            let shorter = perm::canonical_word(&p);
            let mut target = shorter.clone();
            target.push(r);
            for (sign, short) in self.straighten(word, &target, src) {
                let e = self.eval_word(&short, src);
                add_scaled(&mut out, &self.cross_lin(r, &e, src), sign, &zero);
            }
            // ψ_r ψ_r on top of ψ_shorter
            let col = perm::act(&shorter, src);
            let (a, b) = (col[ri], col[ri + 1]);
            match self.pair(a, b) {
                2 => {}
                0 => add_to(&mut out, Term { word: shorter, exps: zero }, 1),
                -1 => {
                    add_scaled(&mut out, &self.dot_memo(r, &shorter, src), 1, &zero);
                    add_scaled(&mut out, &self.dot_memo(r + 1, &shorter, src), 1, &zero);
                }
                other => panic!("unsupported Cartan entry {other}"),
            }
        }
        out
    }

    fn dot_memo(&self, k: u8, word: &[u8], src: &[Vertex]) -> Arc<Lin> {
        memo(&self.dot, (k, word.into(), src.into()), || self.compute_dot(k, word, src))
    }

    fn compute_dot(&self, k: u8, word: &[u8], src: &[Vertex]) -> Lin {
        let m = src.len();
        let zero = vec![0u32; m];
        let mut out = Lin::new();
        let Some((&r, below)) = word.split_last() else {
            let mut exps = zero;
            exps[k as usize] = 1;
            out.insert(Term { word: Vec::new(), exps }, 1);
            return out;
        };
        let col = perm::act(below, src);
        let same = col[r as usize] == col[r as usize + 1];
        let k2 = if k == r {
            r + 1
        } else if k == r + 1 {
            r
        } else {
            k
        };
        let inner = self.dot_memo(k2, below, src);
        out = self.cross_lin(r, &inner, src);
        if same && (k == r || k == r + 1) {
            let sign = if k == r { 1 } else { -1 };
            add_to(&mut out, Term { word: below.to_vec(), exps: zero }, sign);
        }
        out
    }

    /// `ψ_r · e` for `e` supported on source `src`.
    pub(crate) fn cross_lin(&self, r: u8, e: &Lin, src: &[Vertex]) -> Lin {
        let mut out = Lin::new();
        for (t, &c) in e {
            add_scaled(&mut out, &self.cross_memo(r, &t.word, src), c, &t.exps);
        }
        out
    }

    /// `x_k · e` for `e` supported on source `src`.
    pub(crate) fn dot_lin(&self, k: u8, e: &Lin, src: &[Vertex]) -> Lin {
        let mut out = Lin::new();
        for (t, &c) in e {
            add_scaled(&mut out, &self.dot_memo(k, &t.word, src), c, &t.exps);
        }
        out
    }

    /// `(ψ_u x^a) · e`: the dots of the upper monomial first, then its crossings.
    pub(crate) fn left_mul(&self, word: &[u8], exps: &[u32], e: &Lin, src: &[Vertex]) -> Lin {
        let mut cur = e.clone();
        for (k, &a) in exps.iter().enumerate() {
            for _ in 0..a {
                cur = self.dot_lin(k as u8, &cur, src);
            }
        }
        for &r in word {
            cur = self.cross_lin(r, &cur, src);
        }
        cur
    }
}
