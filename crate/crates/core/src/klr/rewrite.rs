//! A term rewriter on raw generator words, independent of the memoized engine.
//!
//! A word lists generators bottom-up on top of `1_i`. Rules: a dot directly
//! above a crossing slides below it (with the same-colour correction), adjacent
//! dots sort by strand, `ψ_r ψ_r` collapses, and a run of crossings is moved to
//! the canonical reduced word along a shortest path of braid and commutation
//! moves found by breadth-first search.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{perm, Element, Monomial};
use crate::quiver::{CartanDatum, Seq, Vertex};

/// A generator, 0-based: `Dot(k)` is `x_{k+1}`, `Cross(r)` is `ψ_{r+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    Dot(u8),
    Cross(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Slide and sort dots before touching crossings.
    DotsFirst,
    /// Straighten crossing runs (topmost first) before moving dots.
    BraidFirst,
}

type Terms = Vec<(i64, Vec<Gen>)>;

fn colours_below(gens: &[Gen], t: usize, i: &[Vertex]) -> Vec<Vertex> {
    let mut col = i.to_vec();
    for g in &gens[..t] {
        if let Gen::Cross(r) = *g {
            col.swap(r as usize, r as usize + 1);
        }
    }
    col
}

fn splice(gens: &[Gen], from: usize, to: usize, mid: &[Gen]) -> Vec<Gen> {
    let mut out = gens[..from].to_vec();
    out.extend_from_slice(mid);
    out.extend_from_slice(&gens[to..]);
    out
}

fn slide_dot(gens: &[Gen], i: &[Vertex]) -> Option<Terms> {
    let t = (0..gens.len().saturating_sub(1))
        .find(|&t| matches!((gens[t], gens[t + 1]), (Gen::Cross(_), Gen::Dot(_))))?;
    let (Gen::Cross(r), Gen::Dot(k)) = (gens[t], gens[t + 1]) else { unreachable!() };
    let col = colours_below(gens, t, i);
    let same = col[r as usize] == col[r as usize + 1];
    let k2 = if k == r {
        r + 1
    } else if k == r + 1 {
        r
    } else {
        k
    };
    let mut out = vec![(1, splice(gens, t, t + 2, &[Gen::Dot(k2), Gen::Cross(r)]))];
    if same && (k == r || k == r + 1) {
        out.push((if k == r { 1 } else { -1 }, splice(gens, t, t + 2, &[])));
    }
    Some(out)
}

fn sort_dots(gens: &[Gen]) -> Option<Terms> {
    let t = (0..gens.len().saturating_sub(1))
        .find(|&t| matches!((gens[t], gens[t + 1]), (Gen::Dot(a), Gen::Dot(b)) if a > b))?;
    let mut w = gens.to_vec();
    w.swap(t, t + 1);
    Some(vec![(1, w)])
}

/// Maximal runs of consecutive crossings as `[start, end)`.
fn runs(gens: &[Gen]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut t = 0;
    while t < gens.len() {
        if matches!(gens[t], Gen::Cross(_)) {
            let s = t;
            while t < gens.len() && matches!(gens[t], Gen::Cross(_)) {
                t += 1;
            }
            out.push((s, t));
        } else {
            t += 1;
        }
    }
    out
}

fn neighbours(w: &[u8]) -> Vec<(usize, bool, Vec<u8>)> {
    let mut out = Vec::new();
    for t in 0..w.len().saturating_sub(1) {
        if w[t].abs_diff(w[t + 1]) >= 2 {
            let mut v = w.to_vec();
            v.swap(t, t + 1);
            out.push((t, false, v));
        }
        if t + 2 < w.len() && w[t] == w[t + 2] && w[t].abs_diff(w[t + 1]) == 1 {
            let mut v = w.to_vec();
            v[t] = w[t + 1];
            v[t + 1] = w[t];
            v[t + 2] = w[t + 1];
            out.push((t, true, v));
        }
    }
    out
}

/// Shortest move path from `w` to a word satisfying `goal`; each step is (position, is_braid).
fn bfs(w: &[u8], goal: impl Fn(&[u8]) -> bool) -> Option<Vec<(usize, bool)>> {
    let mut prev: HashMap<Vec<u8>, Option<(Vec<u8>, usize, bool)>> = HashMap::new();
    prev.insert(w.to_vec(), None);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if goal(&cur) {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some(Some((p, t, b))) = prev.get(&at).cloned() {
                path.push((t, b));
                at = p;
            }
            path.reverse();
            return Some(path);
        }
        for (t, b, next) in neighbours(&cur) {
            if !prev.contains_key(&next) {
                prev.insert(next.clone(), Some((cur.clone(), t, b)));
                queue.push_back(next);
            }
        }
    }
    None
}

fn straighten_run(
    datum: &CartanDatum,
    gens: &[Gen],
    (s, e): (usize, usize),
    i: &[Vertex],
) -> Option<Terms> {
    let m = i.len();
    let w: Vec<u8> = gens[s..e].iter().map(|g| if let Gen::Cross(r) = g { *r } else { unreachable!() }).collect();
    let reduced = perm::is_reduced(&w, m);
    let canon = reduced.then(|| perm::canonical_word(&perm::perm_of_word(&w, m)));
    if canon.as_deref() == Some(&w[..]) {
        return None;
    }
    let has_pair = |v: &[u8]| v.windows(2).any(|p| p[0] == p[1]);
    let path = match &canon {
        Some(c) => bfs(&w, |v| v == &c[..]).expect("reduced words are connected by moves"),
        None => bfs(&w, has_pair).expect("non-reduced words reach a repeated letter"),
    };
    let base = colours_below(gens, s, i);
    let mut out = Terms::new();
    let mut cur = w.clone();
    for (t, braid) in path {
        if braid {
            let col = perm::act(&cur[..t], &base);
            let lo = cur[t].min(cur[t + 1]) as usize;
            if col[lo] == col[lo + 2] && datum.pair(col[lo], col[lo + 1]) == -1 {
                let sign = if cur[t] < cur[t + 1] { 1 } else { -1 };
                let mut short: Vec<Gen> = cur[..t].iter().map(|&r| Gen::Cross(r)).collect();
                short.extend(cur[t + 3..].iter().map(|&r| Gen::Cross(r)));
                out.push((sign, splice(gens, s, e, &short)));
            }
            let (a, b) = (cur[t], cur[t + 1]);
            cur[t] = b;
            cur[t + 1] = a;
            cur[t + 2] = b;
        } else {
            cur.swap(t, t + 1);
        }
    }
    let as_gens = |v: &[u8]| v.iter().map(|&r| Gen::Cross(r)).collect::<Vec<_>>();
    if canon.is_some() {
        out.push((1, splice(gens, s, e, &as_gens(&cur))));
        return Some(out);
    }
    let t = cur.windows(2).position(|p| p[0] == p[1]).unwrap();
    let r = cur[t];
    let col = perm::act(&cur[..t], &base);
    let (a, b) = (col[r as usize], col[r as usize + 1]);
    let lower = as_gens(&cur[..t]);
    let upper = as_gens(&cur[t + 2..]);
    let with = |mid: &[Gen]| {
        let mut v = lower.clone();
        v.extend_from_slice(mid);
        v.extend_from_slice(&upper);
        splice(gens, s, e, &v)
    };
    match datum.pair(a, b) {
        2 => {}
        0 => out.push((1, with(&[]))),
        -1 => {
            out.push((1, with(&[Gen::Dot(r)])));
            out.push((1, with(&[Gen::Dot(r + 1)])));
        }
        other => panic!("unsupported Cartan entry {other}"),
    }
    Some(out)
}

fn straighten(datum: &CartanDatum, gens: &[Gen], i: &[Vertex], topmost: bool) -> Option<Terms> {
    let rs = runs(gens);
    let mut order: Vec<&(usize, usize)> = rs.iter().collect();
    if topmost {
        order.reverse();
    }
    order.into_iter().find_map(|&run| straighten_run(datum, gens, run, i))
}

fn step(datum: &CartanDatum, gens: &[Gen], i: &[Vertex], strategy: Strategy) -> Option<Terms> {
    match strategy {
        Strategy::DotsFirst => slide_dot(gens, i).or_else(|| sort_dots(gens)).or_else(|| straighten(datum, gens, i, false)),
        Strategy::BraidFirst => straighten(datum, gens, i, true).or_else(|| slide_dot(gens, i)).or_else(|| sort_dots(gens)),
    }
}

fn to_monomial(gens: &[Gen], i: &Seq) -> Monomial {
    let mut exps = vec![0u32; i.len()];
    let mut word = Vec::new();
    for g in gens {
        match *g {
            Gen::Dot(k) => exps[k as usize] += 1,
            Gen::Cross(r) => word.push(r),
        }
    }
    Monomial::new(i.clone(), word, exps).expect("rewriter stops at normal form")
}

/// Normal form of the raw word `gens` on `1_i` for `A_∞`.
pub fn reduce_word(gens: &[Gen], i: &Seq, strategy: Strategy) -> Element {
    reduce_word_with(&CartanDatum::AInfinity, gens, i, strategy)
}

pub fn reduce_word_with(datum: &CartanDatum, gens: &[Gen], i: &Seq, strategy: Strategy) -> Element {
    let src = i.entries();
    let mut pending: BTreeMap<Vec<Gen>, i64> = BTreeMap::new();
    pending.insert(gens.to_vec(), 1);
    let mut out = Element::zero();
    while let Some((w, c)) = pending.pop_first() {
        if c == 0 {
            continue;
        }
        match step(datum, &w, src, strategy) {
            None => out.add_term(to_monomial(&w, i), BigRational::from_integer(c.into()) * BigRational::one()),
            Some(terms) => {
                for (k, v) in terms {
                    *pending.entry(v).or_insert(0) += k * c;
                }
            }
        }
    }
    out
}
