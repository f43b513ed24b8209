#![allow(dead_code)]

use klr::klr::{Gen, Strategy};
use klr::quiver::{Seq, Vertex};
use rand::Rng;

/// A linear combination of raw generator words on `1_i` that must vanish.
pub struct Relation {
    pub name: String,
    pub seq: Seq,
    pub terms: Vec<(i64, Vec<Gen>)>,
}

fn pair(a: Vertex, b: Vertex) -> i32 {
    if a == b {
        2
    } else if (a.0 - b.0).abs() == 1 {
        -1
    } else {
        0
    }
}

fn rel(name: &str, i: &Seq, terms: Vec<(i64, Vec<Gen>)>) -> Relation {
    Relation { name: name.to_string(), seq: i.clone(), terms }
}

use Gen::{Cross as C, Dot as D};

/// Every local relation and derived identity at every position of `i`.
pub fn relations_on(i: &Seq) -> Vec<Relation> {
    let m = i.len();
    let c = i.entries();
    let mut out = Vec::new();
    for r in 0..m.saturating_sub(1) {
        let r8 = r as u8;
        let (a, b) = (c[r], c[r + 1]);
        // ψ_r^2
        let mut t = vec![(1, vec![C(r8), C(r8)])];
        match pair(a, b) {
            0 => t.push((-1, vec![])),
            -1 => {
                t.push((-1, vec![D(r8)]));
                t.push((-1, vec![D(r8 + 1)]));
            }
            _ => {}
        }
        out.push(rel("double crossing", i, t));
        // dots through ψ_r, word order is bottom-up
        for k in 0..m as u8 {
            let k2 = if k == r8 { r8 + 1 } else if k == r8 + 1 { r8 } else { k };
            let mut t = vec![(1, vec![C(r8), D(k)]), (-1, vec![D(k2), C(r8)])];
            if a == b && k == r8 {
                t.push((-1, vec![]));
            }
            if a == b && k == r8 + 1 {
                t.push((1, vec![]));
            }
            out.push(rel("dot slide", i, t));
        }
        // identities ψ x_r ψ = ψ, ψ x_{r+1} ψ = -ψ
        if a == b {
            out.push(rel("psi x_r psi", i, vec![(1, vec![C(r8), D(r8), C(r8)]), (-1, vec![C(r8)])]));
            out.push(rel("psi x_r+1 psi", i, vec![(1, vec![C(r8), D(r8 + 1), C(r8)]), (1, vec![C(r8)])]));
            for bexp in 1..=3u8 {
                // x_r^b ψ - ψ x_{r+1}^b = Σ x_r^l1 x_{r+1}^l2
                let mut t = vec![(1, [vec![C(r8)], vec![D(r8); bexp as usize]].concat())];
                t.push((-1, [vec![D(r8 + 1); bexp as usize], vec![C(r8)]].concat()));
                for l1 in 0..bexp {
                    let l2 = bexp - 1 - l1;
                    t.push((-1, [vec![D(r8); l1 as usize], vec![D(r8 + 1); l2 as usize]].concat()));
                }
                out.push(rel("x^b psi", i, t));
                // ψ x_r^b - x_{r+1}^b ψ = same sum
                let mut t = vec![(1, [vec![D(r8); bexp as usize], vec![C(r8)]].concat())];
                t.push((-1, [vec![C(r8)], vec![D(r8 + 1); bexp as usize]].concat()));
                for l1 in 0..bexp {
                    let l2 = bexp - 1 - l1;
                    t.push((-1, [vec![D(r8); l1 as usize], vec![D(r8 + 1); l2 as usize]].concat()));
                }
                out.push(rel("psi x^b", i, t));
            }
        }
        for s in r + 2..m.saturating_sub(1) {
            let s8 = s as u8;
            out.push(rel("distant crossings", i, vec![(1, vec![C(r8), C(s8)]), (-1, vec![C(s8), C(r8)])]));
        }
    }
    for r in 0..m.saturating_sub(2) {
        let r8 = r as u8;
        let (p, q, s) = (c[r], c[r + 1], c[r + 2]);
        let mut t = vec![(1, vec![C(r8), C(r8 + 1), C(r8)]), (-1, vec![C(r8 + 1), C(r8), C(r8 + 1)])];
        if p == s && pair(p, q) == -1 {
            t.push((-1, vec![]));
        }
        out.push(rel("braid", i, t));
    }
    for k in 0..m as u8 {
        for l in k + 1..m as u8 {
            out.push(rel("dots commute", i, vec![(1, vec![D(k), D(l)]), (-1, vec![D(l), D(k)])]));
        }
    }
    out
}

/// All sequences of length `m` over `window`.
pub fn all_seqs(window: &[i32], m: usize) -> Vec<Seq> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                window.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Seq::from_labels(&v)).collect()
}

pub fn random_seq<R: Rng>(rng: &mut R, window: &[i32], m: usize) -> Seq {
    Seq::from_labels(&(0..m).map(|_| window[rng.gen_range(0..window.len())]).collect::<Vec<_>>())
}

pub fn random_word<R: Rng>(rng: &mut R, m: usize, len: usize) -> Vec<Gen> {
    (0..len)
        .map(|_| {
            if m >= 2 && rng.gen_bool(0.6) {
                Gen::Cross(rng.gen_range(0..m - 1) as u8)
            } else {
                Gen::Dot(rng.gen_range(0..m) as u8)
            }
        })
        .collect()
}

/// Colours on top of a raw word.
pub fn word_target(gens: &[Gen], i: &Seq) -> Seq {
    let mut v = i.entries().to_vec();
    for g in gens {
        if let Gen::Cross(r) = g {
            v.swap(*r as usize, *r as usize + 1);
        }
    }
    Seq::new(v)
}

pub const STRATEGIES: [Strategy; 2] = [Strategy::DotsFirst, Strategy::BraidFirst];

pub fn random_word_upto<R: Rng>(rng: &mut R, m: usize, max_len: usize) -> Vec<Gen> {
    let len = rng.gen_range(0..=max_len);
    random_word(rng, m, len)
}

/// Rank over `Q` of sparse rows, by plain elimination.
pub fn rank<K: Ord + Clone>(rows: &[std::collections::BTreeMap<K, num_rational::BigRational>]) -> usize {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use std::collections::BTreeMap;
    let mut basis: BTreeMap<K, BTreeMap<K, BigRational>> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        r.retain(|_, v| !v.is_zero());
        loop {
            let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else { break };
            match basis.get(&k) {
                Some(b) => {
                    for (bk, bc) in b {
                        let v = r.entry(bk.clone()).or_insert_with(BigRational::zero);
                        *v -= &c * bc;
                    }
                    r.retain(|_, v| !v.is_zero());
                }
                None => {
                    let inv = BigRational::one() / &c;
                    let r: BTreeMap<_, _> = r.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                    basis.insert(k, r);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// For each multipartition shape reachable in `m` steps, the number of standard
/// tableaux with each residue sequence. Component `k` has charge `charges[k]` and
/// box `(row, col)` in it has residue `charges[k] + col - row`.
pub fn tableau_residues(charges: &[i32], m: usize) -> std::collections::BTreeMap<Vec<Vec<usize>>, std::collections::BTreeMap<Vec<i32>, usize>> {
    use std::collections::BTreeMap;
    fn go(
        charges: &[i32],
        m: usize,
        shape: &mut Vec<Vec<usize>>,
        path: &mut Vec<i32>,
        out: &mut BTreeMap<Vec<Vec<usize>>, BTreeMap<Vec<i32>, usize>>,
    ) {
        if path.len() == m {
            let key: Vec<Vec<usize>> = shape.iter().map(|p| p.iter().copied().filter(|&x| x > 0).collect()).collect();
            *out.entry(key).or_default().entry(path.clone()).or_insert(0) += 1;
            return;
        }
        for k in 0..shape.len() {
            let rows = shape[k].len();
            for row in 0..=rows {
                let len = if row < rows { shape[k][row] } else { 0 };
                let above = if row == 0 { usize::MAX } else { shape[k][row - 1] };
                if len >= above {
                    continue;
                }
                if row == rows {
                    shape[k].push(0);
                }
                shape[k][row] += 1;
                path.push(charges[k] + len as i32 - row as i32);
                go(charges, m, shape, path, out);
                path.pop();
                shape[k][row] -= 1;
                if row == rows {
                    shape[k].pop();
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    go(charges, m, &mut vec![Vec::new(); charges.len()], &mut Vec::new(), &mut out);
    out
}

/// `dim 1_top R^Λ 1_bottom` from standard tableaux: `Σ_shape #T(bottom) · #T(top)`.
pub fn tableau_block_dimension(weight: &klr::quiver::WeightSpec, bottom: &Seq, top: &Seq) -> usize {
    let charges: Vec<i32> = weight.iter().flat_map(|(v, k)| std::iter::repeat(v.0).take(k as usize)).collect();
    let b = bottom.labels();
    let t = top.labels();
    tableau_residues(&charges, bottom.len())
        .values()
        .map(|by_seq| by_seq.get(&b).copied().unwrap_or(0) * by_seq.get(&t).copied().unwrap_or(0))
        .sum()
}

/// Every weight of level `1..=max_level` supported on `window`.
pub fn weights_upto(window: &[i32], max_level: u32) -> Vec<klr::quiver::WeightSpec> {
    multisets(window, max_level).into_iter().map(|v| klr::quiver::WeightSpec::new(v)).collect()
}

/// Every root of height `1..=max_len` supported on `window`.
pub fn roots_upto(window: &[i32], max_len: u32) -> Vec<klr::quiver::RootSpec> {
    multisets(window, max_len).into_iter().map(|v| klr::quiver::RootSpec::new(v)).collect()
}

fn multisets(window: &[i32], max: u32) -> Vec<Vec<(i32, u32)>> {
    let mut out: Vec<Vec<(i32, u32)>> = Vec::new();
    fn go(window: &[i32], k: usize, left: u32, cur: &mut Vec<(i32, u32)>, out: &mut Vec<Vec<(i32, u32)>>) {
        if k == window.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=left {
            if c > 0 {
                cur.push((window[k], c));
            }
            go(window, k + 1, left - c, cur, out);
            if c > 0 {
                cur.pop();
            }
        }
    }
    go(window, 0, max, &mut Vec::new(), &mut out);
    out
}
