//! Incremental row echelon forms over `Z` (fraction-free) and over `F_p`.
//!
//! Rows are sparse, sorted by column. Each stored row is keyed by its leading
//! column, and an incoming row is reduced only at its leading entry until it
//! either vanishes or starts at a fresh pivot.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Smallest prime modulus accepted for prime-field mode.
pub const MIN_PRIME: u64 = 1 << 20;
/// Default prime for prime-field mode: `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    Exact,
    Prime(u64),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field, String> {
        let s = s.trim();
        if s == "exact" {
            return Ok(Field::Exact);
        }
        let p = s.strip_prefix("prime:").ok_or_else(|| format!("expected exact or prime:P, got {s:?}"))?;
        let p: u64 = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
        if p < MIN_PRIME || p >= 1 << 62 || !is_prime(p) {
            return Err(format!("{p} is not a prime in [2^20, 2^62)"));
        }
        Ok(Field::Prime(p))
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Exact => write!(f, "exact"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub type SparseRow<T> = Vec<(usize, T)>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rational to `F_p`; `None` if the denominator vanishes mod `p`.
pub fn rational_mod(c: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = c.numer().mod_floor(&pb).to_u64()?;
    let d = c.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, p - 2, p), p))
}

/// Echelon form over `F_p` with monic pivots.
#[derive(Clone, Debug)]
pub struct PrimeEchelon {
    p: u64,
    ncols: usize,
    rows: BTreeMap<usize, SparseRow<u64>>,
}

impl PrimeEchelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        PrimeEchelon { p, ncols, rows: BTreeMap::new() }
    }

    fn reduce(&self, mut v: SparseRow<u64>) -> SparseRow<u64> {
        let p = self.p;
        while let Some(&(c, a)) = v.first() {
            let Some(piv) = self.rows.get(&c) else { break };
            // v -= a * piv
            let mut out = Vec::with_capacity(v.len() + piv.len());
            let (mut x, mut y) = (0, 0);
            while x < v.len() || y < piv.len() {
                let cx = v.get(x).map_or(usize::MAX, |e| e.0);
                let cy = piv.get(y).map_or(usize::MAX, |e| e.0);
                if cx < cy {
                    out.push(v[x]);
                    x += 1;
                } else if cy < cx {
                    out.push((cy, (p - mulmod(a, piv[y].1, p)) % p));
                    y += 1;
                } else {
                    let val = (v[x].1 + p - mulmod(a, piv[y].1, p)) % p;
                    if val != 0 {
                        out.push((cx, val));
                    }
                    x += 1;
                    y += 1;
                }
            }
            v = out;
        }
        v
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseRow<u64>) -> bool {
        let v = self.reduce(v);
        let Some(&(c, a)) = v.first() else { return false };
        let inv = powmod(a, self.p - 2, self.p);
        let v = v.into_iter().map(|(k, x)| (k, mulmod(x, inv, self.p))).collect();
        self.rows.insert(c, v);
        true
    }

    pub fn contains(&self, v: SparseRow<u64>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// Fraction-free echelon form over `Z`; every stored row is primitive with a positive pivot.
#[derive(Clone, Debug)]
pub struct ExactEchelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow<BigInt>>,
}

fn primitive(v: &mut SparseRow<BigInt>) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let neg = v.first().is_some_and(|e| e.1.is_negative());
    if g.is_zero() {
        return;
    }
    if neg {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl ExactEchelon {
    pub fn new(ncols: usize) -> Self {
        ExactEchelon { ncols, rows: BTreeMap::new() }
    }

    fn reduce(&self, mut v: SparseRow<BigInt>) -> SparseRow<BigInt> {
        primitive(&mut v);
        while let Some((c, a)) = v.first().map(|e| (e.0, e.1.clone())) {
            let Some(piv) = self.rows.get(&c) else { break };
            let b = &piv[0].1;
            let g = a.gcd(b);
            let (fa, fb) = (b / &g, &a / &g);
            // v = fa * v - fb * piv
            let mut out = Vec::with_capacity(v.len() + piv.len());
            let (mut x, mut y) = (0, 0);
            while x < v.len() || y < piv.len() {
                let cx = v.get(x).map_or(usize::MAX, |e| e.0);
                let cy = piv.get(y).map_or(usize::MAX, |e| e.0);
                if cx < cy {
                    out.push((cx, &fa * &v[x].1));
                    x += 1;
                } else if cy < cx {
                    out.push((cy, -(&fb * &piv[y].1)));
                    y += 1;
                } else {
                    let val = &fa * &v[x].1 - &fb * &piv[y].1;
                    if !val.is_zero() {
                        out.push((cx, val));
                    }
                    x += 1;
                    y += 1;
                }
            }
            v = out;
            primitive(&mut v);
        }
        v
    }

    pub fn insert(&mut self, v: SparseRow<BigInt>) -> bool {
        let v = self.reduce(v);
        let Some(&(c, _)) = v.first() else { return false };
        self.rows.insert(c, v);
        true
    }

    pub fn contains(&self, v: SparseRow<BigInt>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduced row-echelon form over `Q` (monic pivots, zeros above every pivot).
    pub fn rref(&self) -> Vec<SparseRow<BigRational>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for (&c, row) in self.rows.iter().rev() {
            let lead = BigRational::from_integer(row[0].1.clone());
            let mut r: BTreeMap<usize, BigRational> =
                row.iter().map(|(k, x)| (*k, BigRational::from_integer(x.clone()) / &lead)).collect();
            // clear entries at later pivots
            let later: Vec<usize> = r.keys().copied().filter(|k| *k != c && out.contains_key(k)).collect();
            for k in later {
                let f = r[&k].clone();
                if f.is_zero() {
                    continue;
                }
                for (kk, x) in &out[&k] {
                    let e = r.entry(*kk).or_insert_with(BigRational::zero);
                    *e -= &f * x;
                }
                r.retain(|_, x| !x.is_zero());
            }
            out.insert(c, r);
        }
        out.into_values().map(|r| r.into_iter().collect()).collect()
    }

    /// Loads rows known to be in echelon form (e.g. from [`ExactEchelon::rref`]).
    pub fn from_rref(ncols: usize, rows: &[SparseRow<BigRational>]) -> Self {
        let mut e = ExactEchelon::new(ncols);
        for r in rows {
            let den = r.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
            let mut v: SparseRow<BigInt> =
                r.iter().map(|(k, x)| (*k, (x * BigRational::from_integer(den.clone())).to_integer())).collect();
            primitive(&mut v);
            if let Some(&(c, _)) = v.first() {
                e.rows.insert(c, v);
            }
        }
        e
    }
}

/// Either echelon form behind one interface.
#[derive(Clone, Debug)]
pub enum Echelon {
    Exact(ExactEchelon),
    Prime(PrimeEchelon),
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        match field {
            Field::Exact => Echelon::Exact(ExactEchelon::new(ncols)),
            Field::Prime(p) => Echelon::Prime(PrimeEchelon::new(p, ncols)),
        }
    }

    /// Inserts an integer row given as (column, value) pairs in any order.
    pub fn insert_int(&mut self, row: &[(usize, i64)]) -> bool {
        match self {
            Echelon::Exact(e) => e.insert(to_big(row)),
            Echelon::Prime(e) => {
                let p = e.prime();
                e.insert(to_mod(row, p))
            }
        }
    }

    pub fn contains_rational(&self, row: &[(usize, BigRational)]) -> bool {
        match self {
            Echelon::Exact(e) => {
                let den = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
                let mut v: SparseRow<BigInt> = row
                    .iter()
                    .map(|(k, x)| (*k, (x * BigRational::from_integer(den.clone())).to_integer()))
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                v.sort_by_key(|e| e.0);
                e.contains(v)
            }
            Echelon::Prime(e) => {
                let p = e.prime();
                let mut v: SparseRow<u64> = row
                    .iter()
                    .map(|(k, x)| (*k, rational_mod(x, p).expect("denominator divisible by the prime")))
                    .filter(|(_, x)| *x != 0)
                    .collect();
                v.sort_by_key(|e| e.0);
                e.contains(v)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Echelon::Exact(e) => e.rank(),
            Echelon::Prime(e) => e.rank(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            Echelon::Exact(e) => e.ncols(),
            Echelon::Prime(e) => e.ncols(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols()
    }
}

fn to_big(row: &[(usize, i64)]) -> SparseRow<BigInt> {
    let mut v: SparseRow<BigInt> = row.iter().filter(|e| e.1 != 0).map(|&(k, x)| (k, BigInt::from(x))).collect();
    v.sort_by_key(|e| e.0);
    v
}

fn to_mod(row: &[(usize, i64)], p: u64) -> SparseRow<u64> {
    let mut v: SparseRow<u64> = row
        .iter()
        .map(|&(k, x)| (k, x.rem_euclid(p as i64) as u64))
        .filter(|e| e.1 != 0)
        .collect();
    v.sort_by_key(|e| e.0);
    v
}
