//! Theorem, tightness and anchor-propagation reports over a quotient context.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CyclotomicError, QuotientContext};
use crate::abacus::{antigravity_bound, is_r_stable};
use crate::quiver::{RootSpec, Seq, WeightSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    One(Seq, usize),
}

/// One `(i, r)` check. Only the first five fields are serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub seq: Seq,
    pub r: usize,
    pub bound: u32,
    /// `None` when no `n <= ℓ(Λ)` works.
    pub nilpotency: Option<u32>,
    pub pass: bool,
    /// `x_r^{b_r} = 0`.
    #[serde(skip)]
    pub theorem: bool,
    /// `x_r^{ℓ(Λ)} = 0`.
    #[serde(skip)]
    pub corollary: bool,
    /// Set for `r`-stable sequences only.
    #[serde(skip)]
    pub lemma: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub nu: RootSpec,
    pub lambda: WeightSpec,
    pub checks: Vec<Check>,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessEntry {
    pub seq: Seq,
    pub r: usize,
    pub bound: u32,
    pub actual: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorViolation {
    pub seq: Seq,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorReport {
    /// Sequences with a repeated last pair.
    pub checked: usize,
    pub violations: Vec<AnchorViolation>,
}

impl AnchorReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl QuotientContext {
    fn pairs(&self, scope: &Scope) -> Result<Vec<(Seq, usize)>, CyclotomicError> {
        match scope {
            Scope::All => {
                Ok(self.sequences().into_iter().flat_map(|i| (1..=i.len()).map(move |r| (i.clone(), r))).collect())
            }
            Scope::One(i, r) => {
                self.check_seq(i)?;
                if *r == 0 || *r > i.len() {
                    return Err(crate::klr::KlrError::PositionOutOfRange { r: *r, len: i.len() }.into());
                }
                Ok(vec![(i.clone(), *r)])
            }
        }
    }

    pub fn check(&self, i: &Seq, r: usize) -> Result<Check, CyclotomicError> {
        let bound = antigravity_bound(i, r, &self.weight)?;
        let nilpotency = self.find_nilpotency(i, r)?;
        let theorem = self.dot_power_vanishes(i, r, bound)?;
        let corollary = self.dot_power_vanishes(i, r, self.level())?;
        let lemma = is_r_stable(i, r)?.then_some(theorem);
        let pass = theorem && corollary && nilpotency.is_some_and(|n| n <= bound);
        Ok(Check { seq: i.clone(), r, bound, nilpotency, pass, theorem, corollary, lemma })
    }

    /// Checks `x_{r,i}^{b_r(i)} = 0` and `x_{r,i}^{ℓ(Λ)} = 0` over `scope`, in parallel
    /// on the current rayon pool; checks come back in `(i, r)` order.
    pub fn verify_theorem(&self, scope: &Scope) -> Result<Report, CyclotomicError> {
        let start = Instant::now();
        let pairs = self.pairs(scope)?;
        let checks = pairs.par_iter().map(|(i, r)| self.check(i, *r)).collect::<Result<Vec<_>, _>>()?;
        Ok(Report {
            nu: self.root.clone(),
            lambda: self.weight.clone(),
            checks,
            timing_ms: Some(QuotientContext::elapsed_ms(start)),
        })
    }

    /// Every `(i, r)` with `1_i ≠ 0` whose nilpotency degree is strictly below `b_r(i)`.
    pub fn tightness_report(&self) -> Result<Vec<TightnessEntry>, CyclotomicError> {
        let pairs = self.pairs(&Scope::All)?;
        let found = pairs
            .par_iter()
            .map(|(i, r)| -> Result<Option<TightnessEntry>, CyclotomicError> {
                if self.idempotent_vanishes(i) {
                    return Ok(None);
                }
                let bound = antigravity_bound(i, *r, &self.weight)?;
                let actual = self.nilpotency_degree(i, *r)?;
                Ok((actual < bound).then(|| TightnessEntry { seq: i.clone(), r: *r, bound, actual }))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(found.into_iter().flatten().collect())
    }

    /// For `i_{m-1} = i_m`: `x_{m-1}^b = 0` implies `x_m^b = 0` for every `b <= ℓ(Λ)`.
    pub fn check_anchor_prop(&self) -> Result<AnchorReport, CyclotomicError> {
        let seqs: Vec<Seq> = self
            .sequences()
            .into_iter()
            .filter(|i| i.len() >= 2 && i.at(i.len() - 1) == i.at(i.len()))
            .collect();
        let found = seqs
            .par_iter()
            .map(|i| -> Result<Vec<AnchorViolation>, CyclotomicError> {
                let m = i.len();
                let mut out = Vec::new();
                for b in 0..=self.level() {
                    if self.dot_power_vanishes(i, m - 1, b)? && !self.dot_power_vanishes(i, m, b)? {
                        out.push(AnchorViolation { seq: i.clone(), b });
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AnchorReport { checked: seqs.len(), violations: found.into_iter().flatten().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(nu: &[(i32, u32)], w: &[(i32, u32)]) -> QuotientContext {
        QuotientContext::new(RootSpec::new(nu.iter().copied()), WeightSpec::new(w.iter().copied())).unwrap()
    }

    #[test]
    fn single_vertex_passes() {
        let r = ctx(&[(0, 1)], &[(0, 1)]).verify_theorem(&Scope::All).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].nilpotency, Some(1));
    }

    #[test]
    fn small_grids_pass() {
        for (nu, w) in [(vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]), (vec![(0, 2), (1, 1)], vec![(0, 2)])] {
            let c = ctx(&nu, &w);
            assert!(c.verify_theorem(&Scope::All).unwrap().all_pass());
            assert!(c.check_anchor_prop().unwrap().pass());
        }
    }

    #[test]
    fn report_json_shape() {
        let mut r = ctx(&[(0, 1)], &[(0, 1)]).verify_theorem(&Scope::All).unwrap();
        r.timing_ms = None;
        assert_eq!(
            r.to_json(),
            r#"{"nu":{"0":1},"lambda":{"0":1},"checks":[{"seq":[0],"r":1,"bound":1,"nilpotency":1,"pass":true}],"timing_ms":null}"#
        );
    }

    #[test]
    fn one_scope() {
        let c = ctx(&[(0, 1), (1, 1)], &[(0, 1), (1, 1)]);
        let r = c.verify_theorem(&Scope::One(Seq::from_labels(&[0, 1]), 2)).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert_eq!((r.checks[0].bound, r.checks[0].nilpotency), (2, Some(2)));
        assert!(c.verify_theorem(&Scope::One(Seq::from_labels(&[0, 1]), 3)).is_err());
    }
}
