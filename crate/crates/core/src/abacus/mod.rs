//! Bead-and-runner configurations for `A_∞` viewed as heaps of pieces.
//!
//! A sequence `i = i_1 … i_m` places bead `k` on runner `i_k`. Two beads block
//! each other iff their runners differ by at most one, and the heap order is the
//! transitive closure of "placed earlier and blocking". Standard tableaux are the
//! linear extensions of that order.
//!
//! With bead `r` anchored, antigravity keeps exactly the principal down-set of
//! bead `r`; the square, stack and L moves then thin the survivors until one
//! bead per runner is left. [`stable_support`] reads the support straight off
//! the down-set, while [`simulate_antigravity`] runs the moves.

mod heap;
mod moves;
pub mod render;

pub use heap::{conf, removable_beads, seq_from_tableau, Bead, HeapConfig, Shape};
pub use moves::{
    simulate_antigravity, AntigravityMove, AntigravityTrace, MoveKind, MoveSelector, SmallestFirst, TopDown,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{CartanDatum, Seq, Vertex, WeightSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbacusError {
    #[error("anchor position {r} out of range for a sequence of length {len}")]
    PositionOutOfRange { r: usize, len: usize },
    #[error("numbering is not a standard tableau: bead labelled {label} is not removable when reached")]
    NonStandard { label: usize },
    #[error("labels must be a permutation of 1..={expected}")]
    BadLabels { expected: usize },
    #[error("bead geometry is only defined for the A_∞ quiver")]
    NotTypeA,
}

/// Rejects Cartan data other than `A_∞`.
pub fn ensure_type_a(datum: &CartanDatum) -> Result<(), AbacusError> {
    if datum.is_a_infinity() {
        Ok(())
    } else {
        Err(AbacusError::NotTypeA)
    }
}

/// The runners occupied by a stable antigravity configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StableSupport {
    Empty,
    Interval(Vertex, Vertex),
}

impl StableSupport {
    pub fn contains(&self, v: Vertex) -> bool {
        match *self {
            StableSupport::Empty => false,
            StableSupport::Interval(a, b) => a <= v && v <= b,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            StableSupport::Empty => Vec::new(),
            StableSupport::Interval(a, b) => (a.0..=b.0).map(Vertex).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &StableSupport) -> bool {
        match (*self, *other) {
            (StableSupport::Empty, _) => true,
            (_, StableSupport::Empty) => false,
            (StableSupport::Interval(a, b), StableSupport::Interval(c, d)) => c <= a && b <= d,
        }
    }

    pub fn bounds(&self) -> Option<(i32, i32)> {
        match *self {
            StableSupport::Empty => None,
            StableSupport::Interval(a, b) => Some((a.0, b.0)),
        }
    }
}

fn check_anchor(i: &Seq, r: usize) -> Result<(), AbacusError> {
    if r == 0 || r > i.len() {
        Err(AbacusError::PositionOutOfRange { r, len: i.len() })
    } else {
        Ok(())
    }
}

/// Positions (1-indexed) of the beads that stay on the abacus with bead `r` anchored.
pub fn antigravity_survivors(i: &Seq, r: usize) -> Result<BTreeSet<usize>, AbacusError> {
    check_anchor(i, r)?;
    let c = conf(&i.truncated(r));
    Ok(c.down_set(r - 1).into_iter().map(|k| k + 1).collect())
}

/// `Supp(a_r(i))`, computed from the survivor down-set.
pub fn stable_support(i: &Seq, r: usize) -> Result<StableSupport, AbacusError> {
    let survivors = antigravity_survivors(i, r)?;
    let runners: BTreeSet<i32> = survivors.iter().map(|&k| i.at(k).0).collect();
    let (lo, hi) = match (runners.first(), runners.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Ok(StableSupport::Empty),
    };
    debug_assert_eq!(runners.len() as i32, hi - lo + 1, "survivor runners form an interval");
    Ok(StableSupport::Interval(Vertex(lo), Vertex(hi)))
}

/// Whether the survivors already carry exactly one bead per runner.
pub fn is_r_stable(i: &Seq, r: usize) -> Result<bool, AbacusError> {
    let survivors = antigravity_survivors(i, r)?;
    let runners: BTreeSet<i32> = survivors.iter().map(|&k| i.at(k).0).collect();
    Ok(runners.len() == survivors.len())
}

/// `b_r(i) = Σ_{j ∈ Supp(a_r(i))} λ_j`.
pub fn antigravity_bound(i: &Seq, r: usize, weight: &WeightSpec) -> Result<u32, AbacusError> {
    let support = stable_support(i, r)?;
    Ok(support.vertices().into_iter().map(|v| weight.get(v)).sum())
}

/// The survivor subsequence `i'` (in placement order) for anchor `r`.
pub fn survivor_subsequence(i: &Seq, r: usize) -> Result<Seq, AbacusError> {
    let survivors = antigravity_survivors(i, r)?;
    Ok(Seq::new(survivors.iter().map(|&k| i.at(k)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> Seq {
        Seq::from_labels(&[0, 1, -3, -4, -1, 2, 5, 2, 1, 0, -2, 2, -1])
    }

    #[test]
    fn worked_example_survivors() {
        let s = antigravity_survivors(&worked(), 13).unwrap();
        let removed: Vec<usize> = (1..=13).filter(|k| !s.contains(k)).collect();
        assert_eq!(removed, vec![4, 7, 12]);
    }

    #[test]
    fn worked_example_support_and_bound() {
        let i = worked();
        assert_eq!(stable_support(&i, 13).unwrap(), StableSupport::Interval(Vertex(-3), Vertex(2)));
        let w = WeightSpec::new([(-4, 7), (-3, 1), (-2, 2), (-1, 3), (0, 4), (1, 5), (2, 6), (3, 11)]);
        assert_eq!(antigravity_bound(&i, 13, &w).unwrap(), 1 + 2 + 3 + 4 + 5 + 6);
    }

    #[test]
    fn small_survivor_examples() {
        let s = antigravity_survivors(&Seq::from_labels(&[0, 5]), 2).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![2]);
        let s = antigravity_survivors(&Seq::from_labels(&[0, 1, 2]), 3).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn support_examples() {
        assert_eq!(
            stable_support(&Seq::from_labels(&[4]), 1).unwrap(),
            StableSupport::Interval(Vertex(4), Vertex(4))
        );
        assert_eq!(
            stable_support(&Seq::from_labels(&[0, 5]), 2).unwrap(),
            StableSupport::Interval(Vertex(5), Vertex(5))
        );
        assert!(stable_support(&Seq::from_labels(&[0, 5]), 3).is_err());
        assert!(stable_support(&Seq::from_labels(&[0, 5]), 0).is_err());
    }

    #[test]
    fn stability_examples() {
        assert!(is_r_stable(&Seq::from_labels(&[-1, 1, 0]), 3).unwrap());
        assert!(!is_r_stable(&Seq::from_labels(&[0, 0]), 2).unwrap());
        assert!(is_r_stable(&Seq::from_labels(&[7]), 1).unwrap());
    }

    #[test]
    fn bound_examples() {
        let w = WeightSpec::new([(3, 2)]);
        assert_eq!(antigravity_bound(&Seq::from_labels(&[3]), 1, &w).unwrap(), 2);
        let w = WeightSpec::new([(0, 1), (1, 1)]);
        assert_eq!(antigravity_bound(&Seq::from_labels(&[0, 1]), 2, &w).unwrap(), 2);
    }

    #[test]
    fn non_a_datum_rejected() {
        assert_eq!(ensure_type_a(&CartanDatum::graph([(0, 1)])), Err(AbacusError::NotTypeA));
        assert!(ensure_type_a(&CartanDatum::AInfinity).is_ok());
    }
}
