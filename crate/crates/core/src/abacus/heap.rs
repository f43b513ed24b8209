use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::AbacusError;
use crate::quiver::{Seq, Vertex};

/// A bead: its tableau label and the runner it sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bead {
    pub position: usize,
    pub runner: Vertex,
}

/// A numbered bead configuration.
///
/// Beads are stored in physical placement order; `position` is the label the
/// current numbering assigns. The heap order depends only on the placement.
#[derive(Clone, Debug)]
pub struct HeapConfig {
    beads: Vec<Bead>,
    below: Vec<FixedBitSet>,
}

/// The unnumbered shape of a configuration: every bead is named by its runner
/// and its index on that runner (counted from the bottom), and the shape is the
/// set of strict heap relations between those names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub beads: Vec<(Vertex, usize)>,
    pub relations: Vec<((Vertex, usize), (Vertex, usize))>,
}

pub(crate) fn blocks(a: Vertex, b: Vertex) -> bool {
    (a.0 - b.0).abs() <= 1
}

/// `below[y]` = beads strictly below `y` for beads placed on `runners` in order.
pub(crate) fn heap_order(runners: &[Vertex]) -> Vec<FixedBitSet> {
    let m = runners.len();
    let mut below: Vec<FixedBitSet> = Vec::with_capacity(m);
    for y in 0..m {
        let mut set = FixedBitSet::with_capacity(m);
        for x in 0..y {
            if blocks(runners[x], runners[y]) {
                set.insert(x);
                set.union_with(&below[x]);
            }
        }
        below.push(set);
    }
    below
}

/// `conf(i)` with the numbering `T^i`.
pub fn conf(i: &Seq) -> HeapConfig {
    let beads: Vec<Bead> =
        i.entries().iter().enumerate().map(|(k, &runner)| Bead { position: k + 1, runner }).collect();
    let below = heap_order(i.entries());
    HeapConfig { beads, below }
}

impl HeapConfig {
    /// Configuration from beads given in placement order.
    pub fn from_beads(beads: Vec<Bead>) -> HeapConfig {
        let runners: Vec<Vertex> = beads.iter().map(|b| b.runner).collect();
        let below = heap_order(&runners);
        HeapConfig { beads, below }
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    /// Beads in placement order.
    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    /// Whether physical bead `x` lies strictly below physical bead `y`.
    pub fn is_below(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// Physical indices of `y` and everything below it.
    pub fn down_set(&self, y: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.below[y].ones().collect();
        out.push(y);
        out
    }

    /// The same configuration with a new numbering; `labels[k]` labels the `k`-th placed bead.
    pub fn relabel(&self, labels: &[usize]) -> Result<HeapConfig, AbacusError> {
        let m = self.len();
        let mut seen = vec![false; m + 1];
        if labels.len() != m {
            return Err(AbacusError::BadLabels { expected: m });
        }
        for &l in labels {
            if l == 0 || l > m || seen[l] {
                return Err(AbacusError::BadLabels { expected: m });
            }
            seen[l] = true;
        }
        let beads = self
            .beads
            .iter()
            .zip(labels)
            .map(|(b, &position)| Bead { position, runner: b.runner })
            .collect();
        Ok(HeapConfig { beads, below: self.below.clone() })
    }

    /// Canonical unnumbered shape.
    pub fn shape(&self) -> Shape {
        let mut count: BTreeMap<Vertex, usize> = BTreeMap::new();
        let names: Vec<(Vertex, usize)> = self
            .beads
            .iter()
            .map(|b| {
                let c = count.entry(b.runner).or_insert(0);
                *c += 1;
                (b.runner, *c)
            })
            .collect();
        let mut relations = Vec::new();
        for y in 0..self.len() {
            for x in self.below[y].ones() {
                relations.push((names[x], names[y]));
            }
        }
        relations.sort();
        let mut beads = names;
        beads.sort();
        Shape { beads, relations }
    }

    /// Vertical placement under gravity, in half-bead steps: a bead rests two
    /// steps above a bead on its own runner and one step above a neighbour.
    pub fn heights(&self) -> Vec<usize> {
        let mut h: Vec<usize> = Vec::with_capacity(self.len());
        for y in 0..self.len() {
            let mut level = 0;
            for x in 0..y {
                let (rx, ry) = (self.beads[x].runner, self.beads[y].runner);
                if rx == ry {
                    level = level.max(h[x] + 2);
                } else if blocks(rx, ry) {
                    level = level.max(h[x] + 1);
                }
            }
            h.push(level);
        }
        h
    }
}

/// Beads that can be slid off: the maximal elements of the heap order.
pub fn removable_beads(c: &HeapConfig) -> Vec<Bead> {
    let m = c.len();
    let mut out: Vec<Bead> =
        (0..m).filter(|&x| !(0..m).any(|y| c.is_below(x, y))).map(|x| c.beads[x]).collect();
    out.sort();
    out
}

/// `i^T`: entry `a` is the runner of the bead labelled `a`.
pub fn seq_from_tableau(c: &HeapConfig) -> Result<Seq, AbacusError> {
    let m = c.len();
    let mut by_label = vec![usize::MAX; m + 1];
    for (k, b) in c.beads.iter().enumerate() {
        if b.position == 0 || b.position > m || by_label[b.position] != usize::MAX {
            return Err(AbacusError::BadLabels { expected: m });
        }
        by_label[b.position] = k;
    }
    // Peel labels from the top: each must be maximal among the beads still present.
    for label in (1..=m).rev() {
        let y = by_label[label];
        let blocked = (1..label).any(|l| c.is_below(y, by_label[l]));
        if blocked {
            return Err(AbacusError::NonStandard { label });
        }
    }
    Ok(Seq::new((1..=m).map(|l| c.beads[by_label[l]].runner).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conf_examples() {
        let c = conf(&Seq::from_labels(&[0]));
        assert_eq!(c.beads(), &[Bead { position: 1, runner: Vertex(0) }]);
        let c = conf(&Seq::from_labels(&[0, 0]));
        assert!(c.is_below(0, 1));
        assert_eq!(c.heights(), vec![0, 2]);
    }

    #[test]
    fn worked_example_heights() {
        let c = conf(&Seq::from_labels(&[0, 1, -3, -4, -1, 2, 5, 2, 1, 0, -2, 2, -1]));
        // Figure rows (y = -18 + 4h): 1,3,7 at the bottom; 13 at the top.
        assert_eq!(c.heights(), vec![0, 1, 0, 1, 1, 2, 0, 4, 5, 6, 2, 6, 7]);
    }

    #[test]
    fn removable_examples() {
        let r = removable_beads(&conf(&Seq::from_labels(&[0, 0])));
        assert_eq!(r.iter().map(|b| b.position).collect::<Vec<_>>(), vec![2]);
        let r = removable_beads(&conf(&Seq::from_labels(&[0, 5])));
        assert_eq!(r.iter().map(|b| b.position).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn relabel_respects_blocking() {
        let c = conf(&Seq::from_labels(&[0, 1]));
        let swapped = c.relabel(&[2, 1]).unwrap();
        assert_eq!(seq_from_tableau(&swapped), Err(AbacusError::NonStandard { label: 2 }));
        let c = conf(&Seq::from_labels(&[0, 5]));
        let swapped = c.relabel(&[2, 1]).unwrap();
        assert_eq!(seq_from_tableau(&swapped).unwrap(), Seq::from_labels(&[5, 0]));
        assert!(c.relabel(&[1, 1]).is_err());
    }

    #[test]
    fn single_bead_round_trip() {
        let c = conf(&Seq::from_labels(&[-2]));
        assert_eq!(seq_from_tableau(&c).unwrap(), Seq::from_labels(&[-2]));
    }

    #[test]
    fn admissible_swap_keeps_shape() {
        let a = conf(&Seq::from_labels(&[0, 2, 1]));
        let b = conf(&Seq::from_labels(&[2, 0, 1]));
        assert_eq!(a.shape(), b.shape());
        let c = conf(&Seq::from_labels(&[0, 1, 2]));
        assert_ne!(a.shape(), c.shape());
    }
}
