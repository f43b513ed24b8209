use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::heap::{blocks, heap_order, Bead, HeapConfig};
use super::{antigravity_survivors, AbacusError, StableSupport};
use crate::quiver::{Seq, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "square")]
    Square,
    #[serde(rename = "stack")]
    Stack,
    #[serde(rename = "L")]
    L,
}

/// One antigravity move. Witness order: square `[left, right, anchor]`,
/// stack `[other bead of the pair]`, L `[upper bead, side bead]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntigravityMove {
    pub kind: MoveKind,
    pub destroyed: usize,
    pub witnesses: Vec<usize>,
}

impl fmt::Display for AntigravityMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witnesses;
        match self.kind {
            MoveKind::Square => write!(f, "square({};{},{},{})", self.destroyed, w[0], w[1], w[2]),
            MoveKind::Stack => write!(f, "stack({} over {})", self.destroyed, w[0]),
            MoveKind::L => write!(f, "L({},{};{})", self.destroyed, w[0], w[1]),
        }
    }
}

/// Picks one of the applicable moves. Candidates arrive sorted by (kind, destroyed).
pub trait MoveSelector {
    fn select(&mut self, candidates: &[AntigravityMove]) -> usize;
}

/// Anchor square first, then the L-move destroying the smallest label, then
/// the stack move destroying the smallest label.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmallestFirst;

impl MoveSelector for SmallestFirst {
    fn select(&mut self, candidates: &[AntigravityMove]) -> usize {
        let pick = |kind: MoveKind| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, m)| m.kind == kind)
                .min_by_key(|(_, m)| m.destroyed)
                .map(|(k, _)| k)
        };
        pick(MoveKind::Square).or_else(|| pick(MoveKind::L)).or_else(|| pick(MoveKind::Stack)).unwrap_or(0)
    }
}

/// Anchor square first, then stacks (smallest label), then L-moves from the
/// top down (largest destroyed label). Reproduces the hand computation of the
/// 13-bead example.
#[derive(Clone, Copy, Debug, Default)]
pub struct TopDown;

impl MoveSelector for TopDown {
    fn select(&mut self, candidates: &[AntigravityMove]) -> usize {
        let by = |kind: MoveKind, largest: bool| {
            let it = candidates.iter().enumerate().filter(|(_, m)| m.kind == kind);
            if largest {
                it.max_by_key(|(_, m)| m.destroyed).map(|(k, _)| k)
            } else {
                it.min_by_key(|(_, m)| m.destroyed).map(|(k, _)| k)
            }
        };
        by(MoveKind::Square, false)
            .or_else(|| by(MoveKind::Stack, false))
            .or_else(|| by(MoveKind::L, true))
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntigravityTrace {
    #[serde(skip)]
    pub anchor: usize,
    /// Survivors of antigravity before any move, as (label, runner) in placement order.
    #[serde(skip)]
    pub initial: Vec<(usize, Vertex)>,
    pub moves: Vec<AntigravityMove>,
    /// Beads left when no move applies.
    #[serde(skip)]
    pub remaining: Vec<(usize, Vertex)>,
    #[serde(serialize_with = "ser_support", deserialize_with = "de_support")]
    pub support: StableSupport,
}

fn ser_support<S: serde::Serializer>(s: &StableSupport, ser: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    match s.bounds() {
        Some((a, b)) => [a, b].serialize(ser),
        None => Vec::<i32>::new().serialize(ser),
    }
}

fn de_support<'de, D: serde::Deserializer<'de>>(d: D) -> Result<StableSupport, D::Error> {
    let v: Vec<i32> = Vec::deserialize(d)?;
    match v.as_slice() {
        [] => Ok(StableSupport::Empty),
        [a, b] => Ok(StableSupport::Interval(Vertex(*a), Vertex(*b))),
        _ => Err(serde::de::Error::custom("support must be [] or [a,b]")),
    }
}

impl AntigravityTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    /// Runners of the remaining beads, with multiplicity.
    pub fn remaining_runners(&self) -> Vec<Vertex> {
        let mut r: Vec<Vertex> = self.remaining.iter().map(|b| b.1).collect();
        r.sort();
        r
    }

    /// Support of the beads left at the end of the simulation.
    pub fn final_support(&self) -> StableSupport {
        let r = self.remaining_runners();
        match (r.first(), r.last()) {
            (Some(&a), Some(&b)) => StableSupport::Interval(a, b),
            _ => StableSupport::Empty,
        }
    }

    pub fn initial_config(&self) -> HeapConfig {
        to_config(&self.initial)
    }

    pub fn final_config(&self) -> HeapConfig {
        to_config(&self.remaining)
    }

    /// State after the first `k` moves.
    pub fn config_after(&self, k: usize) -> HeapConfig {
        let gone: BTreeSet<usize> = self.moves[..k].iter().map(|m| m.destroyed).collect();
        to_config(&self.initial.iter().copied().filter(|b| !gone.contains(&b.0)).collect::<Vec<_>>())
    }

    /// Whether the end state has exactly one bead per runner.
    pub fn is_stable(&self) -> bool {
        let r = self.remaining_runners();
        r.windows(2).all(|w| w[0] != w[1])
    }
}

fn to_config(beads: &[(usize, Vertex)]) -> HeapConfig {
    HeapConfig::from_beads(beads.iter().map(|&(position, runner)| Bead { position, runner }).collect())
}

/// All moves applicable to `beads` (placement order) with anchor label `anchor`.
pub(crate) fn applicable_moves(beads: &[(usize, Vertex)], anchor: usize) -> Vec<AntigravityMove> {
    let runners: Vec<Vertex> = beads.iter().map(|b| b.1).collect();
    let below = heap_order(&runners);
    let lt = |x: usize, y: usize| below[y].contains(x);
    let mut out = Vec::new();
    let runner_set: BTreeSet<Vertex> = runners.iter().copied().collect();
    for &k in &runner_set {
        let on: Vec<usize> = (0..beads.len()).filter(|&x| runners[x] == k).collect();
        for pair in on.windows(2) {
            let (x, y) = (pair[0], pair[1]);
            let between: Vec<usize> =
                (x + 1..y).filter(|&z| blocks(runners[z], k) && lt(x, z) && lt(z, y)).collect();
            let left = between.iter().copied().filter(|&z| runners[z].0 < k.0).max();
            let right = between.iter().copied().filter(|&z| runners[z].0 > k.0).max();
            let (lx, ly) = (beads[x].0, beads[y].0);
            match (left, right) {
                (None, None) => {
                    let (destroyed, other) = if ly == anchor { (lx, ly) } else { (ly, lx) };
                    out.push(AntigravityMove { kind: MoveKind::Stack, destroyed, witnesses: vec![other] });
                }
                (Some(l), Some(r)) => {
                    if ly == anchor {
                        out.push(AntigravityMove {
                            kind: MoveKind::Square,
                            destroyed: lx,
                            witnesses: vec![beads[l].0, beads[r].0, ly],
                        });
                    }
                }
                (Some(s), None) | (None, Some(s)) => {
                    out.push(AntigravityMove { kind: MoveKind::L, destroyed: lx, witnesses: vec![ly, beads[s].0] });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.kind, a.destroyed).cmp(&(b.kind, b.destroyed)));
    out
}

/// Runs antigravity moves from the survivor configuration of anchor `r` until none applies.
pub fn simulate_antigravity(
    i: &Seq,
    r: usize,
    selector: &mut dyn MoveSelector,
) -> Result<AntigravityTrace, AbacusError> {
    let survivors = antigravity_survivors(i, r)?;
    let initial: Vec<(usize, Vertex)> = survivors.iter().map(|&k| (k, i.at(k))).collect();
    let mut beads = initial.clone();
    let mut moves = Vec::new();
    loop {
        let candidates = applicable_moves(&beads, r);
        if candidates.is_empty() {
            break;
        }
        let pick = selector.select(&candidates).min(candidates.len() - 1);
        let mv = candidates[pick].clone();
        beads.retain(|b| b.0 != mv.destroyed);
        // Every move deletes a bead with a same-runner partner, so the anchor's
        // down-set loses only that bead and nothing needs to be pulled off.
        debug_assert!({
            let runners: Vec<Vertex> = beads.iter().map(|b| b.1).collect();
            let below = heap_order(&runners);
            let a = beads.iter().position(|b| b.0 == r).expect("anchor survives");
            below[a].count_ones(..) + 1 == beads.len()
        });
        moves.push(mv);
    }
    let support = super::stable_support(i, r)?;
    Ok(AntigravityTrace { anchor: r, initial, moves, remaining: beads, support })
}
