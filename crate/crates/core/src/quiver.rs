//! Quiver data: vertices, the Cartan pairing, weights, roots and vertex sequences.
//!
//! Vertices are signed integers. The default Cartan datum is the infinite
//! linear quiver `A_∞`, where `i` and `j` are joined by an edge iff `|i - j| = 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default bound on `|ν|` for operations that enumerate `Seq(ν)`.
pub const DEFAULT_SEQ_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("refusing to enumerate {count} sequences of length {len} (cap is length {cap})")]
    CapExceeded { len: usize, cap: usize, count: u128 },
    #[error("position {r} out of range for a sequence of length {len}")]
    PositionOutOfRange { r: usize, len: usize },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

/// A vertex of the quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub i32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i32> for Vertex {
    fn from(v: i32) -> Self {
        Vertex(v)
    }
}

/// A simply-laced Cartan datum on integer-labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum CartanDatum {
    /// The infinite chain; `i · j = -1` iff `|i - j| = 1`.
    #[default]
    AInfinity,
    /// An arbitrary simply-laced graph given by its (undirected) edges.
    Graph { edges: BTreeSet<(Vertex, Vertex)> },
}

impl CartanDatum {
    pub fn graph<I: IntoIterator<Item = (i32, i32)>>(edges: I) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (Vertex(a), Vertex(b)) } else { (Vertex(b), Vertex(a)) })
            .collect();
        CartanDatum::Graph { edges }
    }

    pub fn is_a_infinity(&self) -> bool {
        matches!(self, CartanDatum::AInfinity)
    }

    /// The symmetric bilinear form `i · j`.
    pub fn pair(&self, i: Vertex, j: Vertex) -> i32 {
        if i == j {
            return 2;
        }
        let joined = match self {
            CartanDatum::AInfinity => (i.0 - j.0).abs() == 1,
            CartanDatum::Graph { edges } => {
                let key = if i <= j { (i, j) } else { (j, i) };
                edges.contains(&key)
            }
        };
        if joined {
            -1
        } else {
            0
        }
    }
}

/// `i · j` under `datum`.
pub fn cartan_pair(datum: &CartanDatum, i: Vertex, j: Vertex) -> i32 {
    datum.pair(i, j)
}

fn ser_vertex_map<S: Serializer>(map: &BTreeMap<Vertex, u32>, s: S) -> Result<S::Ok, S::Error> {
    // Emit keys in numeric order rather than string order.
    use serde::ser::SerializeMap;
    let mut out = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        out.serialize_entry(&k.0.to_string(), v)?;
    }
    out.end()
}

fn de_vertex_map<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vertex, u32>, D::Error> {
    let raw: BTreeMap<String, u32> = BTreeMap::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<i32>()
                .map(|k| (Vertex(k), v))
                .map_err(|_| serde::de::Error::custom(format!("vertex key {k:?} is not a decimal integer")))
        })
        .collect()
}

/// A dominant weight `Λ = Σ λ_i · i`. Absent vertices have multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSpec {
    #[serde(serialize_with = "ser_vertex_map", deserialize_with = "de_vertex_map")]
    multiplicities: BTreeMap<Vertex, u32>,
}

impl WeightSpec {
    pub fn new<I: IntoIterator<Item = (i32, u32)>>(entries: I) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (v, m) in entries {
            *multiplicities.entry(Vertex(v)).or_insert(0) += m;
        }
        multiplicities.retain(|_, m| *m > 0);
        WeightSpec { multiplicities }
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let raw: BTreeMap<String, i64> =
            serde_json::from_str(text).map_err(|e| QuiverError::InvalidSpec(e.to_string()))?;
        let mut entries = Vec::new();
        for (k, v) in raw {
            let k: i32 = k
                .trim()
                .parse()
                .map_err(|_| QuiverError::InvalidSpec(format!("vertex key {k:?} is not an integer")))?;
            if v < 0 {
                return Err(QuiverError::InvalidSpec(format!("negative multiplicity {v} at vertex {k}")));
            }
            entries.push((k, v as u32));
        }
        Ok(WeightSpec::new(entries))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight serializes")
    }

    /// `λ_i`.
    pub fn get(&self, i: Vertex) -> u32 {
        self.multiplicities.get(&i).copied().unwrap_or(0)
    }

    /// `ℓ(Λ) = Σ λ_i`.
    pub fn level(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.multiplicities.iter().map(|(k, v)| (*k, *v))
    }
}

/// A positive root `ν = Σ ν_i · i`; every stored multiplicity is at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSpec {
    #[serde(serialize_with = "ser_vertex_map", deserialize_with = "de_vertex_map")]
    multiplicities: BTreeMap<Vertex, u32>,
}

impl RootSpec {
    pub fn new<I: IntoIterator<Item = (i32, u32)>>(entries: I) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (v, m) in entries {
            *multiplicities.entry(Vertex(v)).or_insert(0) += m;
        }
        multiplicities.retain(|_, m| *m > 0);
        RootSpec { multiplicities }
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let w = WeightSpec::from_json(text)?;
        Ok(RootSpec { multiplicities: w.multiplicities })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("root serializes")
    }

    /// The root whose sequences are the rearrangements of `seq`.
    pub fn of_seq(seq: &Seq) -> Self {
        RootSpec::new(seq.entries().iter().map(|v| (v.0, 1)))
    }

    pub fn get(&self, i: Vertex) -> u32 {
        self.multiplicities.get(&i).copied().unwrap_or(0)
    }

    /// `|ν|`.
    pub fn len(&self) -> usize {
        self.multiplicities.values().map(|m| *m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `Supp(ν)`.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.multiplicities.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.multiplicities.iter().map(|(k, v)| (*k, *v))
    }

    /// `|ν|! / Π ν_i!`.
    pub fn sequence_count(&self) -> u128 {
        let mut count: u128 = 1;
        let mut placed: u128 = 0;
        for &m in self.multiplicities.values() {
            for k in 1..=m as u128 {
                placed += 1;
                count = count * placed / k;
            }
        }
        count
    }
}

/// A finite sequence of vertices `i = i_1 … i_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(Vec<Vertex>);

impl Seq {
    pub fn new(entries: Vec<Vertex>) -> Self {
        Seq(entries)
    }

    pub fn from_labels(labels: &[i32]) -> Self {
        Seq(labels.iter().map(|&v| Vertex(v)).collect())
    }

    pub fn entries(&self) -> &[Vertex] {
        &self.0
    }

    pub fn labels(&self) -> Vec<i32> {
        self.0.iter().map(|v| v.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The 1-indexed entry `i_r`.
    pub fn at(&self, r: usize) -> Vertex {
        self.0[r - 1]
    }

    /// `s_r(i)`, swapping entries `r` and `r+1` (1-indexed).
    pub fn swapped(&self, r: usize) -> Result<Seq, QuiverError> {
        if r == 0 || r >= self.len() {
            return Err(QuiverError::PositionOutOfRange { r, len: self.len() });
        }
        let mut out = self.0.clone();
        out.swap(r - 1, r);
        Ok(Seq(out))
    }

    /// The prefix `i_1 … i_r`.
    pub fn truncated(&self, r: usize) -> Seq {
        Seq(self.0[..r.min(self.len())].to_vec())
    }

    pub fn root(&self) -> RootSpec {
        RootSpec::of_seq(self)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i32>> for Seq {
    fn from(v: Vec<i32>) -> Self {
        Seq::from_labels(&v)
    }
}

/// All of `Seq(ν)` in lexicographic order, refusing when `|ν|` exceeds `cap`.
pub fn enumerate_sequences_capped(nu: &RootSpec, cap: usize) -> Result<Vec<Seq>, QuiverError> {
    let len = nu.len();
    if len > cap {
        return Err(QuiverError::CapExceeded { len, cap, count: nu.sequence_count() });
    }
    let mut remaining: Vec<(Vertex, u32)> = nu.iter().collect();
    let mut out = Vec::with_capacity(nu.sequence_count() as usize);
    let mut current = Vec::with_capacity(len);
    fn rec(remaining: &mut [(Vertex, u32)], current: &mut Vec<Vertex>, len: usize, out: &mut Vec<Seq>) {
        if current.len() == len {
            out.push(Seq(current.clone()));
            return;
        }
        for k in 0..remaining.len() {
            if remaining[k].1 == 0 {
                continue;
            }
            remaining[k].1 -= 1;
            current.push(remaining[k].0);
            rec(remaining, current, len, out);
            current.pop();
            remaining[k].1 += 1;
        }
    }
    rec(&mut remaining, &mut current, len, &mut out);
    Ok(out)
}

/// `Seq(ν)` with the default cap.
pub fn enumerate_sequences(nu: &RootSpec) -> Result<Vec<Seq>, QuiverError> {
    enumerate_sequences_capped(nu, DEFAULT_SEQ_CAP)
}

/// Whether `s_r` is admissible for `i`, i.e. `i_r · i_{r+1} = 0`.
pub fn is_admissible(datum: &CartanDatum, i: &Seq, r: usize) -> Result<bool, QuiverError> {
    if r == 0 || r >= i.len() {
        return Err(QuiverError::PositionOutOfRange { r, len: i.len() });
    }
    Ok(datum.pair(i.at(r), i.at(r + 1)) == 0)
}

/// Connected components of the weight graph `G_ν`, each sorted, ordered by smallest member.
pub fn weight_graph_components(datum: &CartanDatum, nu: &RootSpec) -> Result<Vec<Vec<Seq>>, QuiverError> {
    let seqs = enumerate_sequences(nu)?;
    let index: HashMap<&Seq, usize> = seqs.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut component = vec![usize::MAX; seqs.len()];
    let mut components: Vec<Vec<Seq>> = Vec::new();
    for start in 0..seqs.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        component[start] = id;
        while let Some(k) = queue.pop_front() {
            let s = &seqs[k];
            members.push(s.clone());
            for r in 1..s.len() {
                if datum.pair(s.at(r), s.at(r + 1)) != 0 {
                    continue;
                }
                let t = s.swapped(r)?;
                let j = index[&t];
                if component[j] == usize::MAX {
                    component[j] = id;
                    queue.push_back(j);
                }
            }
        }
        members.sort();
        components.push(members);
    }
    // Seq(ν) is already lexicographic, so components are discovered in order of their minima.
    Ok(components)
}
