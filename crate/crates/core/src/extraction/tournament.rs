//! Directed graphs on a small labelled vertex set and transitive
//! subtournaments.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub const TRANSITIVE_MAX_P: usize = 8;

/// A digraph without loops; both arcs between a pair may be present.
/// Vertex `i` carries `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    labels: Vec<usize>,
    arcs: Vec<FixedBitSet>,
}

#[derive(Serialize, Deserialize)]
struct TournamentRepr {
    vertices: Vec<usize>,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Tournament {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TournamentRepr {
            vertices: self.labels.clone(),
            arcs: self
                .arc_list()
                .into_iter()
                .map(|(i, j)| (self.labels[i], self.labels[j]))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tournament {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TournamentRepr::deserialize(d)?;
        let mut t = Tournament::new(repr.vertices);
        for (x, y) in repr.arcs {
            let (Some(i), Some(j)) = (t.index_of(x), t.index_of(y)) else {
                return Err(serde::de::Error::custom(format!("arc ({x}, {y}) leaves the vertex set")));
            };
            if i == j {
                return Err(serde::de::Error::custom(format!("loop at {x}")));
            }
            t.add_arc(i, j);
        }
        Ok(t)
    }
}

impl Tournament {
    pub fn new(labels: Vec<usize>) -> Self {
        let n = labels.len();
        Tournament {
            labels,
            arcs: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Arcs given on local indices `0..n`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut t = Tournament::new((0..n).collect());
        for (i, j) in arcs {
            t.add_arc(i, j);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn add_arc(&mut self, i: usize, j: usize) {
        assert!(i != j, "loops are not allowed");
        self.arcs[i].insert(j);
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs[i].contains(j)
    }

    pub fn arc_list(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.arcs[i].ones().map(move |j| (i, j)))
            .collect()
    }

    /// `D⁻`: the underlying simple graph, on local indices.
    pub fn underlying(&self) -> Graph {
        let mut b = GraphBuilder::new(self.len());
        for (i, j) in self.arc_list() {
            b.add_edge(i, j);
        }
        b.build()
    }

    /// Whether `seq` (local indices) has an arc `seq[i] → seq[j]` for all
    /// `i < j`.
    pub fn is_transitive_sequence(&self, seq: &[usize]) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.len());
        for (k, &v) in seq.iter().enumerate() {
            if v >= self.len() || seen.contains(v) {
                return false;
            }
            seen.insert(v);
            if !seq[..k].iter().all(|&u| self.has_arc(u, v)) {
                return false;
            }
        }
        true
    }
}

/// The lexicographically least sequence of labels `v_1, ..., v_p` with an
/// arc `v_i → v_j` whenever `i < j`.
pub fn transitive_subtournament(d: &Tournament, p: usize) -> Result<Option<Vec<usize>>> {
    if p > TRANSITIVE_MAX_P {
        return Err(Error::CapExceeded { what: "transitive subtournament order", size: p, cap: TRANSITIVE_MAX_P });
    }
    Ok(transitive_sequence(d, p).map(|seq| seq.into_iter().map(|i| d.labels[i]).collect()))
}

/// Uncapped search on local indices; lexicographic order is by index.
pub(crate) fn transitive_sequence(d: &Tournament, p: usize) -> Option<Vec<usize>> {
    if p > d.len() {
        return None;
    }
    let mut cand = FixedBitSet::with_capacity(d.len());
    cand.insert_range(..);
    let mut seq = Vec::with_capacity(p);
    grow(d, p, &cand, &mut seq).then_some(seq)
}

fn grow(d: &Tournament, p: usize, cand: &FixedBitSet, seq: &mut Vec<usize>) -> bool {
    if seq.len() == p {
        return true;
    }
    if cand.count_ones(..) + seq.len() < p {
        return false;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(&d.arcs[v]);
        seq.push(v);
        if grow(d, p, &next, seq) {
            return true;
        }
        seq.pop();
    }
    false
}
