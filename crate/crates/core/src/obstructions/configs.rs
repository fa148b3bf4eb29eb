//! Placements of thetas, prisms and pyramids in a host graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Path, VertexSet};

fn edge(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Checks that `g[vertices]` has exactly the edges in `expected`.
fn exact_edges(
    g: &Graph,
    vertices: &VertexSet,
    expected: &BTreeSet<(usize, usize)>,
) -> Result<(), String> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(format!("vertex {v} out of range"));
    }
    let vs: Vec<usize> = vertices.iter().copied().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            match (g.adjacent(u, v), expected.contains(&(u, v))) {
                (true, false) => return Err(format!("extra edge {u}-{v}")),
                (false, true) => return Err(format!("missing edge {u}-{v}")),
                _ => {}
            }
        }
    }
    Ok(())
}

fn relabel_path(p: &Path, map: &[usize]) -> Path {
    Path::new_unchecked(p.vertices().iter().map(|&v| map[v]).collect())
}

fn path_edges(p: &Path, out: &mut BTreeSet<(usize, usize)>) {
    for w in p.vertices().windows(2) {
        out.insert(edge(w[0], w[1]));
    }
}

/// Counts vertices with multiplicity to detect unintended sharing.
fn distinct_total(parts: &[&[usize]]) -> (usize, usize) {
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let set: VertexSet = parts.iter().flat_map(|p| p.iter().copied()).collect();
    (total, set.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaEmbedding {
    pub ends: [usize; 2],
    pub paths: [Path; 3],
}

impl ThetaEmbedding {
    /// The same placement after renaming vertex `v` to `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        ThetaEmbedding {
            ends: self.ends.map(|v| map[v]),
            paths: self.paths.each_ref().map(|p| relabel_path(p, map)),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let [a, b] = self.ends;
        for p in &self.paths {
            if p.first() != a || p.last() != b {
                return Err(format!("path {:?} does not join the ends", p.vertices()));
            }
            if p.length() < 2 {
                return Err(format!("path {:?} has length below two", p.vertices()));
            }
        }
        let interiors: Vec<&[usize]> = self.paths.iter().map(|p| p.interior()).collect();
        let (total, distinct) = distinct_total(&interiors);
        if total != distinct || interiors.iter().any(|i| i.contains(&a) || i.contains(&b)) {
            return Err("paths are not internally disjoint".into());
        }
        let mut expected = BTreeSet::new();
        self.paths.iter().for_each(|p| path_edges(p, &mut expected));
        exact_edges(g, &self.vertices(), &expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrismEmbedding {
    pub triangles: [[usize; 3]; 2],
    pub paths: [Path; 3],
}

impl PrismEmbedding {
    pub fn relabel(&self, map: &[usize]) -> Self {
        PrismEmbedding {
            triangles: self.triangles.map(|t| t.map(|v| map[v])),
            paths: self.paths.each_ref().map(|p| relabel_path(p, map)),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let [ta, tb] = self.triangles;
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != ta[i] || p.last() != tb[i] {
                return Err(format!("path {i} does not join a_{i} and b_{i}"));
            }
            if p.length() < 1 {
                return Err(format!("path {i} is a single vertex"));
            }
        }
        let all: Vec<&[usize]> = self.paths.iter().map(|p| p.vertices()).collect();
        let (total, distinct) = distinct_total(&all);
        if total != distinct {
            return Err("paths are not pairwise disjoint".into());
        }
        let mut expected = BTreeSet::new();
        self.paths.iter().for_each(|p| path_edges(p, &mut expected));
        for t in [ta, tb] {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                expected.insert(edge(t[i], t[j]));
            }
        }
        exact_edges(g, &self.vertices(), &expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PyramidEmbedding {
    pub apex: usize,
    pub base: [usize; 3],
    pub paths: [Path; 3],
}

impl PyramidEmbedding {
    pub fn relabel(&self, map: &[usize]) -> Self {
        PyramidEmbedding {
            apex: map[self.apex],
            base: self.base.map(|v| map[v]),
            paths: self.paths.each_ref().map(|p| relabel_path(p, map)),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect()
    }

    /// All three paths have length at least two.
    pub fn is_long(&self) -> bool {
        self.paths.iter().all(|p| p.length() >= 2)
    }

    /// The neighbour of `b_i` on `P_i`.
    pub fn base_neighbor(&self, i: usize) -> usize {
        let v = self.paths[i].vertices();
        v[v.len() - 2]
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let a = self.apex;
        let mut unit = 0;
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != a || p.last() != self.base[i] {
                return Err(format!("path {i} does not join the apex and b_{i}"));
            }
            match p.length() {
                0 => return Err(format!("path {i} is a single vertex")),
                1 => unit += 1,
                _ => {}
            }
        }
        if unit > 1 {
            return Err("more than one path has length one".into());
        }
        let tails: Vec<&[usize]> = self.paths.iter().map(|p| &p.vertices()[1..]).collect();
        let (total, distinct) = distinct_total(&tails);
        if total != distinct || tails.iter().any(|t| t.contains(&a)) {
            return Err("paths overlap away from the apex".into());
        }
        let mut expected = BTreeSet::new();
        self.paths.iter().for_each(|p| path_edges(p, &mut expected));
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            expected.insert(edge(self.base[i], self.base[j]));
        }
        exact_edges(g, &self.vertices(), &expected)
    }
}
