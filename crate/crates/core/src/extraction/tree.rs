//! Rooted `T_d^r` subgraphs grown from path systems, and the induced-tree
//! trichotomy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::banana::{banana, BananaOutcome};
use crate::error::{Error, Result};
use crate::generators::make_t_d_r;
use crate::graph::{Graph, Path, PathSystem, VertexSet};
use crate::obstructions::{embed_induced, find_biclique, find_clique};

/// A rooted tree as a subgraph of a host: `parent` maps every non-root
/// vertex to its parent, `depth` every vertex to its distance from `root`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeWitness {
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
    pub depth: BTreeMap<usize, usize>,
}

impl TreeWitness {
    fn single(root: usize) -> Self {
        TreeWitness {
            root,
            parent: BTreeMap::new(),
            depth: BTreeMap::from([(root, 0)]),
        }
    }

    /// Hangs `child` (rooted at a new vertex) below `self.root`.
    fn graft(&mut self, child: &TreeWitness) {
        self.parent.insert(child.root, self.root);
        for (&v, &p) in &child.parent {
            self.parent.insert(v, p);
        }
        for (&v, &k) in &child.depth {
            self.depth.insert(v, k + 1);
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.depth.keys().copied().collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        self.parent.iter().filter(|&(_, &p)| p == v).map(|(&c, _)| c).collect()
    }

    /// Checks that the witness is a copy of `T_d^r` in `g` rooted at
    /// `self.root`: every parent link is an edge, depths are consistent,
    /// the root has `d` children, every other non-leaf has `d` children
    /// (degree `d + 1`) and every leaf sits at depth exactly `r`.
    pub fn validate(&self, g: &Graph, d: usize, r: usize) -> std::result::Result<(), String> {
        g.check_vertex(self.root).map_err(|e| e.to_string())?;
        if self.depth.get(&self.root) != Some(&0) || self.parent.contains_key(&self.root) {
            return Err("the root must have depth 0 and no parent".into());
        }
        if self.depth.len() != self.parent.len() + 1 {
            return Err("parent and depth maps cover different vertices".into());
        }
        let mut children: BTreeMap<usize, usize> = BTreeMap::new();
        for (&v, &p) in &self.parent {
            g.check_vertex(v).map_err(|e| e.to_string())?;
            let (Some(&dv), Some(&dp)) = (self.depth.get(&v), self.depth.get(&p)) else {
                return Err(format!("{v} or its parent {p} has no depth"));
            };
            if dv != dp + 1 {
                return Err(format!("depth of {v} is {dv}, parent {p} has {dp}"));
            }
            if !g.adjacent(v, p) {
                return Err(format!("{v}-{p} is not an edge of the host"));
            }
            *children.entry(p).or_default() += 1;
        }
        for (&v, &dv) in &self.depth {
            let c = children.get(&v).copied().unwrap_or(0);
            if dv < r && c != d {
                return Err(format!("{v} at depth {dv} has {c} children, expected {d}"));
            }
            if dv == r && c != 0 {
                return Err(format!("leaf level vertex {v} has children"));
            }
            if dv > r {
                return Err(format!("{v} lies deeper than {r}"));
            }
        }
        let expected: usize = (0..=r).map(|k| d.pow(k as u32)).sum();
        if self.depth.len() != expected {
            return Err(format!("{} vertices, T_{d}^{r} has {expected}", self.depth.len()));
        }
        Ok(())
    }

    /// The full check of an extraction result: shape, `b ∉ J` and
    /// `V(J) ⊆ ⋃ 𝒫`.
    pub fn validate_extraction(
        &self,
        g: &Graph,
        ps: &PathSystem,
        d: usize,
        r: usize,
    ) -> std::result::Result<(), String> {
        if self.root != ps.source {
            return Err(format!("root {} is not the source {}", self.root, ps.source));
        }
        self.validate(g, d, r)?;
        if self.depth.contains_key(&ps.sink) {
            return Err(format!("the sink {} lies in the tree", ps.sink));
        }
        let union: VertexSet = ps.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect();
        if let Some(v) = self.depth.keys().find(|v| !union.contains(v)) {
            return Err(format!("{v} is not on any path"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionFailure {
    /// Recursion level where the search ran dry; 0 is the top call.
    pub depth: usize,
    pub reason: String,
    /// The tree assembled so far, not a valid `T_d^r`.
    pub partial: TreeWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Extraction {
    Found(TreeWitness),
    Failed(ExtractionFailure),
}

impl Extraction {
    pub fn found(self) -> Option<TreeWitness> {
        match self {
            Extraction::Found(t) => Some(t),
            Extraction::Failed(_) => None,
        }
    }
}

/// Grows a `T_d^r` rooted at the source, inside the union of the paths and
/// avoiding the sink. At depth `r > 1` the paths are thinned by [`banana`]
/// to `(m' + 1)d` paths for the largest `m'` that works; block `i` keeps the
/// first neighbour of one path as a child of the root and reroutes the next
/// `m'` paths from that child to the sink.
pub fn extract_tree(g: &Graph, ps: &PathSystem, d: usize, r: usize) -> Result<Extraction> {
    ps.validate(g)?;
    if g.adjacent(ps.source, ps.sink) {
        return Err(Error::precondition("a and b must be non-adjacent"));
    }
    if d == 0 || r == 0 {
        return Err(Error::invalid("d and r must be positive"));
    }
    let out = grow(g, ps, d, r, 0);
    if let Extraction::Found(t) = &out {
        if let Err(e) = t.validate_extraction(g, ps, d, r) {
            return Ok(Extraction::Failed(ExtractionFailure {
                depth: 0,
                reason: format!("assembled tree failed validation: {e}"),
                partial: t.clone(),
            }));
        }
    }
    Ok(out)
}

fn starve(level: usize, reason: String, partial: TreeWitness) -> Extraction {
    Extraction::Failed(ExtractionFailure { depth: level, reason, partial })
}

fn grow(g: &Graph, ps: &PathSystem, d: usize, r: usize, level: usize) -> Extraction {
    let a = ps.source;
    let mut tree = TreeWitness::single(a);
    if ps.len() < d {
        return starve(level, format!("{} paths, at least {d} needed", ps.len()), tree);
    }
    if r == 1 {
        for v in ps.first_neighbors().into_iter().take(d) {
            tree.graft(&TreeWitness::single(v));
        }
        return Extraction::Found(tree);
    }

    // Largest m' with (m' + 1)d + 1 ≤ |𝒫|, the extra path being the
    // dropped head of the transitive tournament.
    let top = (ps.len().saturating_sub(1) / d).saturating_sub(1);
    let mut last_failure = format!("{} paths leave no room for blocks of size {d}", ps.len());
    let mut chosen = None;
    for m in (d..=top).rev() {
        match banana(g, ps, (m + 1) * d) {
            Ok(BananaOutcome::Selected(sel)) => {
                chosen = Some((m, sel));
                break;
            }
            Ok(BananaOutcome::Failed(f)) => {
                last_failure = format!("selection with m' = {m} failed at stage {}: {}", f.stage.number(), f.reason)
            }
            Err(e) => last_failure = e.to_string(),
        }
    }
    let Some((m, sel)) = chosen else {
        return starve(level, last_failure, tree);
    };

    let mut subproblems = Vec::with_capacity(d);
    for i in 0..d {
        let head = i * (m + 1);
        let child = sel.first_neighbors[head];
        let mut paths = Vec::with_capacity(m);
        for &j in &sel.paths[head + 1..head + 1 + m] {
            let pj = &ps.paths[j];
            let through = g.bits_of(pj.interior());
            let target = g.bits_of(&[ps.sink]);
            match g.shortest_path_through(child, &target, &through) {
                Some(q) => paths.push(Path::new_unchecked(q)),
                None => {
                    return starve(level, format!("no path from {child} to the sink through path {j}"), tree)
                }
            }
        }
        subproblems.push(PathSystem { source: child, sink: ps.sink, paths });
    }
    let children: Vec<Extraction> = subproblems.iter().map(|sub| grow(g, sub, d, r - 1, level + 1)).collect();
    let mut failure = None;
    for c in children {
        match c {
            Extraction::Found(t) => tree.graft(&t),
            Extraction::Failed(f) => {
                tree.graft(&f.partial);
                failure.get_or_insert((f.depth, f.reason));
            }
        }
    }
    match failure {
        None => Extraction::Found(tree),
        Some((depth, reason)) => starve(depth, reason, tree),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Trichotomy {
    Biclique { left: Vec<usize>, right: Vec<usize> },
    Clique { vertices: Vec<usize> },
    /// `map[i]` is the image of vertex `i` of `T_d^r` (numbered breadth
    /// first from the root).
    InducedTree { map: Vec<usize> },
    None,
}

pub const TRICHOTOMY_MAX_N: usize = 20;

/// Direct search for an induced `K_{s,s}`, a `K_t` or an induced `T_d^r`,
/// in that order.
pub fn kp_trichotomy(g: &Graph, d: usize, r: usize, s: usize, t: usize) -> Result<Trichotomy> {
    if g.n() > TRICHOTOMY_MAX_N {
        return Err(Error::CapExceeded { what: "trichotomy host", size: g.n(), cap: TRICHOTOMY_MAX_N });
    }
    let (tree, _) = make_t_d_r(d, r)?;
    if tree.n() > TRICHOTOMY_MAX_N {
        return Err(Error::CapExceeded { what: "T_d^r order", size: tree.n(), cap: TRICHOTOMY_MAX_N });
    }
    if s == 0 || t == 0 {
        return Err(Error::invalid("s and t must be positive"));
    }
    if let Some((left, right)) = find_biclique(g, s) {
        return Ok(Trichotomy::Biclique { left, right });
    }
    if let Some(vertices) = find_clique(g, t) {
        return Ok(Trichotomy::Clique { vertices });
    }
    Ok(match embed_induced(g, &tree) {
        Some(map) => Trichotomy::InducedTree { map },
        None => Trichotomy::None,
    })
}
