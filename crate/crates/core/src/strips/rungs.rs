//! Rungs, `η`-pyramids and jewels of a strip-structure.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::pyramid::{is_pyramid_jewel, PyramidClass};
use super::structure::{Edge, StripStructure};
use super::classify_wrt_pyramid;
use crate::error::{Error, Result};
use crate::graph::{for_each_induced_path, Graph, Path, VertexSet};
use crate::obstructions::PyramidEmbedding;

/// An `η(e)`-rung, read from the interface at `e.0` to the one at `e.1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rung {
    pub edge: Edge,
    pub path: Vec<usize>,
}

impl Rung {
    pub fn is_long(&self) -> bool {
        self.path.len() > 1
    }

    /// The rung read starting from the interface at `from`.
    pub fn from_end(&self, from: usize) -> Vec<usize> {
        let mut p = self.path.clone();
        if from != self.edge.0 {
            p.reverse();
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRungs {
    pub rungs: Vec<Rung>,
    /// `η̃(e)`: vertices of `η(e)` on no rung.
    pub stray: VertexSet,
}

/// Every `η(e)`-rung, zero-length ones first, then by first vertex.
pub fn rungs(g: &Graph, s: &StripStructure, e: Edge) -> EdgeRungs {
    let (u, v) = e;
    let iu = s.interface(e, u);
    let iv = s.interface(e, v);
    let mut out: Vec<Rung> = iu
        .intersection(iv)
        .map(|&x| Rung { edge: e, path: vec![x] })
        .collect();
    let targets = g.bits_of(iv.difference(iu));
    let through = g.bits_of(&s.edge_interior(e));
    for &x in iu.difference(iv) {
        let _ = for_each_induced_path::<()>(g, x, &targets, &through, &mut |p| {
            out.push(Rung { edge: e, path: p.to_vec() });
            ControlFlow::Continue(())
        });
    }
    let mut stray = s.edge_set(e).clone();
    for r in &out {
        for x in &r.path {
            stray.remove(x);
        }
    }
    EdgeRungs { rungs: out, stray }
}

/// Three distinct edges at a tree vertex; the seagull case uses two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Claw {
    pub center: usize,
    pub edges: [Edge; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Seagull {
    pub center: usize,
    pub edges: [Edge; 2],
}

impl Seagull {
    /// Canonical form with the two edges sorted.
    pub fn new(center: usize, e1: Edge, e2: Edge) -> Self {
        Seagull {
            center,
            edges: [e1.min(e2), e1.max(e2)],
        }
    }
}

fn check_edges_at(s: &StripStructure, v: usize, edges: &[Edge]) -> Result<()> {
    let t = &s.tree;
    if v >= t.n() {
        return Err(Error::invalid(format!("tree vertex {v} out of range")));
    }
    for (i, &e) in edges.iter().enumerate() {
        if !t.has_edge(e) || (e.0 != v && e.1 != v) {
            return Err(Error::precondition(format!("{e:?} is not a tree edge at {v}")));
        }
        if edges[..i].contains(&e) {
            return Err(Error::precondition(format!("edge {e:?} repeated")));
        }
    }
    Ok(())
}

/// Rungs of every tree edge, computed once.
pub struct RungTable {
    table: BTreeMap<Edge, EdgeRungs>,
}

impl RungTable {
    pub fn new(g: &Graph, s: &StripStructure) -> Self {
        RungTable {
            table: s.tree.edges().iter().map(|&e| (e, rungs(g, s, e))).collect(),
        }
    }

    pub fn get(&self, e: Edge) -> &EdgeRungs {
        &self.table[&e]
    }
}

/// Visits every branch `Γ` leaving tree vertex `v` through `e`: a path that
/// starts with a long `η(e)`-rung read from `v` and continues with one rung
/// per edge along a tree path to a leaf. `keep(prefix)` prunes; it sees each
/// extension as soon as a rung is appended.
pub fn for_each_branch<B>(
    s: &StripStructure,
    table: &RungTable,
    v: usize,
    e: Edge,
    keep: &mut impl FnMut(&[usize]) -> bool,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut buf = Vec::new();
    for r in table.get(e).rungs.iter().filter(|r| r.is_long()) {
        buf.clear();
        buf.extend(r.from_end(v));
        if keep(&buf) {
            let next = s.tree.other_end(e, v);
            extend(s, table, next, e, &mut buf, keep, visit)?;
        }
    }
    ControlFlow::Continue(())
}

fn extend<B>(
    s: &StripStructure,
    table: &RungTable,
    at: usize,
    came: Edge,
    buf: &mut Vec<usize>,
    keep: &mut impl FnMut(&[usize]) -> bool,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if s.tree.is_leaf(at) {
        return visit(buf);
    }
    for f in s.tree.incident(at) {
        if f == came {
            continue;
        }
        let next = s.tree.other_end(f, at);
        for r in &table.get(f).rungs {
            let len = buf.len();
            buf.extend(r.from_end(at));
            if keep(buf) {
                let res = extend(s, table, next, f, buf, keep, visit);
                if res.is_break() {
                    buf.truncate(len);
                    return res;
                }
            }
            buf.truncate(len);
        }
    }
    ControlFlow::Continue(())
}

fn assemble(a: usize, branches: [&[usize]; 3]) -> PyramidEmbedding {
    let paths = branches.map(|b| {
        let mut p = vec![a];
        p.extend(b.iter().rev());
        Path::new_unchecked(p)
    });
    PyramidEmbedding {
        apex: a,
        base: branches.map(|b| b[0]),
        paths,
    }
}

fn collect_branches(s: &StripStructure, table: &RungTable, v: usize, e: Edge) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_branch::<()>(s, table, v, e, &mut |_| true, &mut |b| {
        out.push(b.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Every `η`-pyramid at a claw; path `P_i` runs from the apex to
/// `b_i ∈ η(e_i, v)`.
pub fn eta_pyramids(g: &Graph, s: &StripStructure, claw: Claw) -> Result<Vec<PyramidEmbedding>> {
    check_edges_at(s, claw.center, &claw.edges)?;
    let table = RungTable::new(g, s);
    let per: Vec<Vec<Vec<usize>>> = claw
        .edges
        .iter()
        .map(|&e| collect_branches(s, &table, claw.center, e))
        .collect();
    let mut out = Vec::new();
    for b1 in &per[0] {
        for b2 in &per[1] {
            for b3 in &per[2] {
                out.push(assemble(s.apex, [b1, b2, b3]));
            }
        }
    }
    Ok(out)
}

/// Jewels for a strip-structure, by seagull.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JewelIndex {
    pub by_seagull: BTreeMap<Seagull, VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct JewelEntry {
    seagull: Seagull,
    jewels: VertexSet,
}

// JSON object keys must be strings, so the map travels as a list.
impl Serialize for JewelIndex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<JewelEntry> = self
            .by_seagull
            .iter()
            .map(|(&seagull, j)| JewelEntry { seagull, jewels: j.clone() })
            .collect();
        entries.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for JewelIndex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<JewelEntry>::deserialize(de)?;
        Ok(JewelIndex {
            by_seagull: entries.into_iter().map(|e| (e.seagull, e.jewels)).collect(),
        })
    }
}

impl JewelIndex {
    /// `𝒥_{η,v}`.
    pub fn at_vertex(&self, v: usize) -> VertexSet {
        self.by_seagull
            .iter()
            .filter(|(sg, _)| sg.center == v)
            .flat_map(|(_, j)| j.iter().copied())
            .collect()
    }

    /// `𝒥_η`.
    pub fn all(&self) -> VertexSet {
        self.by_seagull.values().flatten().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.by_seagull.values().all(|j| j.is_empty())
    }
}

/// A branch from `v` through `e` that meets `p` exactly in its first two
/// vertices (`contact`) or not at all.
fn branch_for(
    g: &Graph,
    s: &StripStructure,
    table: &RungTable,
    v: usize,
    e: Edge,
    p: usize,
    contact: bool,
) -> Option<Vec<usize>> {
    let ok = |b: &[usize]| {
        b.iter()
            .enumerate()
            .all(|(i, &x)| g.adjacent(p, x) == (contact && i < 2))
    };
    let found = for_each_branch(s, table, v, e, &mut |b| ok(b), &mut |b| {
        ControlFlow::Break(b.to_vec())
    });
    match found {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

/// An `η`-pyramid at `(v, e1, e2, e3)` for which `p` is a jewel at `b_3`, for
/// some third edge `e3` at `v`.
pub fn jewel_witness(
    g: &Graph,
    s: &StripStructure,
    table: &RungTable,
    seagull: Seagull,
    p: usize,
) -> Option<PyramidEmbedding> {
    let v = seagull.center;
    if g.adjacent(p, s.apex) || s.support_plus().contains(&p) {
        return None;
    }
    let [e1, e2] = seagull.edges;
    let b1 = branch_for(g, s, table, v, e1, p, true)?;
    let b2 = branch_for(g, s, table, v, e2, p, true)?;
    s.tree
        .incident(v)
        .into_iter()
        .filter(|&e3| e3 != e1 && e3 != e2)
        .find_map(|e3| branch_for(g, s, table, v, e3, p, false))
        .map(|b3| assemble(s.apex, [&b1, &b2, &b3]))
}

/// `𝒥_η` by seagull. Every jewel found is cross-checked against the
/// pyramid classification of its witness.
pub fn find_strip_jewels(g: &Graph, s: &StripStructure) -> JewelIndex {
    let table = RungTable::new(g, s);
    let outside: Vec<usize> = {
        let plus = s.support_plus();
        (0..g.n()).filter(|x| !plus.contains(x)).collect()
    };
    let trapped = super::is_trapped(g, &s.support_plus(), s.apex).unwrap_or(false);
    let mut index = JewelIndex::default();
    for v in 0..s.tree.n() {
        let inc = s.tree.incident(v);
        if inc.len() < 3 {
            continue;
        }
        for (i, &e1) in inc.iter().enumerate() {
            for &e2 in &inc[i + 1..] {
                let sg = Seagull::new(v, e1, e2);
                let mut found = VertexSet::new();
                for &p in &outside {
                    if let Some(sigma) = jewel_witness(g, s, &table, sg, p) {
                        debug_assert!(is_pyramid_jewel(g, &sigma, 2, p));
                        debug_assert!(
                            !trapped
                                || classify_wrt_pyramid(g, &s.support_plus(), &sigma, &[p]).ok()
                                    == Some(PyramidClass::Jewel { index: 2, vertex: p })
                        );
                        found.insert(p);
                    }
                }
                index.by_seagull.insert(sg, found);
            }
        }
    }
    index
}

/// Every seagull of the tree, in order.
pub fn seagulls(s: &StripStructure) -> Vec<Seagull> {
    let mut out = Vec::new();
    for v in 0..s.tree.n() {
        let inc = s.tree.incident(v);
        for (i, &e1) in inc.iter().enumerate() {
            for &e2 in &inc[i + 1..] {
                out.push(Seagull::new(v, e1, e2));
            }
        }
    }
    out
}

/// Claws at `v`, edges in ascending order.
pub fn claws_at(s: &StripStructure, v: usize) -> Vec<Claw> {
    let inc = s.tree.incident(v);
    let mut out = Vec::new();
    for i in 0..inc.len() {
        for j in i + 1..inc.len() {
            for k in j + 1..inc.len() {
                out.push(Claw {
                    center: v,
                    edges: [inc[i], inc[j], inc[k]],
                });
            }
        }
    }
    out
}
