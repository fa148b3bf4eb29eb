//! `(T, a)`-strip-structures: the data, its JSON form and the axioms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::is_trapped;
use super::rungs::rungs;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A tree edge, always stored with its smaller end first.
pub type Edge = (usize, usize);

pub fn edge(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

fn empty_set() -> &'static VertexSet {
    static EMPTY: OnceLock<VertexSet> = OnceLock::new();
    EMPTY.get_or_init(VertexSet::new)
}

/// A tree on at least three vertices with no vertex of degree two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothTree {
    tree: Graph,
    edges: Vec<Edge>,
}

impl SmoothTree {
    pub fn new(tree: Graph) -> Result<Self> {
        if tree.n() < 3 {
            return Err(Error::invalid("a smooth tree has at least three vertices"));
        }
        if !tree.is_tree() {
            return Err(Error::invalid("not a tree"));
        }
        if let Some(v) = (0..tree.n()).find(|&v| tree.degree(v) == 2) {
            return Err(Error::invalid(format!("tree vertex {v} has degree two")));
        }
        let edges = tree.edges();
        Ok(SmoothTree { tree, edges })
    }

    /// The star with centre 0 and leaves `1..=k`.
    pub fn star(k: usize) -> Result<Self> {
        Self::new(Graph::from_edges(k + 1, (1..=k).map(|l| (0, l)))?)
    }

    pub fn graph(&self) -> &Graph {
        &self.tree
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.0 < e.1 && e.1 < self.n() && self.tree.adjacent(e.0, e.1)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.tree.degree(v) == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.tree.max_degree()
    }

    /// Edges at `v`, in ascending order.
    pub fn incident(&self, v: usize) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.tree.neighbors(v).iter().map(|&u| edge(u, v)).collect();
        out.sort_unstable();
        out
    }

    pub fn other_end(&self, e: Edge, v: usize) -> usize {
        if e.0 == v {
            e.1
        } else {
            e.0
        }
    }

    pub fn leaf_edge(&self, l: usize) -> Edge {
        edge(l, self.tree.neighbors(l)[0])
    }

    /// Vertices of the component of `T - e` containing `v`.
    pub fn side(&self, e: Edge, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &y in self.tree.neighbors(x) {
                if edge(x, y) != e && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The tree path from `u` to `v`.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut target = self.tree.bits();
        target.insert(v);
        let mut all = self.tree.bits();
        all.insert_range(..);
        if u == v {
            return vec![u];
        }
        self.tree
            .shortest_path_through(u, &target, &all)
            .expect("trees are connected")
    }
}

/// Where a vertex of `η(T)` lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum Place {
    Vertex(usize),
    Edge(Edge),
}

/// A `(T, a)`-strip-structure. Interface sets `η(e, v)` are stored only for
/// incident pairs; absent entries read as empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripStructure {
    pub apex: usize,
    pub tree: SmoothTree,
    pub vmap: BTreeMap<usize, VertexSet>,
    pub emap: BTreeMap<Edge, VertexSet>,
    pub evmap: BTreeMap<(Edge, usize), VertexSet>,
}

impl StripStructure {
    /// All sets empty.
    pub fn new(apex: usize, tree: SmoothTree) -> Self {
        let vmap = (0..tree.n()).map(|v| (v, VertexSet::new())).collect();
        let emap = tree.edges().iter().map(|&e| (e, VertexSet::new())).collect();
        let evmap = tree
            .edges()
            .iter()
            .flat_map(|&e| [((e, e.0), VertexSet::new()), ((e, e.1), VertexSet::new())])
            .collect();
        StripStructure {
            apex,
            tree,
            vmap,
            emap,
            evmap,
        }
    }

    pub fn vertex_set(&self, v: usize) -> &VertexSet {
        self.vmap.get(&v).unwrap_or_else(|| empty_set())
    }

    pub fn edge_set(&self, e: Edge) -> &VertexSet {
        self.emap.get(&e).unwrap_or_else(|| empty_set())
    }

    pub fn interface(&self, e: Edge, v: usize) -> &VertexSet {
        self.evmap.get(&(e, v)).unwrap_or_else(|| empty_set())
    }

    /// `η(T)`.
    pub fn support(&self) -> VertexSet {
        self.vmap.values().chain(self.emap.values()).flatten().copied().collect()
    }

    /// `η⁺(T)`.
    pub fn support_plus(&self) -> VertexSet {
        let mut s = self.support();
        s.insert(self.apex);
        s
    }

    /// `η(S)` for a set `S` of tree vertices.
    pub fn support_of(&self, tree_vertices: &BTreeSet<usize>) -> VertexSet {
        let mut out = VertexSet::new();
        for v in tree_vertices {
            out.extend(self.vertex_set(*v));
        }
        for &e in self.tree.edges() {
            if tree_vertices.contains(&e.0) && tree_vertices.contains(&e.1) {
                out.extend(self.edge_set(e));
            }
        }
        out
    }

    /// `B(v)`: the union of the interfaces at `v`.
    pub fn bag(&self, v: usize) -> VertexSet {
        self.tree
            .incident(v)
            .into_iter()
            .flat_map(|e| self.interface(e, v).iter().copied())
            .collect()
    }

    /// `η°(e)`.
    pub fn edge_interior(&self, e: Edge) -> VertexSet {
        let (u, v) = e;
        self.edge_set(e)
            .iter()
            .filter(|x| !self.interface(e, u).contains(x) && !self.interface(e, v).contains(x))
            .copied()
            .collect()
    }

    /// The part of `T ∪ E(T)` whose set contains `x`.
    pub fn place_of(&self, x: usize) -> Option<Place> {
        if let Some((&v, _)) = self.vmap.iter().find(|(_, s)| s.contains(&x)) {
            return Some(Place::Vertex(v));
        }
        self.emap.iter().find(|(_, s)| s.contains(&x)).map(|(&e, _)| Place::Edge(e))
    }

    /// `η ≤ ζ`: every set of `self` is inside the matching set of `other`.
    pub fn le(&self, other: &StripStructure) -> bool {
        self.apex == other.apex
            && self.tree == other.tree
            && self.vmap.iter().all(|(v, s)| s.is_subset(other.vertex_set(*v)))
            && self.emap.iter().all(|(e, s)| s.is_subset(other.edge_set(*e)))
            && self.evmap.iter().all(|((e, v), s)| s.is_subset(other.interface(*e, *v)))
    }
}

fn edge_key(e: Edge) -> String {
    format!("{}-{}", e.0, e.1)
}

fn parse_edge(s: &str) -> Result<Edge> {
    let (u, v) = s
        .split_once('-')
        .ok_or_else(|| Error::invalid(format!("edge key {s:?} is not of the form u-v")))?;
    let parse = |x: &str| {
        x.parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad vertex {x:?} in key {s:?}")))
    };
    Ok(edge(parse(u)?, parse(v)?))
}

#[derive(Serialize, Deserialize)]
struct StripJson {
    tree: Graph,
    apex: usize,
    vmap: BTreeMap<String, Vec<usize>>,
    emap: BTreeMap<String, Vec<usize>>,
    evmap: BTreeMap<String, Vec<usize>>,
}

impl Serialize for StripStructure {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let sets = |s: &VertexSet| s.iter().copied().collect::<Vec<_>>();
        StripJson {
            tree: self.tree.graph().clone(),
            apex: self.apex,
            vmap: self.vmap.iter().map(|(v, s)| (v.to_string(), sets(s))).collect(),
            emap: self.emap.iter().map(|(&e, s)| (edge_key(e), sets(s))).collect(),
            evmap: self
                .evmap
                .iter()
                .map(|(&(e, v), s)| (format!("{}@{v}", edge_key(e)), sets(s)))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for StripStructure {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = StripJson::deserialize(de)?;
        let err = |e: Error| D::Error::custom(e.to_string());
        let tree = SmoothTree::new(raw.tree).map_err(err)?;
        let mut strip = StripStructure::new(raw.apex, tree);
        strip.evmap.clear();
        for (k, s) in raw.vmap {
            let v = k
                .parse::<usize>()
                .map_err(|_| D::Error::custom(format!("bad tree vertex key {k:?}")))?;
            strip.vmap.insert(v, s.into_iter().collect());
        }
        for (k, s) in raw.emap {
            strip.emap.insert(parse_edge(&k).map_err(err)?, s.into_iter().collect());
        }
        for (k, s) in raw.evmap {
            let (e, v) = k
                .split_once('@')
                .ok_or_else(|| D::Error::custom(format!("key {k:?} is not of the form u-v@w")))?;
            let v = v
                .parse::<usize>()
                .map_err(|_| D::Error::custom(format!("bad tree vertex in key {k:?}")))?;
            strip
                .evmap
                .insert((parse_edge(e).map_err(err)?, v), s.into_iter().collect());
        }
        Ok(strip)
    }
}

/// The axiom a candidate structure breaks; `Domain` covers malformed input
/// (sets naming the apex or vertices outside the host, unknown keys).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    Domain,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {:?}", self.axiom, self.detail, self.witness)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripReport {
    pub tame: bool,
    pub substantial: bool,
    pub rich: bool,
}

impl StripReport {
    pub fn all(&self) -> bool {
        self.tame && self.substantial && self.rich
    }
}

fn violation(axiom: Axiom, detail: impl Into<String>, witness: Vec<usize>) -> Violation {
    Violation {
        axiom,
        detail: detail.into(),
        witness,
    }
}

/// Checks S1–S8 by direct enumeration, then computes the three predicates.
pub fn validate_strip(g: &Graph, s: &StripStructure) -> std::result::Result<StripReport, Violation> {
    check_domain(g, s)?;
    check_axioms(g, s)?;
    Ok(predicates(g, s))
}

fn check_domain(g: &Graph, s: &StripStructure) -> std::result::Result<(), Violation> {
    let t = &s.tree;
    if s.apex >= g.n() {
        return Err(violation(Axiom::Domain, "apex out of range", vec![s.apex]));
    }
    if let Some(&v) = s.vmap.keys().find(|&&v| v >= t.n()) {
        return Err(violation(Axiom::Domain, "unknown tree vertex", vec![v]));
    }
    if let Some(&e) = s.emap.keys().find(|&&e| !t.has_edge(e)) {
        return Err(violation(Axiom::Domain, "unknown tree edge", vec![e.0, e.1]));
    }
    if let Some(&(e, v)) = s.evmap.keys().find(|&&(e, v)| !t.has_edge(e) || v >= t.n()) {
        return Err(violation(Axiom::Domain, "unknown interface key", vec![e.0, e.1, v]));
    }
    let all = s.vmap.values().chain(s.emap.values()).chain(s.evmap.values());
    for set in all {
        if let Some(&x) = set.iter().find(|&&x| x >= g.n() || x == s.apex) {
            return Err(violation(
                Axiom::Domain,
                "set contains the apex or a vertex outside the host",
                vec![x],
            ));
        }
    }
    Ok(())
}

fn check_axioms(g: &Graph, s: &StripStructure) -> std::result::Result<(), Violation> {
    let t = &s.tree;
    // S1
    let mut owner: BTreeMap<usize, Place> = BTreeMap::new();
    let parts = s
        .vmap
        .iter()
        .map(|(&v, set)| (Place::Vertex(v), set))
        .chain(s.emap.iter().map(|(&e, set)| (Place::Edge(e), set)));
    for (place, set) in parts {
        for &x in set {
            if let Some(prev) = owner.insert(x, place) {
                return Err(violation(
                    Axiom::S1,
                    format!("vertex lies in both {prev:?} and {place:?}"),
                    vec![x],
                ));
            }
        }
    }
    // S2
    for l in t.leaves() {
        if let Some(&x) = s.vertex_set(l).first() {
            return Err(violation(Axiom::S2, format!("leaf {l} has a nonempty set"), vec![x]));
        }
    }
    // S3
    for &e in t.edges() {
        for v in 0..t.n() {
            let iface = s.interface(e, v);
            if let Some(&x) = iface.iter().find(|x| !s.edge_set(e).contains(x)) {
                return Err(violation(
                    Axiom::S3,
                    format!("interface ({e:?}, {v}) leaves its edge set"),
                    vec![x],
                ));
            }
            let incident = e.0 == v || e.1 == v;
            if incident == iface.is_empty() {
                return Err(violation(
                    Axiom::S3,
                    format!("interface ({e:?}, {v}) is empty iff incident fails"),
                    vec![e.0, e.1, v],
                ));
            }
        }
    }
    // S4
    let edges = t.edges();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            let shared: Vec<usize> = [e.0, e.1].into_iter().filter(|v| *v == f.0 || *v == f.1).collect();
            for &v in &shared {
                for &x in s.interface(e, v) {
                    if let Some(&y) = s.interface(f, v).iter().find(|&&y| !g.adjacent(x, y)) {
                        return Err(violation(
                            Axiom::S4,
                            format!("interfaces of {e:?} and {f:?} at {v} are not complete"),
                            vec![x, y],
                        ));
                    }
                }
            }
            for &x in s.edge_set(e) {
                for &y in g.neighbors(x).iter().filter(|y| s.edge_set(f).contains(y)) {
                    let allowed = shared
                        .iter()
                        .any(|&v| s.interface(e, v).contains(&x) && s.interface(f, v).contains(&y));
                    if !allowed {
                        return Err(violation(
                            Axiom::S4,
                            format!("stray edge between the sets of {e:?} and {f:?}"),
                            vec![x, y],
                        ));
                    }
                }
            }
        }
    }
    // S5
    for &e in edges {
        let set = s.edge_set(e);
        let interior = g.bits_of(&s.edge_interior(e));
        for end in [e.0, e.1] {
            let reach = reach_interface(g, set, &interior, s.interface(e, end));
            if let Some(&x) = set.iter().find(|x| !reach.contains(**x)) {
                return Err(violation(
                    Axiom::S5,
                    format!("no path from the vertex to the interface at {end} of {e:?}"),
                    vec![x],
                ));
            }
        }
    }
    // S6 and S7
    for v in 0..t.n() {
        let own = s.vertex_set(v);
        if own.is_empty() {
            continue;
        }
        for &e in edges {
            let iface = s.interface(e, v);
            for &x in own {
                if let Some(&y) = g
                    .neighbors(x)
                    .iter()
                    .find(|y| s.edge_set(e).contains(y) && !iface.contains(y))
                {
                    return Err(violation(
                        Axiom::S6,
                        format!("set of tree vertex {v} touches {e:?} outside its interface"),
                        vec![x, y],
                    ));
                }
            }
        }
        let bag = s.bag(v);
        for comp in g.components_within(&g.bits_of(own)) {
            if !comp.iter().any(|&x| g.neighbors(x).iter().any(|y| bag.contains(y))) {
                return Err(violation(
                    Axiom::S7,
                    format!("component inside tree vertex {v} misses B({v})"),
                    comp,
                ));
            }
        }
    }
    // S8
    let a = s.apex;
    let mut allowed = VertexSet::new();
    for l in t.leaves() {
        let e = t.leaf_edge(l);
        for &x in s.interface(e, l) {
            if !g.adjacent(a, x) {
                return Err(violation(Axiom::S8, format!("apex misses the interface at leaf {l}"), vec![x]));
            }
            allowed.insert(x);
        }
    }
    for x in s.support() {
        if g.adjacent(a, x) && !allowed.contains(&x) {
            return Err(violation(Axiom::S8, "apex has a neighbour off the leaf interfaces", vec![x]));
        }
    }
    Ok(())
}

/// Vertices of `set` joined to `iface` by a path inside `set` whose interior
/// lies in `interior`.
fn reach_interface(g: &Graph, set: &VertexSet, interior: &FixedBitSet, iface: &VertexSet) -> FixedBitSet {
    // Interior vertices reachable from the interface through the interior.
    let mut inner = g.bits();
    let mut stack: Vec<usize> = Vec::new();
    for &y in iface {
        for &w in g.neighbors(y) {
            if interior.contains(w) && !inner.put(w) {
                stack.push(w);
            }
        }
    }
    while let Some(x) = stack.pop() {
        for &w in g.neighbors(x) {
            if interior.contains(w) && !inner.put(w) {
                stack.push(w);
            }
        }
    }
    let mut out = g.bits();
    for &x in set {
        let hit = iface.contains(&x)
            || inner.contains(x)
            || g.neighbors(x).iter().any(|&w| iface.contains(&w) || inner.contains(w));
        if hit {
            out.insert(x);
        }
    }
    out
}

fn predicates(g: &Graph, s: &StripStructure) -> StripReport {
    let t = &s.tree;
    let mut tame = s.vmap.values().all(|v| v.is_empty());
    let mut substantial = true;
    for &e in t.edges() {
        let r = rungs(g, s, e);
        tame &= r.stray.is_empty();
        substantial &= r.rungs.iter().any(|r| r.is_long());
    }
    let leaves_single = t.leaves().into_iter().all(|l| s.interface(t.leaf_edge(l), l).len() == 1);
    let trapped = is_trapped(g, &s.support_plus(), s.apex).unwrap_or(false);
    StripReport {
        tame,
        substantial,
        rich: trapped && leaves_single,
    }
}

/// Outcome of a locality test in a strip-structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locality {
    /// `X ⊆ η(e)`.
    Edge { edge: Edge },
    /// `X ⊆ B(v) ∪ η(v)`.
    Vertex { vertex: usize },
    NonlocalPair { x: usize, y: usize },
}

impl Locality {
    pub fn is_local(&self) -> bool {
        !matches!(self, Locality::NonlocalPair { .. })
    }
}

/// Precomputed membership for fast pair tests.
pub struct LocalIndex {
    edge_of: BTreeMap<usize, Edge>,
    /// Tree vertices `v` with `x ∈ B(v) ∪ η(v)`.
    verts_of: BTreeMap<usize, Vec<usize>>,
}

impl LocalIndex {
    pub fn new(s: &StripStructure) -> Self {
        let mut edge_of = BTreeMap::new();
        for (&e, set) in &s.emap {
            for &x in set {
                edge_of.insert(x, e);
            }
        }
        let mut verts_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..s.tree.n() {
            for x in s.bag(v).into_iter().chain(s.vertex_set(v).iter().copied()) {
                verts_of.entry(x).or_default().push(v);
            }
        }
        LocalIndex { edge_of, verts_of }
    }

    /// Whether `{x, y}` is local.
    pub fn pair(&self, x: usize, y: usize) -> bool {
        if let (Some(e), Some(f)) = (self.edge_of.get(&x), self.edge_of.get(&y)) {
            if e == f {
                return true;
            }
        }
        match (self.verts_of.get(&x), self.verts_of.get(&y)) {
            (Some(a), Some(b)) => a.iter().any(|v| b.contains(v)),
            _ => false,
        }
    }
}

/// Whether `X ⊆ η(T)` is local; otherwise a nonlocal 2-subset, found by the
/// case analysis that shows one exists.
pub fn locality(s: &StripStructure, x: &VertexSet) -> Result<Locality> {
    let support = s.support();
    if let Some(v) = x.iter().find(|v| !support.contains(v)) {
        return Err(Error::invalid(format!("vertex {v} is not in η(T)")));
    }
    if let Some(&e) = s.tree.edges().iter().find(|&&e| x.is_subset(s.edge_set(e))) {
        return Ok(Locality::Edge { edge: e });
    }
    let around = |v: usize| -> VertexSet {
        let mut b = s.bag(v);
        b.extend(s.vertex_set(v));
        b
    };
    if let Some(v) = (0..s.tree.n()).find(|&v| x.is_subset(&around(v))) {
        return Ok(Locality::Vertex { vertex: v });
    }
    let pair = |x: usize, y: usize| Ok(Locality::NonlocalPair { x: x.min(y), y: x.max(y) });
    for &e in s.tree.edges() {
        let interior = s.edge_interior(e);
        if let Some(&a) = x.iter().find(|v| interior.contains(v)) {
            let b = *x.iter().find(|v| !s.edge_set(e).contains(v)).expect("X is not inside η(e)");
            return pair(a, b);
        }
    }
    let first = *x.first().expect("the empty set is local");
    let (v, e) = match s.place_of(first) {
        Some(Place::Vertex(v)) => (v, s.tree.incident(v)[0]),
        Some(Place::Edge(e)) => {
            let v = if s.interface(e, e.0).contains(&first) { e.0 } else { e.1 };
            (v, e)
        }
        None => unreachable!("checked against η(T)"),
    };
    let near = around(v);
    let covered = |y: &usize| s.edge_set(e).contains(y) || near.contains(y);
    if let Some(&y) = x.iter().find(|y| !covered(y)) {
        return pair(first, y);
    }
    let a = *x
        .iter()
        .find(|y| s.edge_set(e).contains(y) && !near.contains(y))
        .expect("X is not inside B(v) ∪ η(v)");
    let b = *x
        .iter()
        .find(|y| near.contains(y) && !s.edge_set(e).contains(y))
        .expect("X is not inside η(e)");
    pair(a, b)
}
