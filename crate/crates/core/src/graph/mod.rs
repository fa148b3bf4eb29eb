//! Immutable simple graphs and the neighbourhood algebra everything else is
//! built on.

mod flow;
pub mod io;
mod paths;
mod treewidth;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flow::{menger, vertex_disjoint_paths, MengerOutcome};
pub use paths::for_each_induced_path;
pub use treewidth::{
    treewidth, treewidth_with, validate_decomposition, DecompositionReport, DecompositionViolation,
    TreeDecomposition, TreewidthOptions, TreewidthResult,
};

/// Vertex sets exposed by the public API. Ordered so output is deterministic.
pub type VertexSet = BTreeSet<usize>;

/// A finite simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    nbrs: Vec<Vec<usize>>,
}

/// Incremental builder; duplicate edges are ignored, loops are rejected.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<FixedBitSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut b = GraphBuilder::new(g.n());
        for (u, v) in g.edges() {
            b.add_edge(u, v);
        }
        b
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        let n = self.adj.len() + 1;
        for row in &mut self.adj {
            row.grow(n);
        }
        self.adj.push(FixedBitSet::with_capacity(n));
        n - 1
    }

    /// Panics on a loop or an out-of-range endpoint; both are programming
    /// errors inside constructors.
    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge {u}-{v} out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> &mut Self {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        self
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn build(self) -> Graph {
        let nbrs = self.adj.iter().map(|r| r.ones().collect()).collect();
        Graph {
            n: self.adj.len(),
            adj: self.adj,
            nbrs,
        }
    }
}

/// How two disjoint vertex sets see each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Complete,
    Anticomplete,
    Mixed,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            if b.has_edge(u, v) {
                return Err(Error::invalid(format!("parallel edge {u}-{v}")));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(v - 1, v);
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut b = GraphBuilder::new(n);
        for v in 0..n {
            b.add_edge(v, (v + 1) % n);
        }
        b.build()
    }

    /// `K_{p,q}` with sides `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut b = GraphBuilder::new(p + q);
        for u in 0..p {
            for v in p..p + q {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn neighbor_bits(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        vs.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// An empty bitset sized for this graph.
    pub fn bits(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n)
    }

    pub fn bits_of<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> FixedBitSet {
        let mut b = self.bits();
        for &v in vs {
            b.insert(v);
        }
        b
    }

    /// The subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        b.build()
    }

    /// `G ∖ removed`, together with the map from new to old labels.
    pub fn without(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    /// A copy of `self` with one extra vertex adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: &[usize]) -> Graph {
        let mut b = GraphBuilder::from_graph(self);
        let x = b.add_vertex();
        for &u in nbrs {
            b.add_edge(x, u);
        }
        b.build()
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = GraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            b.add_edge(u + self.n, v + self.n);
        }
        b.build()
    }

    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    /// Connected components of `G[allowed]`, each sorted, ordered by their
    /// smallest vertex.
    pub fn components_within(&self, allowed: &FixedBitSet) -> Vec<Vec<usize>> {
        let mut seen = self.bits();
        let mut out = Vec::new();
        for s in allowed.ones() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.nbrs[u] {
                    if allowed.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut all = self.bits();
        all.insert_range(..);
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.nbrs[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `source` to some vertex of `targets` whose
    /// interior lies in `through`. Shortest means induced.
    pub fn shortest_path_through(
        &self,
        source: usize,
        targets: &FixedBitSet,
        through: &FixedBitSet,
    ) -> Option<Vec<usize>> {
        if targets.contains(source) {
            return Some(vec![source]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.nbrs[u] {
                if parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = u;
                if targets.contains(w) {
                    let mut path = vec![w];
                    let mut x = w;
                    while x != source {
                        x = parent[x];
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                if through.contains(w) {
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// `N^d[x]`: vertices at distance at most `d` from `x`.
    pub fn neighborhood(&self, x: usize, d: usize) -> Result<VertexSet> {
        self.check_vertex(x)?;
        Ok(self
            .distances(x)
            .into_iter()
            .enumerate()
            .filter_map(|(v, dv)| dv.filter(|&dv| dv <= d).map(|_| v))
            .collect())
    }

    /// `N(X)`: vertices outside `X` with a neighbour in `X`.
    pub fn open_neighborhood(&self, xs: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for &x in xs {
            for &w in &self.nbrs[x] {
                if !xs.contains(&w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// Neighbours of `x` inside `within`.
    pub fn neighbors_in(&self, x: usize, within: &VertexSet) -> VertexSet {
        self.nbrs[x]
            .iter()
            .copied()
            .filter(|w| within.contains(w))
            .collect()
    }

    pub fn relation(&self, xs: &VertexSet, ys: &VertexSet) -> Result<Relation> {
        self.check_vertices(xs.iter().chain(ys))?;
        if let Some(v) = xs.intersection(ys).next() {
            return Err(Error::invalid(format!("sets overlap at vertex {v}")));
        }
        let (mut any, mut all) = (false, true);
        for &x in xs {
            for &y in ys {
                if self.adjacent(x, y) {
                    any = true;
                } else {
                    all = false;
                }
            }
        }
        Ok(if !any {
            Relation::Anticomplete
        } else if all {
            Relation::Complete
        } else {
            Relation::Mixed
        })
    }

    pub fn is_clique<'a>(&self, vs: impl IntoIterator<Item = &'a usize> + Clone) -> bool {
        let v: Vec<usize> = vs.into_iter().copied().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    pub fn is_stable<'a>(&self, vs: impl IntoIterator<Item = &'a usize> + Clone) -> bool {
        let v: Vec<usize> = vs.into_iter().copied().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| !self.adjacent(a, b)))
    }

    /// `𝒵(G)`: vertices whose neighbourhood is a clique.
    pub fn simplicial_set(&self) -> VertexSet {
        (0..self.n)
            .filter(|&v| self.is_clique(self.nbrs[v].iter()))
            .collect()
    }

    /// Whether `vertices`, in order, form an induced path of `self`.
    pub fn is_induced_path(&self, vertices: &[usize]) -> bool {
        let k = vertices.len();
        if k == 0 {
            return false;
        }
        let mut seen = self.bits();
        for &v in vertices {
            if v >= self.n || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        for i in 0..k {
            for j in i + 1..k {
                if self.adjacent(vertices[i], vertices[j]) != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// An induced path `p_1 - ... - p_k` of a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        g.check_vertices(&vertices)?;
        if !g.is_induced_path(&vertices) {
            return Err(Error::invalid(format!(
                "{vertices:?} is not an induced path"
            )));
        }
        Ok(Path(vertices))
    }

    /// Wraps a vertex sequence already known to be an induced path.
    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// `P*`, the vertices other than the two ends.
    pub fn interior(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

/// A separation `(L, M, R)`: a partition of `V(G)` with `L`, `R` nonempty
/// and no edge between `L` and `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    #[serde(rename = "L")]
    pub left: VertexSet,
    #[serde(rename = "M")]
    pub middle: VertexSet,
    #[serde(rename = "R")]
    pub right: VertexSet,
}

impl Separation {
    /// The separation witnessing that `middle` separates `xs` from `ys`:
    /// `L` is the union of the components of `G ∖ M` meeting `xs`.
    pub fn separating(
        g: &Graph,
        middle: &VertexSet,
        xs: &VertexSet,
        ys: &VertexSet,
    ) -> Option<Separation> {
        if xs.is_empty() || ys.is_empty() {
            return None;
        }
        if xs.iter().chain(ys).any(|v| middle.contains(v)) {
            return None;
        }
        let mut allowed = g.bits();
        allowed.insert_range(..);
        for &m in middle {
            allowed.set(m, false);
        }
        let mut left = VertexSet::new();
        for comp in g.components_within(&allowed) {
            if comp.iter().any(|v| xs.contains(v)) {
                left.extend(comp);
            }
        }
        if left.iter().any(|v| ys.contains(v)) {
            return None;
        }
        let right: VertexSet = (0..g.n())
            .filter(|v| !left.contains(v) && !middle.contains(v))
            .collect();
        Some(Separation {
            left,
            middle: middle.clone(),
            right,
        })
    }

    /// Re-checks every defining condition against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err("L and R must be nonempty".into());
        }
        let total = self.left.len() + self.middle.len() + self.right.len();
        let union: VertexSet = self
            .left
            .iter()
            .chain(&self.middle)
            .chain(&self.right)
            .copied()
            .collect();
        if union.len() != total {
            return Err("L, M, R are not pairwise disjoint".into());
        }
        if union.len() != g.n() || union.iter().any(|&v| v >= g.n()) {
            return Err("L ∪ M ∪ R is not V(G)".into());
        }
        for &l in &self.left {
            if let Some(&r) = g.neighbors(l).iter().find(|r| self.right.contains(r)) {
                return Err(format!("edge {l}-{r} joins L and R"));
            }
        }
        Ok(())
    }
}

/// Pairwise internally disjoint induced paths from `source` to `sink`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub source: usize,
    pub sink: usize,
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn new(g: &Graph, source: usize, sink: usize, paths: Vec<Vec<usize>>) -> Result<Self> {
        let paths = paths
            .into_iter()
            .map(|p| Path::new(g, p))
            .collect::<Result<Vec<_>>>()?;
        let ps = PathSystem {
            source,
            sink,
            paths,
        };
        ps.validate(g)?;
        Ok(ps)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_vertex(self.source)?;
        g.check_vertex(self.sink)?;
        if self.source == self.sink {
            return Err(Error::invalid("source and sink coincide"));
        }
        let nonadjacent = !g.adjacent(self.source, self.sink);
        let mut used = g.bits();
        for p in &self.paths {
            if !g.is_induced_path(p.vertices()) {
                return Err(Error::invalid(format!("{:?} is not an induced path", p.0)));
            }
            if p.first() != self.source || p.last() != self.sink {
                return Err(Error::invalid(format!(
                    "path {:?} does not run from {} to {}",
                    p.0, self.source, self.sink
                )));
            }
            if nonadjacent && p.interior().is_empty() {
                return Err(Error::invalid("empty interior between non-adjacent ends"));
            }
            for &v in p.interior() {
                if used.contains(v) {
                    return Err(Error::invalid(format!(
                        "paths are not internally disjoint at {v}"
                    )));
                }
                used.insert(v);
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `a_P`: the neighbour of the source on each path.
    pub fn first_neighbors(&self) -> Vec<usize> {
        self.paths.iter().map(|p| p.vertices()[1]).collect()
    }
}
