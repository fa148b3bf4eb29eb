//! Constructors for the named graph families and seeded random members of
//! `𝒞_t`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Path, VertexSet};
use crate::obstructions::{
    find_clique, search_prism, search_theta, ConfigKind, Configuration, Obstruction,
    PrismEmbedding, PyramidEmbedding, ThetaEmbedding,
};

/// Builds a theta, prism or pyramid whose paths have the given lengths.
///
/// Labels: theta ends are `0, 1`; prism triangles are `0, 1, 2` and
/// `3, 4, 5`; the pyramid apex is `0` and its base `1, 2, 3`. Interior
/// vertices follow, path by path.
pub fn make_config(kind: ConfigKind, lengths: [usize; 3]) -> Result<(Graph, Configuration)> {
    match kind {
        ConfigKind::Theta => {
            if lengths.iter().any(|&l| l < 2) {
                return Err(Error::invalid("theta paths must have length at least two"));
            }
            let (g, paths) = with_paths(2, lengths.map(|l| (0, 1, l)), |_| {});
            let paths = paths.map(|p| Path::new(&g, p).expect("constructed paths are induced"));
            Ok((g, Configuration::Theta(ThetaEmbedding { ends: [0, 1], paths })))
        }
        ConfigKind::Prism => {
            if lengths.iter().any(|&l| l < 1) {
                return Err(Error::invalid(
                    "prism paths must have length at least one (the triangles are disjoint)",
                ));
            }
            let spec = [(0, 3, lengths[0]), (1, 4, lengths[1]), (2, 5, lengths[2])];
            let (g, paths) = with_paths(6, spec, |b| {
                for (x, y) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
                    b.add_edge(x, y);
                }
            });
            let paths = paths.map(|p| Path::new(&g, p).expect("constructed paths are induced"));
            Ok((
                g,
                Configuration::Prism(PrismEmbedding {
                    triangles: [[0, 1, 2], [3, 4, 5]],
                    paths,
                }),
            ))
        }
        ConfigKind::Pyramid => {
            if lengths.iter().any(|&l| l < 1) {
                return Err(Error::invalid("pyramid paths must have length at least one"));
            }
            if lengths.iter().filter(|&&l| l == 1).count() > 1 {
                return Err(Error::invalid("at most one pyramid path may have length one"));
            }
            let spec = [(0, 1, lengths[0]), (0, 2, lengths[1]), (0, 3, lengths[2])];
            let (g, paths) = with_paths(4, spec, |b| {
                for (x, y) in [(1, 2), (1, 3), (2, 3)] {
                    b.add_edge(x, y);
                }
            });
            let paths = paths.map(|p| Path::new(&g, p).expect("constructed paths are induced"));
            Ok((
                g,
                Configuration::Pyramid(PyramidEmbedding {
                    apex: 0,
                    base: [1, 2, 3],
                    paths,
                }),
            ))
        }
    }
}

/// `fixed` labelled vertices plus three paths `(from, to, length)` whose
/// interiors are fresh vertices.
fn with_paths(
    fixed: usize,
    spec: [(usize, usize, usize); 3],
    extra: impl FnOnce(&mut GraphBuilder),
) -> (Graph, [Vec<usize>; 3]) {
    let mut b = GraphBuilder::new(fixed);
    extra(&mut b);
    let paths = spec.map(|(s, t, len)| {
        let mut p = vec![s];
        for _ in 1..len {
            p.push(b.add_vertex());
        }
        p.push(t);
        for w in p.windows(2) {
            b.add_edge(w[0], w[1]);
        }
        p
    });
    (b.build(), paths)
}

/// The `t × t` wall in the brick layout of the 5 × 5 figure.
///
/// Row 1 has `t` vertices at columns `0, 2, .., 2t-2`; rows `2..t-1` have
/// `2t` vertices at columns `0..2t-1`; row `t` has `t` vertices at the
/// columns of parity `t mod 2`. Consecutive vertices of a row are adjacent,
/// and rows `r`, `r+1` are joined at the shared columns `c ≡ r+1 (mod 2)`.
/// Vertices are numbered row by row, left to right.
pub fn make_wall(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::invalid("walls need t ≥ 2"));
    }
    let width = 2 * t;
    let columns = |r: usize| -> Vec<usize> {
        if r == 1 {
            (0..t).map(|i| 2 * i).collect()
        } else if r == t {
            (0..width).filter(|c| c % 2 == t % 2).collect()
        } else {
            (0..width).collect()
        }
    };
    let rows: Vec<Vec<usize>> = (1..=t).map(columns).collect();
    let mut id = vec![vec![None; width]; t];
    let mut next = 0;
    for (r, cols) in rows.iter().enumerate() {
        for &c in cols {
            id[r][c] = Some(next);
            next += 1;
        }
    }
    let mut b = GraphBuilder::new(next);
    for (r, cols) in rows.iter().enumerate() {
        for w in cols.windows(2) {
            b.add_edge(id[r][w[0]].unwrap(), id[r][w[1]].unwrap());
        }
        if r + 1 < t {
            // 1-based row r+1 joins the row below at columns ≡ r+2 (mod 2).
            for c in (0..width).filter(|c| c % 2 == r % 2) {
                if let (Some(u), Some(v)) = (id[r][c], id[r + 1][c]) {
                    b.add_edge(u, v);
                }
            }
        }
    }
    Ok(b.build())
}

/// `L(F)`; vertex `i` is the `i`-th edge of `f.edges()`.
pub fn line_graph(f: &Graph) -> Result<Graph> {
    let edges = f.edges();
    if edges.is_empty() {
        return Err(Error::invalid("the line graph of an edgeless graph is empty"));
    }
    let mut b = GraphBuilder::new(edges.len());
    for (i, &(a, c)) in edges.iter().enumerate() {
        for (j, &(x, y)) in edges.iter().enumerate().skip(i + 1) {
            if a == x || a == y || c == x || c == y {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b.build())
}

/// Replaces every edge by a path with `k` new interior vertices. Original
/// vertices keep their labels; new ones follow in edge order.
pub fn subdivide_each_edge(g: &Graph, k: usize) -> Graph {
    if k == 0 {
        return g.clone();
    }
    let mut b = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..k {
            let x = b.add_vertex();
            b.add_edge(prev, x);
            prev = x;
        }
        b.add_edge(prev, v);
    }
    b.build()
}

/// `T_d^r` rooted at vertex 0, numbered breadth first.
pub fn make_t_d_r(d: usize, r: usize) -> Result<(Graph, usize)> {
    if d < 1 || r < 1 {
        return Err(Error::invalid("T_d^r needs d ≥ 1 and r ≥ 1"));
    }
    let mut b = GraphBuilder::new(1);
    let mut layer = vec![0];
    for _ in 0..r {
        let mut next = Vec::with_capacity(layer.len() * d);
        for &p in &layer {
            for _ in 0..d {
                let c = b.add_vertex();
                b.add_edge(p, c);
                next.push(c);
            }
        }
        layer = next;
    }
    Ok((b.build(), 0))
}

/// A caterpillar given by leg flags along its spine: `'L'` gives the spine
/// vertex a pendant leg, `'.'` does not. Each end of the spine also carries
/// one end leaf, so `"L"` is `K_{1,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarSpec {
    pub legs: Vec<bool>,
}

impl FromStr for CaterpillarSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let legs = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'L' | 'l' => Ok(true),
                '.' => Ok(false),
                _ => Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected {c:?}; use 'L' or '.'"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        if legs.is_empty() {
            return Err(Error::invalid("caterpillar spine must be nonempty"));
        }
        Ok(CaterpillarSpec { legs })
    }
}

impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.legs {
            f.write_str(if l { "L" } else { "." })?;
        }
        Ok(())
    }
}

impl CaterpillarSpec {
    /// Spine vertices come first (`0..s`), then legs and end leaves.
    pub fn build(&self) -> Graph {
        let s = self.legs.len();
        let mut b = GraphBuilder::new(s);
        for i in 1..s {
            b.add_edge(i - 1, i);
        }
        for (i, &leg) in self.legs.iter().enumerate() {
            if leg {
                let x = b.add_vertex();
                b.add_edge(i, x);
            }
        }
        for end in [0, s - 1] {
            let x = b.add_vertex();
            b.add_edge(end, x);
        }
        b.build()
    }

    pub fn leaf_count(&self) -> usize {
        self.legs.iter().filter(|&&l| l).count() + 2
    }
}

/// One vertex of `L(S(C))`: the half of edge `edge` of `C` at `at`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub at: usize,
    pub edge: (usize, usize),
}

/// An apex `a` over `H = L(S(C))` adjacent exactly to `𝒵(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASeed {
    pub graph: Graph,
    pub apex: usize,
    pub seed: VertexSet,
    pub caterpillar: Graph,
    /// `half_edges[i]` describes vertex `i` of `graph`, for `i` in `H`.
    pub half_edges: Vec<HalfEdge>,
}

/// Builds the line graph of the 1-subdivision of a tree `c`, one vertex per
/// half-edge: vertices `2i` and `2i+1` are the halves of the `i`-th edge at
/// its smaller and larger end.
pub fn half_edge_line_graph(c: &Graph) -> (Graph, Vec<HalfEdge>) {
    let edges = c.edges();
    let mut halves = Vec::with_capacity(2 * edges.len());
    for &(u, v) in &edges {
        halves.push(HalfEdge { at: u, edge: (u, v) });
        halves.push(HalfEdge { at: v, edge: (u, v) });
    }
    let mut b = GraphBuilder::new(halves.len());
    for i in 0..halves.len() {
        for j in i + 1..halves.len() {
            let (x, y) = (halves[i], halves[j]);
            if x.edge == y.edge || x.at == y.at {
                b.add_edge(i, j);
            }
        }
    }
    (b.build(), halves)
}

pub fn make_a_seed(spec: &CaterpillarSpec) -> Result<ASeed> {
    if spec.leaf_count() < 3 {
        return Err(Error::invalid(format!(
            "caterpillar {spec} has {} leaves; an a-seed needs at least three",
            spec.leaf_count()
        )));
    }
    let caterpillar = spec.build();
    let (h, half_edges) = half_edge_line_graph(&caterpillar);
    let simplicial: Vec<usize> = h.simplicial_set().into_iter().collect();
    let graph = h.with_vertex(&simplicial);
    Ok(ASeed {
        apex: h.n(),
        seed: (0..h.n()).collect(),
        graph,
        caterpillar,
        half_edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    pub cap: usize,
    pub attempts: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            cap: 30,
            attempts: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum SampleError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("no member of the class found in {attempts} attempts")]
    Exhausted {
        attempts: usize,
        candidate: Graph,
        witness: Obstruction,
    },
}

pub fn random_class_graph(n: usize, t: usize, seed: u64) -> Result<Graph, SampleError> {
    random_class_graph_with(n, t, seed, SampleOptions::default())
}

/// Rejection sampling from `G(n, 2/n)` (ChaCha8 seeded with `seed`, edges
/// drawn in lexicographic order) until the sample is theta-free,
/// prism-free and `K_t`-free.
pub fn random_class_graph_with(
    n: usize,
    t: usize,
    seed: u64,
    opts: SampleOptions,
) -> Result<Graph, SampleError> {
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "random class graph",
            size: n,
            cap: opts.cap,
        }
        .into());
    }
    if n >= t && t <= 1 {
        return Err(Error::invalid(format!("no graph on {n} vertices is K_{t}-free")).into());
    }
    let p = if n <= 2 { 0.5 } else { 2.0 / n as f64 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..opts.attempts {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    b.add_edge(u, v);
                }
            }
        }
        let g = b.build();
        let witness = if let Some(c) = find_clique(&g, t) {
            Obstruction::Clique(c)
        } else if let Some(th) = search_theta(&g) {
            Obstruction::Theta(th)
        } else if let Some(pr) = search_prism(&g) {
            Obstruction::Prism(pr)
        } else {
            return Ok(g);
        };
        last = Some((g, witness));
    }
    let (candidate, witness) = last.expect("at least one attempt");
    Err(SampleError::Exhausted {
        attempts: opts.attempts,
        candidate,
        witness,
    })
}
