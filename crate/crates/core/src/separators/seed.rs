//! Recognising `a`-seeds and separating the apex of one.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::apex::{Bound, SeparatorCertificate, SeparatorContext, SeparatorError};
use super::constants::sigma_bound;
use crate::error::{Error, Result};
use crate::generators::HalfEdge;
use crate::graph::{Graph, VertexSet};
use crate::strips::{edge, is_trapped, saturate_strip, Saturation, SmoothTree, StripStructure};

/// The defining condition an `a`-seed candidate fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedClause {
    /// `H` names the apex or vertices outside the host, or is empty.
    Domain,
    /// `H` is not the line graph of a 1-subdivided tree.
    LineGraph,
    /// The reconstructed tree is not a caterpillar.
    Caterpillar,
    /// `N(a) ≠ 𝒵(H)`.
    Attachment,
    Trapped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFailure {
    pub clause: SeedClause,
    pub detail: String,
}

impl fmt::Display for SeedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.clause, self.detail)
    }
}

fn fail<T>(clause: SeedClause, detail: impl Into<String>) -> std::result::Result<T, SeedFailure> {
    Err(SeedFailure { clause, detail: detail.into() })
}

/// A recognised seed: the caterpillar `C` and, for every vertex of `H`, the
/// half-edge of `C` it stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecognition {
    pub caterpillar: Graph,
    pub half_edges: BTreeMap<usize, HalfEdge>,
}

/// Reconstructs the root tree of a connected line graph of a triangle-free
/// tree: every edge of `h` lies in exactly one maximal clique (its common
/// neighbourhood plus itself must be a clique), every vertex in at most
/// two. Returns the root's vertex count and, per vertex of `h`, its ends.
pub(crate) fn root_tree(h: &Graph) -> std::result::Result<(usize, Vec<(usize, usize)>), String> {
    let mut cliques: Vec<VertexSet> = Vec::new();
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (x, y) in h.edges() {
        let mut k: VertexSet = h
            .neighbors(x)
            .iter()
            .filter(|&&w| h.adjacent(y, w))
            .copied()
            .collect();
        if !h.is_clique(k.iter()) {
            return Err(format!("edge {x}-{y} lies in two maximal cliques"));
        }
        k.extend([x, y]);
        if !cliques.contains(&k) {
            for &v in &k {
                member[v].push(cliques.len());
            }
            cliques.push(k);
        }
    }
    let mut nodes = cliques.len();
    let mut ends = Vec::with_capacity(h.n());
    for (v, m) in member.iter().enumerate() {
        match m[..] {
            [c] => {
                ends.push((c, nodes));
                nodes += 1;
            }
            [c, d] => ends.push((c, d)),
            _ => return Err(format!("vertex {v} lies in {} maximal cliques", m.len())),
        }
    }
    if nodes != h.n() + 1 {
        return Err("the root graph is not a tree".into());
    }
    Ok((nodes, ends))
}

/// The minimal subtree spanning the branch vertices is a path.
pub(crate) fn is_caterpillar(c: &Graph) -> bool {
    if c.max_degree() > 3 {
        return false;
    }
    let mut alive: Vec<bool> = vec![true; c.n()];
    let mut deg: Vec<usize> = (0..c.n()).map(|v| c.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..c.n()).filter(|&v| deg[v] <= 1 && c.degree(v) <= 2).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in c.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] <= 1 && c.degree(w) <= 2 {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..c.n()).filter(|&v| alive[v]).all(|v| deg[v] <= 2)
}

/// Checks both defining conditions of an `a`-seed: `H` is the line graph of
/// the 1-subdivision of a caterpillar with `N(a) = 𝒵(H)`, and `a` is
/// trapped in `H ∪ {a}`.
pub fn recognize_seed(
    g: &Graph,
    a: usize,
    h: &VertexSet,
) -> std::result::Result<SeedRecognition, SeedFailure> {
    if a >= g.n() || h.iter().any(|&v| v >= g.n()) {
        return fail(SeedClause::Domain, "vertex out of range");
    }
    if h.contains(&a) {
        return fail(SeedClause::Domain, "H contains the apex");
    }
    if h.is_empty() {
        return fail(SeedClause::Domain, "H is empty");
    }
    let hv: Vec<usize> = h.iter().copied().collect();
    let hg = g.induced(&hv);
    if !hg.is_connected() {
        return fail(SeedClause::LineGraph, "H is disconnected");
    }
    let (nodes, ends) = root_tree(&hg).or_else(|e| fail(SeedClause::LineGraph, e))?;
    // Leaves of the root belong to C; the other colour class must be the
    // subdivision vertices, all of degree two.
    let mut deg = vec![0usize; nodes];
    let mut adj = vec![Vec::new(); nodes];
    for (i, &(p, q)) in ends.iter().enumerate() {
        deg[p] += 1;
        deg[q] += 1;
        adj[p].push((q, i));
        adj[q].push((p, i));
    }
    let mut colour = vec![usize::MAX; nodes];
    let leaf = (0..nodes).find(|&v| deg[v] == 1).expect("a tree with an edge has a leaf");
    colour[leaf] = 0;
    let mut queue = VecDeque::from([leaf]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in &adj[u] {
            if colour[w] == usize::MAX {
                colour[w] = 1 - colour[u];
                queue.push_back(w);
            }
        }
    }
    if let Some(s) = (0..nodes).find(|&v| colour[v] == 1 && deg[v] != 2) {
        return fail(
            SeedClause::LineGraph,
            format!("root vertex {s} would be a subdivision vertex of degree {}", deg[s]),
        );
    }
    let original: Vec<usize> = (0..nodes).filter(|&v| colour[v] == 0).collect();
    let mut index = vec![usize::MAX; nodes];
    for (i, &v) in original.iter().enumerate() {
        index[v] = i;
    }
    let mut c_edges = Vec::new();
    let mut half_edges = BTreeMap::new();
    for s in (0..nodes).filter(|&v| colour[v] == 1) {
        let [(c1, i1), (c2, i2)] = [adj[s][0], adj[s][1]];
        let e = edge(index[c1], index[c2]);
        c_edges.push(e);
        half_edges.insert(hv[i1], HalfEdge { at: index[c1], edge: e });
        half_edges.insert(hv[i2], HalfEdge { at: index[c2], edge: e });
    }
    let caterpillar = Graph::from_edges(original.len(), c_edges)
        .or_else(|e| fail(SeedClause::LineGraph, e.to_string()))?;
    if !is_caterpillar(&caterpillar) {
        return fail(
            SeedClause::Caterpillar,
            "the branch vertices of C do not lie on one path, or C has a vertex of degree above three",
        );
    }
    let z: VertexSet = hg.simplicial_set().into_iter().map(|i| hv[i]).collect();
    let na: VertexSet = g.neighbors(a).iter().copied().collect();
    if na != z {
        return fail(SeedClause::Attachment, format!("N(a) = {na:?} but 𝒵(H) = {z:?}"));
    }
    let mut ha = h.clone();
    ha.insert(a);
    if !is_trapped(g, &ha, a).unwrap_or(false) {
        return fail(SeedClause::Trapped, "a is not trapped in H ∪ {a}");
    }
    Ok(SeedRecognition { caterpillar, half_edges })
}

pub fn is_a_seed(g: &Graph, a: usize, h: &VertexSet) -> bool {
    recognize_seed(g, a, h).is_ok()
}

/// The tame, substantial, rich strip-structure of a seed over the smooth
/// caterpillar `T` obtained from `C` by suppressing degree-two vertices:
/// each edge of `T` carries the half-edges along its path in `C`, with the
/// halves at its two ends as interfaces.
pub fn seed_strip(a: usize, rec: &SeedRecognition) -> Result<StripStructure> {
    let c = &rec.caterpillar;
    let keep: Vec<usize> = (0..c.n()).filter(|&v| c.degree(v) != 2).collect();
    let leaves = keep.iter().filter(|&&v| c.degree(v) == 1).count();
    if leaves < 3 {
        return Err(Error::precondition(format!(
            "the caterpillar has {leaves} leaves; a smooth tree needs three"
        )));
    }
    let mut tid = vec![usize::MAX; c.n()];
    for (i, &v) in keep.iter().enumerate() {
        tid[v] = i;
    }
    let half: BTreeMap<(usize, (usize, usize)), usize> =
        rec.half_edges.iter().map(|(&x, h)| ((h.at, h.edge), x)).collect();
    let mut t_edges = Vec::new();
    let mut sets = Vec::new();
    for &start in &keep {
        for &first in c.neighbors(start) {
            let (mut prev, mut cur) = (start, first);
            let mut body = vec![half[&(start, edge(start, first))], half[&(first, edge(start, first))]];
            while c.degree(cur) == 2 {
                let next = *c.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
                body.push(half[&(cur, edge(cur, next))]);
                body.push(half[&(next, edge(cur, next))]);
                (prev, cur) = (cur, next);
            }
            if tid[start] < tid[cur] {
                t_edges.push((tid[start], tid[cur]));
                sets.push((edge(tid[start], tid[cur]), tid[start], tid[cur], body));
            }
        }
    }
    let tree = SmoothTree::new(Graph::from_edges(keep.len(), t_edges)?)?;
    let mut s = StripStructure::new(a, tree);
    for (e, u, v, body) in sets {
        s.evmap.insert((e, u), VertexSet::from([body[0]]));
        s.evmap.insert((e, v), VertexSet::from([*body.last().unwrap()]));
        s.emap.insert(e, body.into_iter().collect());
    }
    Ok(s)
}

/// Recognises the seed, builds its strip-structure and saturates it.
pub fn saturated_seed(
    g: &Graph,
    a: usize,
    h: &VertexSet,
) -> std::result::Result<Saturation, SeparatorError> {
    let rec = recognize_seed(g, a, h).map_err(SeparatorError::NotASeed)?;
    let s = seed_strip(a, &rec).map_err(|e| SeparatorError::Precondition(e.to_string()))?;
    Ok(saturate_strip(g, &s)?)
}

/// A separator of fewer than `s(t) = σ(t, 3)` vertices between the apex of
/// an `a`-seed and `x ∉ N[a]`.
pub fn seed_separator(
    g: &Graph,
    a: usize,
    h: &VertexSet,
    x: usize,
    t: usize,
) -> std::result::Result<SeparatorCertificate, SeparatorError> {
    let sat = saturated_seed(g, a, h)?;
    let ctx = SeparatorContext::with_jewels(g, &sat.strip, sat.jewels.clone(), t)?;
    let mut cert = ctx.apex_separator(x)?;
    cert.bound = Bound { name: format!("s({t})"), value: sigma_bound(t, 3) };
    cert.within_bound = cert.bound.value.exceeds(cert.set.len());
    Ok(cert)
}
