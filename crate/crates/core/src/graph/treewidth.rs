//! Tree decompositions: validation and exact treewidth by branch and bound
//! over elimination orderings.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, VertexSet};
use crate::error::{Error, Result};

/// A tree `T` together with a bag of host vertices for every node of `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    /// The one-bag decomposition.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![(0..g.n()).collect()],
        }
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum DecompositionViolation {
    BagCountMismatch { nodes: usize, bags: usize },
    NotATree,
    VertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    DisconnectedSupport { vertex: usize, nodes: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DecompositionReport {
    Valid { width: usize },
    Invalid(DecompositionViolation),
}

impl DecompositionReport {
    pub fn width(&self) -> Option<usize> {
        match self {
            DecompositionReport::Valid { width } => Some(*width),
            DecompositionReport::Invalid(_) => None,
        }
    }
}

/// Checks the three defining conditions in order and reports the first
/// failure, or the width.
pub fn validate_decomposition(g: &Graph, d: &TreeDecomposition) -> DecompositionReport {
    use DecompositionViolation::*;
    let fail = DecompositionReport::Invalid;
    if d.bags.len() != d.tree.n() {
        return fail(BagCountMismatch {
            nodes: d.tree.n(),
            bags: d.bags.len(),
        });
    }
    if !d.tree.is_tree() {
        return fail(NotATree);
    }
    for (node, bag) in d.bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|&&v| v >= g.n()) {
            return fail(VertexOutOfRange { node, vertex });
        }
    }
    let support: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            (0..d.tree.n())
                .filter(|&t| d.bags[t].contains(&v))
                .collect()
        })
        .collect();
    if let Some(vertex) = (0..g.n()).find(|&v| support[v].is_empty()) {
        return fail(VertexUncovered { vertex });
    }
    for (u, v) in g.edges() {
        if !d.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return fail(EdgeUncovered { u, v });
        }
    }
    for (vertex, nodes) in support.into_iter().enumerate() {
        let bits = d.tree.bits_of(&nodes);
        if d.tree.components_within(&bits).len() != 1 {
            return fail(DisconnectedSupport { vertex, nodes });
        }
    }
    DecompositionReport::Valid { width: d.width() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreewidthOptions {
    /// Largest vertex count handled exactly.
    pub cap: usize,
}

impl Default for TreewidthOptions {
    fn default() -> Self {
        TreewidthOptions { cap: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthResult {
    /// The width of `decomposition`; equals the treewidth when `exact`.
    pub width: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub decomposition: TreeDecomposition,
}

pub fn treewidth(g: &Graph) -> Result<TreewidthResult> {
    treewidth_with(g, TreewidthOptions::default())
}

pub fn treewidth_with(g: &Graph, opts: TreewidthOptions) -> Result<TreewidthResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::precondition("treewidth needs at least one vertex"));
    }
    let (upper, heuristic) = min_fill_ordering(g);
    let lower = minor_min_width(g).min(upper);
    let mut result = TreewidthResult {
        width: upper,
        lower,
        upper,
        exact: lower == upper,
        decomposition: decomposition_from_ordering(g, &heuristic),
    };
    if !result.exact && n <= opts.cap.min(64) {
        let mut search = Search::new(g);
        for k in lower..upper {
            if let Some(order) = search.decide(k) {
                result.decomposition = decomposition_from_ordering(g, &order);
                result.upper = k;
                break;
            }
            result.lower = k + 1;
        }
        result.width = result.upper;
        result.lower = result.upper;
        result.exact = true;
    }
    debug_assert_eq!(
        validate_decomposition(g, &result.decomposition).width(),
        Some(result.width)
    );
    Ok(result)
}

/// Bags from eliminating vertices in `order`: each vertex with its later
/// neighbours in the filled graph, hung below the first of those to go.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<FixedBitSet> = (0..n).map(|v| g.neighbor_bits(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree = GraphBuilder::new(n);
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].ones().collect();
        for &x in &later {
            for &y in &later {
                if x != y {
                    adj[x].insert(y);
                }
            }
            adj[x].set(v, false);
        }
        let mut bag: VertexSet = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        if let Some(p) = later.iter().map(|&x| pos[x]).min() {
            tree.add_edge(i, p);
        } else if i + 1 < n {
            tree.add_edge(i, n - 1);
        }
    }
    TreeDecomposition {
        tree: tree.build(),
        bags,
    }
}

/// The min-fill heuristic: an upper bound and its ordering.
fn min_fill_ordering(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut adj: Vec<FixedBitSet> = (0..n).map(|v| g.neighbor_bits(v).clone()).collect();
    let mut alive = g.bits();
    alive.insert_range(..);
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for _ in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].ones().collect();
            let mut missing = 0usize;
            for (i, &x) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&y| !adj[x].contains(y)).count();
            }
            (missing, nb.len(), v)
        };
        let v = alive.ones().min_by_key(|&v| fill(v)).unwrap();
        let nb: Vec<usize> = adj[v].ones().collect();
        width = width.max(nb.len());
        for &x in &nb {
            for &y in &nb {
                if x != y {
                    adj[x].insert(y);
                }
            }
            adj[x].set(v, false);
        }
        alive.set(v, false);
        order.push(v);
    }
    (width, order)
}

/// Minor-min-width: contract a minimum-degree vertex into its
/// minimum-degree neighbour, recording the largest minimum degree seen.
fn minor_min_width(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<FixedBitSet> = (0..n).map(|v| g.neighbor_bits(v).clone()).collect();
    let mut alive = g.bits();
    alive.insert_range(..);
    let mut lb = 0;
    while alive.count_ones(..) > 1 {
        let v = alive.ones().min_by_key(|&v| (adj[v].count_ones(..), v)).unwrap();
        lb = lb.max(adj[v].count_ones(..));
        let nb: Vec<usize> = adj[v].ones().collect();
        if let Some(&u) = nb.iter().min_by_key(|&&u| (adj[u].count_ones(..), u)) {
            for &x in &nb {
                if x != u {
                    adj[u].insert(x);
                    adj[x].insert(u);
                }
                adj[x].set(v, false);
            }
        }
        alive.set(v, false);
    }
    lb
}

/// Decides `tw ≤ k` by depth-first search over sets of eliminated
/// vertices, remembering sets already known to fail.
struct Search {
    n: usize,
    adj: Vec<u64>,
    failed: HashSet<u64>,
}

impl Search {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Search {
            n: g.n(),
            adj,
            failed: HashSet::new(),
        }
    }

    /// Neighbours of `v` once the vertices of `s` have been eliminated.
    fn eliminated_neighbors(&self, s: u64, v: usize) -> u64 {
        let mut result = self.adj[v] & !s;
        let mut todo = self.adj[v] & s;
        let mut seen = todo;
        while todo != 0 {
            let u = todo.trailing_zeros() as usize;
            todo &= todo - 1;
            result |= self.adj[u] & !s;
            let fresh = self.adj[u] & s & !seen;
            seen |= fresh;
            todo |= fresh;
        }
        result & !(1 << v)
    }

    fn decide(&mut self, k: usize) -> Option<Vec<usize>> {
        self.failed.clear();
        let mut order = Vec::with_capacity(self.n);
        self.extend(0, k, &mut order).then_some(order)
    }

    fn extend(&mut self, s: u64, k: usize, order: &mut Vec<usize>) -> bool {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let rest = all & !s;
        if rest.count_ones() as usize <= k + 1 {
            let mut r = rest;
            while r != 0 {
                order.push(r.trailing_zeros() as usize);
                r &= r - 1;
            }
            return true;
        }
        if self.failed.contains(&s) {
            return false;
        }
        let mut candidates = Vec::new();
        let mut r = rest;
        let mut nbr = vec![0u64; self.n];
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            nbr[v] = self.eliminated_neighbors(s, v);
            if nbr[v].count_ones() as usize <= k {
                candidates.push(v);
            }
        }
        // A simplicial vertex of small enough degree can always go first.
        let simplicial = candidates.iter().copied().find(|&v| {
            let mut m = nbr[v];
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                if nbr[v] & !(1 << x) & !nbr[x] != 0 {
                    return false;
                }
            }
            true
        });
        if let Some(v) = simplicial {
            candidates = vec![v];
        } else {
            candidates.sort_by_key(|&v| (nbr[v].count_ones(), v));
        }
        for v in candidates {
            order.push(v);
            if self.extend(s | 1 << v, k, order) {
                return true;
            }
            order.pop();
        }
        self.failed.insert(s);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_and_trees() {
        for n in 1..=7 {
            assert_eq!(treewidth(&Graph::complete(n)).unwrap().width, n - 1);
        }
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let r = treewidth(&tree).unwrap();
        assert!(r.exact);
        assert_eq!(r.width, 1);
        assert_eq!(treewidth(&Graph::cycle(7)).unwrap().width, 2);
        assert_eq!(treewidth(&Graph::complete_bipartite(3, 3)).unwrap().width, 3);
    }

    #[test]
    fn validation_examples() {
        let k3 = Graph::complete(3);
        let d = TreeDecomposition {
            tree: Graph::path(2),
            bags: vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])],
        };
        assert_eq!(
            validate_decomposition(&k3, &d),
            DecompositionReport::Invalid(DecompositionViolation::EdgeUncovered { u: 0, v: 2 })
        );
        assert_eq!(
            validate_decomposition(&Graph::path(3), &d),
            DecompositionReport::Valid { width: 1 }
        );
        let g = Graph::cycle(5);
        assert_eq!(
            validate_decomposition(&g, &TreeDecomposition::trivial(&g)),
            DecompositionReport::Valid { width: 4 }
        );
    }

    #[test]
    fn disconnected_support_reported() {
        let g = Graph::path(3);
        let d = TreeDecomposition {
            tree: Graph::path(3),
            bags: vec![
                VertexSet::from([0, 1]),
                VertexSet::from([1, 2]),
                VertexSet::from([0]),
            ],
        };
        assert!(matches!(
            validate_decomposition(&g, &d),
            DecompositionReport::Invalid(DecompositionViolation::DisconnectedSupport {
                vertex: 0,
                ..
            })
        ));
    }

    #[test]
    fn above_cap_is_flagged_inexact_but_valid() {
        let g = Graph::cycle(12).disjoint_union(&Graph::complete_bipartite(4, 4));
        let r = treewidth_with(&g, TreewidthOptions { cap: 4 }).unwrap();
        assert!(r.lower <= r.upper);
        assert_eq!(validate_decomposition(&g, &r.decomposition).width(), Some(r.width));
    }
}
