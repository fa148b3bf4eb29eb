//! Cliques, induced bicliques and induced-subgraph embedding.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The lexicographically first clique on `k` vertices.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let mut cand = g.bits();
    cand.insert_range(..);
    let mut chosen = Vec::with_capacity(k);
    clique_rec(g, k, &cand, &mut chosen).then_some(chosen)
}

fn clique_rec(g: &Graph, k: usize, cand: &FixedBitSet, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    if cand.count_ones(..) + chosen.len() < k {
        return false;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.intersect_with(g.neighbor_bits(v));
        next.set_range(..v + 1, false);
        chosen.push(v);
        if clique_rec(g, k, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Stable sets `A`, `B` of size `k`, complete to each other, with
/// `min A < min B`.
pub fn find_biclique(g: &Graph, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if k == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let mut cand = g.bits();
    cand.insert_range(..);
    let mut a = Vec::with_capacity(k);
    let mut out = None;
    biclique_a(g, k, &cand, None, &mut a, &mut out);
    out
}

/// Grows side `A` while tracking the common neighbourhood of `A`.
fn biclique_a(
    g: &Graph,
    k: usize,
    cand: &FixedBitSet,
    common: Option<&FixedBitSet>,
    a: &mut Vec<usize>,
    out: &mut Option<(Vec<usize>, Vec<usize>)>,
) -> bool {
    if a.len() == k {
        let mut pool = common.unwrap().clone();
        pool.set_range(..a[0] + 1, false);
        let mut b = Vec::with_capacity(k);
        if stable_rec(g, k, &pool, &mut b) {
            *out = Some((a.clone(), b));
            return true;
        }
        return false;
    }
    for v in cand.ones() {
        let mut nc = g.neighbor_bits(v).clone();
        if let Some(c) = common {
            nc.intersect_with(c);
        }
        if nc.count_ones(..) < k {
            continue;
        }
        let mut next = cand.clone();
        next.difference_with(g.neighbor_bits(v));
        next.set_range(..v + 1, false);
        a.push(v);
        if biclique_a(g, k, &next, Some(&nc), a, out) {
            return true;
        }
        a.pop();
    }
    false
}

fn stable_rec(g: &Graph, k: usize, cand: &FixedBitSet, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    if cand.count_ones(..) + chosen.len() < k {
        return false;
    }
    for v in cand.ones() {
        let mut next = cand.clone();
        next.difference_with(g.neighbor_bits(v));
        next.set_range(..v + 1, false);
        chosen.push(v);
        if stable_rec(g, k, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Largest pattern accepted by [`contains_induced`] unless it is a forest.
pub const INDUCED_PATTERN_CAP: usize = 10;

/// An injective map `V(H) -> V(G)` preserving adjacency and non-adjacency;
/// entry `i` is the image of vertex `i` of `H`.
pub fn contains_induced(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    if h.n() > INDUCED_PATTERN_CAP && !h.is_forest() {
        return Err(Error::CapExceeded {
            what: "induced pattern",
            size: h.n(),
            cap: INDUCED_PATTERN_CAP,
        });
    }
    Ok(embed_induced(g, h))
}

/// The uncapped search behind [`contains_induced`].
pub fn embed_induced(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    // Place pattern vertices component by component in BFS order so each
    // new vertex usually has a placed neighbour to draw candidates from.
    let mut order = Vec::with_capacity(h.n());
    let mut anchor = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    for comp in h.components() {
        let root = *comp.iter().max_by_key(|&&v| (h.degree(v), usize::MAX - v)).unwrap();
        placed[root] = true;
        order.push(root);
        anchor.push(None);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in h.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    anchor.push(Some(u));
                }
            }
        }
    }
    let mut map = vec![usize::MAX; h.n()];
    let mut used = g.bits();
    embed_rec(g, h, &order, &anchor, 0, &mut map, &mut used).then_some(map)
}

fn embed_rec(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    anchor: &[Option<usize>],
    i: usize,
    map: &mut [usize],
    used: &mut FixedBitSet,
) -> bool {
    if i == order.len() {
        return true;
    }
    let u = order[i];
    let pool: Vec<usize> = match anchor[i] {
        Some(p) => g.neighbors(map[p]).to_vec(),
        None => (0..g.n()).collect(),
    };
    for x in pool {
        if used.contains(x) || g.degree(x) < h.degree(u) {
            continue;
        }
        let consistent = order[..i]
            .iter()
            .all(|&w| h.adjacent(u, w) == g.adjacent(x, map[w]));
        if !consistent {
            continue;
        }
        map[u] = x;
        used.insert(x);
        if embed_rec(g, h, order, anchor, i + 1, map, used) {
            return true;
        }
        used.set(x, false);
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_examples() {
        assert_eq!(find_clique(&Graph::complete(5), 5), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_clique(&Graph::cycle(7), 3), None);
        assert_eq!(find_clique(&Graph::cycle(7), 2), Some(vec![0, 1]));
    }

    #[test]
    fn biclique_examples() {
        let (a, b) = find_biclique(&Graph::complete_bipartite(3, 3), 3).unwrap();
        assert_eq!((a, b), (vec![0, 1, 2], vec![3, 4, 5]));
        // K_4 has no induced C_4.
        assert_eq!(find_biclique(&Graph::complete(4), 2), None);
        assert!(find_biclique(&Graph::cycle(4), 2).is_some());
    }

    #[test]
    fn induced_examples() {
        assert!(embed_induced(&Graph::cycle(6), &Graph::path(4)).is_some());
        assert!(embed_induced(&Graph::complete(4), &Graph::path(3)).is_none());
        let claw = Graph::complete_bipartite(1, 3);
        assert!(embed_induced(&Graph::complete_bipartite(2, 3), &claw).is_some());
        assert!(embed_induced(&Graph::cycle(6), &claw).is_none());
        assert!(contains_induced(&Graph::complete(12), &Graph::complete(11)).is_err());
    }
}
