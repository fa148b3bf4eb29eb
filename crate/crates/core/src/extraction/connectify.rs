//! Brute-force search for the connectifier outcomes on small graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::separators::{is_caterpillar, root_tree};

pub const CONNECTIFY_MAX_N: usize = 20;
pub const CONNECTIFY_MAX_H: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Path,
    Caterpillar,
    LineGraphOfCaterpillar,
    SubdividedStar,
}

/// An induced subgraph `H` of one of the four shapes. For a path the
/// vertices are listed in path order, otherwise ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectifierWitness {
    pub shape: Shape,
    pub vertices: Vec<usize>,
    pub hits: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
}

/// Looks for an induced path through `h` vertices of `s` first, then for
/// the smallest induced subdivided star, caterpillar, line graph of a caterpillar or
/// subdivided star meeting `s` in exactly `h` vertices. `None` means no such
/// subgraph exists in `g` at all.
pub fn connectify(g: &Graph, s: &VertexSet, h: usize) -> Result<Option<ConnectifierWitness>> {
    if g.n() > CONNECTIFY_MAX_N {
        return Err(Error::CapExceeded { what: "connectify host", size: g.n(), cap: CONNECTIFY_MAX_N });
    }
    if h > CONNECTIFY_MAX_H {
        return Err(Error::CapExceeded { what: "connectify h", size: h, cap: CONNECTIFY_MAX_H });
    }
    if h == 0 {
        return Err(Error::invalid("h must be positive"));
    }
    g.check_vertices(s)?;
    if !g.is_connected() {
        return Err(Error::precondition("G must be connected"));
    }
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let smask = s.iter().fold(0u32, |m, &v| m | 1 << v);

    for k in 1..=n {
        let hit = for_each_subset(n, k, |mask| {
            if (mask & smask).count_ones() as usize != h || !is_path_mask(&adj, mask) {
                return None;
            }
            Some(path_order(&adj, mask))
        });
        if let Some(order) = hit {
            return Ok(Some(ConnectifierWitness {
                shape: Shape::Path,
                hits: order.iter().filter(|v| s.contains(v)).copied().collect(),
                vertices: order,
                root: None,
            }));
        }
    }
    for k in 2..=n {
        let hit = for_each_subset(n, k, |mask| {
            if (mask & smask).count_ones() as usize != h || !connected_mask(&adj, mask) {
                return None;
            }
            let vertices = bits(mask);
            let hits: VertexSet = vertices.iter().filter(|v| s.contains(v)).copied().collect();
            classify(g, &vertices, &hits).map(|(shape, root)| ConnectifierWitness {
                shape,
                vertices,
                hits,
                root,
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Re-checks a witness against `g`, `s` and `h` from scratch.
pub fn validate_connectified(
    g: &Graph,
    s: &VertexSet,
    h: usize,
    w: &ConnectifierWitness,
) -> std::result::Result<(), String> {
    g.check_vertices(&w.vertices).map_err(|e| e.to_string())?;
    let hits: VertexSet = w.vertices.iter().filter(|v| s.contains(v)).copied().collect();
    if hits != w.hits || hits.len() != h {
        return Err(format!("H meets S in {hits:?}, expected {h} vertices"));
    }
    if w.shape == Shape::Path {
        return if g.is_induced_path(&w.vertices) {
            Ok(())
        } else {
            Err("not an induced path".into())
        };
    }
    let mut sorted = w.vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != w.vertices.len() {
        return Err("repeated vertices".into());
    }
    match classify(g, &sorted, &hits) {
        Some((shape, root)) if shape == w.shape && root == w.root => Ok(()),
        Some((Shape::SubdividedStar, _)) if w.shape == Shape::Caterpillar => {
            // A subdivided star of maximum degree three is also a caterpillar.
            let hh = g.induced(&sorted);
            let z: VertexSet = hh.simplicial_set().into_iter().map(|i| sorted[i]).collect();
            if is_caterpillar(&hh) && hits == z {
                Ok(())
            } else {
                Err("not a caterpillar with H ∩ S = Z(H)".into())
            }
        }
        other => Err(format!("H has shape {other:?}, not {:?}", w.shape)),
    }
}

/// Shape of the connected induced subgraph on `vertices` (ascending) with
/// `hits = H ∩ S`, paths excluded.
fn classify(g: &Graph, vertices: &[usize], hits: &VertexSet) -> Option<(Shape, Option<usize>)> {
    let hh = g.induced(vertices);
    let simplicial: VertexSet = hh.simplicial_set().into_iter().map(|i| vertices[i]).collect();
    if hh.is_tree() {
        if hh.max_degree() <= 2 {
            return None;
        }
        if let Some(r) = star_shape(&hh, vertices, hits) {
            return Some((Shape::SubdividedStar, Some(r)));
        }
        return (is_caterpillar(&hh) && *hits == simplicial).then_some((Shape::Caterpillar, None));
    }
    let (nodes, ends) = root_tree(&hh).ok()?;
    let mut b = GraphBuilder::new(nodes);
    for &(x, y) in &ends {
        b.add_edge(x, y);
    }
    (is_caterpillar(&b.build()) && *hits == simplicial).then_some((Shape::LineGraphOfCaterpillar, None))
}

/// The root of a subdivided star with `𝒵(H) ⊆ hits ⊆ 𝒵(H) ∪ {r}`.
fn star_shape(hh: &Graph, vertices: &[usize], hits: &VertexSet) -> Option<usize> {
    let branch: Vec<usize> = (0..hh.n()).filter(|&v| hh.degree(v) > 2).collect();
    let [r] = branch[..] else { return None };
    let root = vertices[r];
    let leaves: VertexSet = (0..hh.n()).filter(|&v| hh.degree(v) == 1).map(|v| vertices[v]).collect();
    let within = hits.iter().all(|v| leaves.contains(v) || *v == root);
    (hh.is_tree() && leaves.is_subset(hits) && within).then_some(root)
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

fn connected_mask(adj: &[u32], mask: u32) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

fn is_path_mask(adj: &[u32], mask: u32) -> bool {
    let mut edges = 0;
    for v in bits(mask) {
        let d = (adj[v] & mask).count_ones();
        if d > 2 {
            return false;
        }
        edges += d;
    }
    edges / 2 + 1 == mask.count_ones() && connected_mask(adj, mask)
}

fn path_order(adj: &[u32], mask: u32) -> Vec<usize> {
    let vs = bits(mask);
    let start = *vs.iter().find(|&&v| (adj[v] & mask).count_ones() <= 1).unwrap();
    let mut order = vec![start];
    let mut used = 1u32 << start;
    while let Some(&last) = order.last() {
        let next = adj[last] & mask & !used;
        if next == 0 {
            break;
        }
        let w = next.trailing_zeros() as usize;
        used |= 1 << w;
        order.push(w);
    }
    order
}

/// Visits `k`-subsets of `0..n` in increasing numeric order of their masks.
fn for_each_subset<T>(n: usize, k: usize, mut f: impl FnMut(u32) -> Option<T>) -> Option<T> {
    if k == 0 || k > n {
        return None;
    }
    let limit = 1u64 << n;
    let mut mask: u64 = (1 << k) - 1;
    while mask < limit {
        if let Some(t) = f(mask as u32) {
            return Some(t);
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{line_graph, subdivide_each_edge, CaterpillarSpec};

    fn set(v: impl IntoIterator<Item = usize>) -> VertexSet {
        v.into_iter().collect()
    }

    #[test]
    fn long_path_gives_a_path() {
        let g = Graph::path(12);
        let s = set([1, 5, 9]);
        let w = connectify(&g, &s, 3).unwrap().unwrap();
        assert_eq!(w.shape, Shape::Path);
        assert_eq!(w.vertices, (1..=9).collect::<Vec<_>>());
        validate_connectified(&g, &s, 3, &w).unwrap();
    }

    #[test]
    fn subdivided_star_on_its_leaves() {
        let star = subdivide_each_edge(&Graph::complete_bipartite(1, 4), 1);
        let leaves: VertexSet = (0..star.n()).filter(|&v| star.degree(v) == 1).collect();
        let w = connectify(&star, &leaves, 3).unwrap().unwrap();
        assert_eq!(w.shape, Shape::SubdividedStar);
        assert_eq!(w.root, Some(0));
        assert_eq!(w.vertices.len(), 7);
        validate_connectified(&star, &leaves, 3, &w).unwrap();
    }

    #[test]
    fn line_graph_of_a_caterpillar() {
        let c = "L.L".parse::<CaterpillarSpec>().unwrap().build();
        let g = line_graph(&c).unwrap();
        let z = g.simplicial_set();
        let w = connectify(&g, &z, 3).unwrap().unwrap();
        assert_eq!(w.shape, Shape::LineGraphOfCaterpillar);
        assert_eq!(w.hits.len(), 3);
        assert!(w.hits.is_subset(&z));
        validate_connectified(&g, &z, 3, &w).unwrap();
    }

    #[test]
    fn caterpillar_when_branches_are_spread() {
        let c = "LL".parse::<CaterpillarSpec>().unwrap().build();
        let leaves: VertexSet = (0..c.n()).filter(|&v| c.degree(v) == 1).collect();
        let w = connectify(&c, &leaves, 4).unwrap().unwrap();
        assert_eq!(w.shape, Shape::Caterpillar);
        validate_connectified(&c, &leaves, 4, &w).unwrap();
    }

    #[test]
    fn insufficient_and_caps() {
        let g = Graph::path(4);
        assert_eq!(connectify(&g, &set([0, 3]), 3).unwrap(), None);
        assert!(matches!(
            connectify(&Graph::path(21), &set([0]), 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(connectify(&g, &set([0]), 5), Err(Error::CapExceeded { .. })));
        let split = Graph::empty(2);
        assert!(matches!(connectify(&split, &set([0]), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let g = Graph::path(12);
        let s = set([1, 5, 9]);
        let mut w = connectify(&g, &s, 3).unwrap().unwrap();
        w.vertices.swap(0, 1);
        assert!(validate_connectified(&g, &s, 3, &w).is_err());
    }
}
