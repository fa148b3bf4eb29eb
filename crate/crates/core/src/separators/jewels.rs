//! Where jewels of a strip-structure attach, and how cliquish the bags are.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSet};
use crate::obstructions::{class_obstruction_in, Obstruction, ThetaEmbedding};
use crate::strips::{jewel_witness, Edge, JewelIndex, RungTable, Seagull, StripStructure};

/// Above this many vertices the obstruction search after a violation is
/// skipped.
pub const WITNESS_SEARCH_CAP: usize = 28;

pub(crate) fn obstruction_within(g: &Graph, within: &VertexSet) -> Option<Obstruction> {
    if within.len() > WITNESS_SEARCH_CAP {
        return None;
    }
    class_obstruction_in(g, within)
}

/// `ζ_e(u)`: the components `D` of `ζ(u)` with `N_{B(u)}(D) ⊆ ζ(e, u)`.
pub fn vertex_region(g: &Graph, s: &StripStructure, e: Edge, u: usize) -> VertexSet {
    let zu = s.vertex_set(u);
    let bag = s.bag(u);
    let iface = s.interface(e, u);
    let mut out = VertexSet::new();
    for comp in g.components_within(&g.bits_of(zu)) {
        let attaches_elsewhere = comp
            .iter()
            .flat_map(|&x| g.neighbors(x).iter())
            .any(|y| bag.contains(y) && !iface.contains(y));
        if !attaches_elsewhere {
            out.extend(comp);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentRegion {
    pub seagull: Seagull,
    /// `ζ(v, e_1, e_2)`.
    pub region: VertexSet,
}

fn check_seagull(s: &StripStructure, sg: &Seagull) -> Result<()> {
    let v = sg.center;
    if v >= s.tree.n() {
        return Err(Error::invalid(format!("tree vertex {v} out of range")));
    }
    let [e1, e2] = sg.edges;
    for e in [e1, e2] {
        if !s.tree.has_edge(e) || (e.0 != v && e.1 != v) {
            return Err(Error::invalid(format!("{e:?} is not a tree edge at {v}")));
        }
    }
    if e1 == e2 {
        return Err(Error::invalid("a seagull needs two distinct edges"));
    }
    Ok(())
}

/// `ζ(e_1) ∪ ζ(e_2) ∪ ζ_{e_1}(u_1) ∪ ζ_{e_2}(u_2) ∪ ζ(v)`.
pub fn attachment_region(g: &Graph, s: &StripStructure, seagull: Seagull) -> Result<AttachmentRegion> {
    check_seagull(s, &seagull)?;
    let v = seagull.center;
    let mut region = s.vertex_set(v).clone();
    for e in seagull.edges {
        region.extend(s.edge_set(e));
        region.extend(vertex_region(g, s, e, s.tree.other_end(e, v)));
    }
    Ok(AttachmentRegion { seagull, region })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JewelFault {
    /// A neighbour in `ζ⁺(T)` outside the attachment region.
    Containment {
        seagull: Seagull,
        jewel: usize,
        neighbor: usize,
    },
    /// A jewel listed at two tree vertices.
    Overlap { jewel: usize, centers: [usize; 2] },
    /// A long rung of `e_1` or `e_2` met in a pattern other than `{r, r'}`.
    RungContact {
        seagull: Seagull,
        jewel: usize,
        rung: Vec<usize>,
        contact: VertexSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JewelViolation {
    pub fault: JewelFault,
    /// A theta or prism near the fault, when the search found one.
    pub witness: Option<Obstruction>,
}

fn shortest_within(g: &Graph, from: usize, to: usize, allowed: &VertexSet) -> Option<Vec<usize>> {
    let mut target = g.bits();
    target.insert(to);
    g.shortest_path_through(from, &target, &g.bits_of(allowed))
}

/// Checks, for every jewel in `index`, that its neighbours in `ζ⁺(T)` lie in
/// the attachment region of its seagull, that no jewel sits at two tree
/// vertices, and that every long rung of `e_1` and `e_2` is either missed or
/// met exactly in its first two vertices counted from `v`.
pub fn verify_jewel_locality(
    g: &Graph,
    s: &StripStructure,
    index: &JewelIndex,
) -> std::result::Result<(), JewelViolation> {
    let plus = s.support_plus();
    let table = RungTable::new(g, s);
    let mut center_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (&sg, jewels) in &index.by_seagull {
        let v = sg.center;
        let region = match attachment_region(g, s, sg) {
            Ok(r) => r.region,
            Err(_) => VertexSet::new(),
        };
        for &x in jewels {
            if let Some(&w) = center_of.get(&x).filter(|&&w| w != v) {
                return Err(JewelViolation {
                    fault: JewelFault::Overlap { jewel: x, centers: [w, v] },
                    witness: None,
                });
            }
            center_of.insert(x, v);
            // Search near the witness pyramid when x still has one, else in
            // all of ζ⁺(T).
            let sv = jewel_witness(g, s, &table, sg, x)
                .map(|p| p.vertices())
                .unwrap_or_else(|| plus.clone());
            if let Some(&y) = g.neighbors_in(x, &plus).iter().find(|y| !region.contains(y)) {
                // A path from y back to the apex avoiding the rest of N(x)
                // closes the third route of a theta at a and x.
                let mut allowed = plus.clone();
                for w in g.neighbors(x) {
                    allowed.remove(w);
                }
                let mut within = sv.clone();
                within.insert(x);
                within.insert(y);
                if let Some(p) = shortest_within(g, y, s.apex, &allowed) {
                    within.extend(p);
                }
                return Err(JewelViolation {
                    fault: JewelFault::Containment { seagull: sg, jewel: x, neighbor: y },
                    witness: obstruction_within(g, &within),
                });
            }
            for e in sg.edges {
                for rung in table.get(e).rungs.iter().filter(|r| r.is_long()) {
                    let path = rung.from_end(v);
                    let rset: VertexSet = path.iter().copied().collect();
                    let contact = g.neighbors_in(x, &rset);
                    if contact.is_empty() || contact == VertexSet::from([path[0], path[1]]) {
                        continue;
                    }
                    let mut within = sv.clone();
                    within.extend(&rset);
                    within.insert(x);
                    return Err(JewelViolation {
                        fault: JewelFault::RungContact { seagull: sg, jewel: x, rung: path, contact },
                        witness: obstruction_within(g, &within),
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueDefect {
    /// Edges `f` at `v` with `ζ(f, v)` not a clique.
    pub edges: Vec<Edge>,
    /// With two or more such edges: a theta built from two non-edges and a
    /// path around the far side of the first edge.
    pub witness: Option<Obstruction>,
}

fn non_edge(g: &Graph, set: &VertexSet) -> Option<(usize, usize)> {
    set.iter().find_map(|&x| {
        set.range(x + 1..)
            .find(|&&y| !g.adjacent(x, y))
            .map(|&y| (x, y))
    })
}

pub fn bag_clique_defect(g: &Graph, s: &StripStructure, v: usize) -> Result<CliqueDefect> {
    if v >= s.tree.n() {
        return Err(Error::invalid(format!("tree vertex {v} out of range")));
    }
    let edges: Vec<Edge> = s
        .tree
        .incident(v)
        .into_iter()
        .filter(|&f| !g.is_clique(s.interface(f, v).iter()))
        .collect();
    let witness = if edges.len() >= 2 {
        defect_theta(g, s, v, edges[0], edges[1])
    } else {
        None
    };
    Ok(CliqueDefect { edges, witness })
}

/// Ends `x_1, y_1` (a non-edge of `ζ(f_1, v)`), two short paths through a
/// non-edge `x_2, y_2` of `ζ(f_2, v)`, and a path from `x_1` to `y_1` through
/// `(B(u_1) ∪ ζ(f_1)) ∖ B(v)`.
fn defect_theta(g: &Graph, s: &StripStructure, v: usize, f1: Edge, f2: Edge) -> Option<Obstruction> {
    let (x1, y1) = non_edge(g, s.interface(f1, v))?;
    let (x2, y2) = non_edge(g, s.interface(f2, v))?;
    let u1 = s.tree.other_end(f1, v);
    let bag_v = s.bag(v);
    let mut around: VertexSet = s.bag(u1).union(s.edge_set(f1)).copied().collect();
    around.retain(|x| !bag_v.contains(x));
    let q = shortest_within(g, x1, y1, &around)?;
    let theta = ThetaEmbedding {
        ends: [x1, y1],
        paths: [
            Path::new(g, q.clone()).ok()?,
            Path::new(g, vec![x1, x2, y1]).ok()?,
            Path::new(g, vec![x1, y2, y1]).ok()?,
        ],
    };
    if theta.validate(g).is_ok() {
        return Some(Obstruction::Theta(theta));
    }
    let within: VertexSet = q.into_iter().chain([x2, y2]).collect();
    obstruction_within(g, &within)
}

/// Jewels at non-adjacent tree vertices joined by a path outside `ζ⁺(T)`
/// whose interior is anticomplete to `ζ⁺(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistantJewels {
    pub jewels: [usize; 2],
    pub centers: [usize; 2],
    pub path: Vec<usize>,
}

pub fn check_distant_jewels(
    g: &Graph,
    s: &StripStructure,
    index: &JewelIndex,
) -> std::result::Result<(), DistantJewels> {
    let plus = s.support_plus();
    let free: VertexSet = (0..g.n())
        .filter(|x| !plus.contains(x) && !g.neighbors(*x).iter().any(|y| plus.contains(y)))
        .collect();
    let through = g.bits_of(&free);
    let at: Vec<(usize, VertexSet)> = (0..s.tree.n())
        .map(|v| (v, index.at_vertex(v)))
        .filter(|(_, j)| !j.is_empty())
        .collect();
    for (i, (v, jv)) in at.iter().enumerate() {
        for (w, jw) in &at[i + 1..] {
            if s.tree.has_edge(crate::strips::edge(*v, *w)) {
                continue;
            }
            let targets = g.bits_of(jw);
            for &x in jv {
                if let Some(path) = g.shortest_path_through(x, &targets, &through) {
                    let y = *path.last().unwrap();
                    return Err(DistantJewels {
                        jewels: [x, y],
                        centers: [*v, *w],
                        path,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_config;
    use crate::graph::GraphBuilder;
    use crate::obstructions::{search_theta, ConfigKind, Configuration, PyramidEmbedding};
    use crate::strips::{canonical_pyramid_strip, edge, find_strip_jewels};

    fn pyramid(lengths: [usize; 3]) -> (Graph, PyramidEmbedding) {
        match make_config(ConfigKind::Pyramid, lengths).unwrap() {
            (g, Configuration::Pyramid(p)) => (g, p),
            _ => unreachable!(),
        }
    }

    #[test]
    fn canonical_region_is_two_paths() {
        let (g, p) = pyramid([3, 3, 3]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let r = attachment_region(&g, &s, Seagull::new(0, edge(0, 1), edge(0, 2))).unwrap();
        let expected: VertexSet = p.paths[0].vertices()[1..]
            .iter()
            .chain(&p.paths[1].vertices()[1..])
            .copied()
            .collect();
        assert_eq!(r.region, expected);
        assert!(attachment_region(&g, &s, Seagull::new(1, edge(0, 1), edge(0, 2))).is_err());
        assert!(attachment_region(&g, &s, Seagull::new(0, edge(0, 1), edge(0, 1))).is_err());
    }

    #[test]
    fn vertex_components_follow_their_attachments() {
        // Star strip with ζ(1) made of two blobs hanging off the leaf
        // interface of edge 0-1; one also touches nothing else, the other is
        // moved to touch a different bag vertex.
        let (g, p) = pyramid([3, 3, 3]);
        let mut s = canonical_pyramid_strip(&g, &p).unwrap();
        let leaf_iface = p.paths[0].vertices()[1];
        let mut b = GraphBuilder::from_graph(&g);
        let d1 = b.add_vertex();
        b.add_edge(d1, leaf_iface);
        let g2 = b.build();
        s.vmap.insert(1, VertexSet::from([d1]));
        assert_eq!(vertex_region(&g2, &s, edge(0, 1), 1), VertexSet::from([d1]));
        let r = attachment_region(&g2, &s, Seagull::new(0, edge(0, 1), edge(0, 2))).unwrap();
        assert!(r.region.contains(&d1));

        // At the centre, a component touching two interfaces belongs to
        // neither edge's region.
        let mut b = GraphBuilder::from_graph(&g);
        let d = b.add_vertex();
        b.add_edge(d, p.base[0]).add_edge(d, p.base[1]);
        let g3 = b.build();
        let mut s3 = canonical_pyramid_strip(&g, &p).unwrap();
        s3.vmap.insert(0, VertexSet::from([d]));
        assert!(vertex_region(&g3, &s3, edge(0, 1), 0).is_empty());
        let mut b = GraphBuilder::from_graph(&g);
        let d = b.add_vertex();
        b.add_edge(d, p.base[0]);
        let g4 = b.build();
        assert_eq!(vertex_region(&g4, &s3, edge(0, 1), 0), VertexSet::from([d]));
    }

    fn jewel_host() -> (Graph, StripStructure, PyramidEmbedding, usize) {
        let (g, p) = pyramid([4, 4, 4]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let nbrs = [p.base[0], p.base_neighbor(0), p.base[1], p.base_neighbor(1)];
        let x = g.n();
        (g.with_vertex(&nbrs), s, p, x)
    }

    #[test]
    fn constructed_jewel_is_local() {
        let (g, s, p, x) = jewel_host();
        let index = find_strip_jewels(&g, &s);
        assert_eq!(index.at_vertex(0), VertexSet::from([x]));
        verify_jewel_locality(&g, &s, &index).unwrap();
        for i in 0..2 {
            let rung: VertexSet = p.paths[i].vertices()[1..].iter().copied().collect();
            assert_eq!(
                g.neighbors_in(x, &rung),
                VertexSet::from([p.base[i], p.base_neighbor(i)])
            );
        }
        check_distant_jewels(&g, &s, &index).unwrap();
        verify_jewel_locality(&g, &s, &JewelIndex::default()).unwrap();
    }

    #[test]
    fn mid_rung_contact_is_reported() {
        let (g, s, p, x) = jewel_host();
        let index = find_strip_jewels(&g, &s);
        let mid = p.paths[0].vertices()[2];
        let mut b = GraphBuilder::from_graph(&g);
        b.add_edge(x, mid);
        let g2 = b.build();
        let err = verify_jewel_locality(&g2, &s, &index).unwrap_err();
        assert!(matches!(err.fault, JewelFault::RungContact { jewel, .. } if jewel == x));
        let w = err.witness.expect("the host has a theta");
        w.validate(&g2).unwrap();
        assert!(search_theta(&g2).is_some());
    }

    #[test]
    fn far_neighbour_breaks_containment() {
        let (g, s, p, x) = jewel_host();
        let index = find_strip_jewels(&g, &s);
        let far = p.paths[2].vertices()[1];
        let mut b = GraphBuilder::from_graph(&g);
        b.add_edge(x, far);
        let g2 = b.build();
        let err = verify_jewel_locality(&g2, &s, &index).unwrap_err();
        assert_eq!(
            err.fault,
            JewelFault::Containment {
                seagull: Seagull::new(0, edge(0, 1), edge(0, 2)),
                jewel: x,
                neighbor: far
            }
        );
    }

    #[test]
    fn clique_defects() {
        let (g, p) = pyramid([3, 3, 3]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        assert!(bag_clique_defect(&g, &s, 0).unwrap().edges.is_empty());

        // Widen ζ(e_1, 0) by a second vertex w non-adjacent to b_1, on its
        // own rung to the leaf interface.
        let [b1, b2, b3] = p.base;
        let c1 = p.base_neighbor(0);
        let mut b = GraphBuilder::from_graph(&g);
        let w = b.add_vertex();
        b.add_edge(w, b2).add_edge(w, b3).add_edge(w, c1);
        let g1 = b.build();
        let mut s1 = s.clone();
        s1.emap.get_mut(&edge(0, 1)).unwrap().insert(w);
        s1.evmap.get_mut(&(edge(0, 1), 0)).unwrap().insert(w);
        let d = bag_clique_defect(&g1, &s1, 0).unwrap();
        assert_eq!(d.edges, vec![edge(0, 1)]);
        assert!(d.witness.is_none());
        assert!(!g1.adjacent(w, b1));

        // A second widened interface: the 4-hole through the two non-edges
        // and the far side of e_1 form a theta.
        let c2 = p.base_neighbor(1);
        let mut b = GraphBuilder::from_graph(&g1);
        let w2 = b.add_vertex();
        b.add_edge(w2, b1).add_edge(w2, w).add_edge(w2, b3).add_edge(w2, c2);
        let g2 = b.build();
        let mut s2 = s1.clone();
        s2.emap.get_mut(&edge(0, 2)).unwrap().insert(w2);
        s2.evmap.get_mut(&(edge(0, 2), 0)).unwrap().insert(w2);
        let d = bag_clique_defect(&g2, &s2, 0).unwrap();
        assert_eq!(d.edges, vec![edge(0, 1), edge(0, 2)]);
        let theta = d.witness.expect("theta from the two non-edges");
        theta.validate(&g2).unwrap();
    }

    #[test]
    fn jewels_at_far_vertices_joined_outside_are_reported() {
        use crate::strips::{tree_strip, SmoothTree};
        // Caterpillar with two branch vertices 1 and 2 joined by an edge, and
        // a longer one with branch vertices 1, 2 and 3 in a row.
        let t = SmoothTree::new(
            Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (3, 7)]).unwrap(),
        )
        .unwrap();
        let (g, s) = tree_strip(&t, 2).unwrap();
        let table = RungTable::new(&g, &s);
        // A jewel at tree vertex 1 for the seagull (1; 1-0, 1-4) and one at
        // tree vertex 3 for (3; 3-6, 3-7), joined by a two-vertex path.
        let jewel_at = |sg: Seagull| {
            let mut nbrs = Vec::new();
            for e in sg.edges {
                let r = &table.get(e).rungs[0];
                let p = r.from_end(sg.center);
                nbrs.extend([p[0], p[1]]);
            }
            nbrs
        };
        let j1 = jewel_at(Seagull::new(1, edge(0, 1), edge(1, 4)));
        let j3 = jewel_at(Seagull::new(3, edge(3, 6), edge(3, 7)));
        let mut b = GraphBuilder::from_graph(&g);
        let x = b.add_vertex();
        let y = b.add_vertex();
        let m = b.add_vertex();
        j1.iter().for_each(|&v| {
            b.add_edge(x, v);
        });
        j3.iter().for_each(|&v| {
            b.add_edge(y, v);
        });
        b.add_edge(x, m).add_edge(m, y);
        let g2 = b.build();
        let index = find_strip_jewels(&g2, &s);
        assert!(index.at_vertex(1).contains(&x));
        assert!(index.at_vertex(3).contains(&y));
        let err = check_distant_jewels(&g2, &s, &index).unwrap_err();
        assert_eq!(err.path, vec![x, m, y]);
        assert_eq!(err.centers, [1, 3]);
    }
}
