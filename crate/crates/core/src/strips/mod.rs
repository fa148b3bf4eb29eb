//! `(T, a)`-strip-structures, pyramids with a trapped apex, and saturation.

mod pyramid;
mod rungs;
mod saturate;
mod structure;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::obstructions::PyramidEmbedding;

pub use pyramid::{
    classify_wrt_pyramid, is_corner_path, is_pyramid_jewel, is_trapped, pyramid_locality,
    PyramidClass, PyramidLocation,
};
pub use rungs::{
    claws_at, eta_pyramids, find_strip_jewels, for_each_branch, jewel_witness, rungs, seagulls,
    Claw, EdgeRungs, JewelIndex, Rung, RungTable, Seagull,
};
pub use saturate::{saturate_strip, Augmentation, Saturation, SaturationError};
pub use structure::{
    edge, locality, validate_strip, Axiom, Edge, LocalIndex, Locality, Place, SmoothTree,
    StripReport, StripStructure, Violation,
};

/// The strip-structure of a long pyramid: a star with centre `0` and leaf
/// `i + 1` for path `P_i`, `η(e_i) = P_i ∖ {a}`, `η(e_i, 0) = {b_i}` and
/// `η(e_i, i + 1)` the neighbour of `a` on `P_i`.
pub fn canonical_pyramid_strip(g: &Graph, sigma: &PyramidEmbedding) -> Result<StripStructure> {
    sigma
        .validate(g)
        .map_err(|e| Error::precondition(format!("not a pyramid: {e}")))?;
    if !sigma.is_long() {
        return Err(Error::precondition("the pyramid is not long"));
    }
    let mut s = StripStructure::new(sigma.apex, SmoothTree::star(3)?);
    for (i, p) in sigma.paths.iter().enumerate() {
        let e = edge(0, i + 1);
        let body: VertexSet = p.vertices()[1..].iter().copied().collect();
        s.emap.insert(e, body);
        s.evmap.insert((e, 0), VertexSet::from([sigma.base[i]]));
        s.evmap.insert((e, i + 1), VertexSet::from([p.vertices()[1]]));
    }
    Ok(s)
}

/// A graph built to carry a tame, substantial, rich strip-structure over
/// `tree`: apex `0`, one induced path with `len` edges per tree edge, the
/// ends at each branch vertex forming a clique, and the apex adjacent to the
/// leaf ends.
pub fn tree_strip(tree: &SmoothTree, len: usize) -> Result<(Graph, StripStructure)> {
    if len == 0 {
        return Err(Error::invalid("rungs need length at least one"));
    }
    let mut b = crate::graph::GraphBuilder::new(1);
    let mut s = StripStructure::new(0, tree.clone());
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); tree.n()];
    for &e in tree.edges() {
        let path: Vec<usize> = (0..=len).map(|_| b.add_vertex()).collect();
        for w in path.windows(2) {
            b.add_edge(w[0], w[1]);
        }
        let (x, y) = (path[0], path[len]);
        s.emap.insert(e, path.iter().copied().collect());
        s.evmap.insert((e, e.0), VertexSet::from([x]));
        s.evmap.insert((e, e.1), VertexSet::from([y]));
        ends[e.0].push(x);
        ends[e.1].push(y);
    }
    for (v, at) in ends.iter().enumerate() {
        if tree.is_leaf(v) {
            b.add_edge(0, at[0]);
        }
        for (i, &x) in at.iter().enumerate() {
            for &y in &at[i + 1..] {
                b.add_edge(x, y);
            }
        }
    }
    Ok((b.build(), s))
}

#[cfg(test)]
mod tests {
    use std::ops::ControlFlow;

    use super::*;
    use crate::generators::make_config;
    use crate::obstructions::{class_obstruction, ConfigKind, Configuration};

    fn pyramid(lengths: [usize; 3]) -> (Graph, PyramidEmbedding) {
        match make_config(ConfigKind::Pyramid, lengths).unwrap() {
            (g, Configuration::Pyramid(p)) => (g, p),
            _ => unreachable!(),
        }
    }

    fn canonical(lengths: [usize; 3]) -> (Graph, PyramidEmbedding, StripStructure) {
        let (g, p) = pyramid(lengths);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        (g, p, s)
    }

    fn e(i: usize) -> Edge {
        edge(0, i)
    }

    #[test]
    fn canonical_strip_is_tame_substantial_rich() {
        let (g, _, s) = canonical([2, 3, 4]);
        let r = validate_strip(&g, &s).unwrap();
        assert!(r.tame && r.substantial && r.rich, "{r:?}");
    }

    #[test]
    fn missing_interface_breaks_s3() {
        let (g, _, mut s) = canonical([2, 2, 2]);
        s.evmap.remove(&(e(1), 1));
        assert_eq!(validate_strip(&g, &s).unwrap_err().axiom, Axiom::S3);
    }

    #[test]
    fn edge_between_far_edges_breaks_s4() {
        let tree = SmoothTree::new(
            Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap(),
        )
        .unwrap();
        let (g, s) = tree_strip(&tree, 2).unwrap();
        assert!(validate_strip(&g, &s).unwrap().all());
        let x = *s.edge_set(edge(0, 1)).iter().max().unwrap();
        let y = *s.edge_set(edge(3, 4)).iter().max().unwrap();
        let mut b = crate::graph::GraphBuilder::from_graph(&g);
        b.add_edge(x, y);
        assert_eq!(validate_strip(&b.build(), &s).unwrap_err().axiom, Axiom::S4);
    }

    #[test]
    fn json_round_trip() {
        let (_, _, s) = canonical([2, 3, 3]);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"0-1@0\""), "{text}");
        let back: StripStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rung_examples() {
        let (g, p, s) = canonical([3, 2, 2]);
        let r = rungs(&g, &s, e(1));
        assert_eq!(r.rungs.len(), 1);
        let mut expect = p.paths[0].vertices()[1..].to_vec();
        expect.reverse();
        assert_eq!(r.rungs[0].path, expect);
        assert!(r.stray.is_empty());

        // A one-vertex η(e) that is both interfaces.
        let g = Graph::from_edges(
            6,
            [(0, 1), (0, 3), (0, 5), (2, 3), (4, 5), (1, 2), (1, 4), (2, 4)],
        )
        .unwrap();
        let mut s = StripStructure::new(0, SmoothTree::star(3).unwrap());
        s.emap.insert(e(1), VertexSet::from([1]));
        s.evmap.insert((e(1), 0), VertexSet::from([1]));
        s.evmap.insert((e(1), 1), VertexSet::from([1]));
        for (i, bi, li) in [(2, 2, 3), (3, 4, 5)] {
            s.emap.insert(e(i), VertexSet::from([bi, li]));
            s.evmap.insert((e(i), 0), VertexSet::from([bi]));
            s.evmap.insert((e(i), i), VertexSet::from([li]));
        }
        validate_strip(&g, &s).unwrap();
        let r = rungs(&g, &s, e(1));
        assert_eq!(r.rungs, vec![Rung { edge: e(1), path: vec![1] }]);
        assert!(!r.rungs[0].is_long());

        // A pendant in η°(e) hanging off the middle of the rung.
        let (g, p, mut s) = canonical([4, 2, 2]);
        let mid = p.paths[0].vertices()[2];
        let g = g.with_vertex(&[mid]);
        let z = g.n() - 1;
        s.emap.get_mut(&e(1)).unwrap().insert(z);
        let report = validate_strip(&g, &s).unwrap();
        assert!(!report.tame);
        assert_eq!(rungs(&g, &s, e(1)).stray, VertexSet::from([z]));
    }

    #[test]
    fn locality_examples() {
        let (_, p, s) = canonical([3, 3, 3]);
        assert!(locality(&s, &VertexSet::new()).unwrap().is_local());
        let in_e1: VertexSet = p.paths[0].vertices()[1..].iter().copied().collect();
        assert_eq!(locality(&s, &in_e1).unwrap(), Locality::Edge { edge: e(1) });
        assert_eq!(
            locality(&s, &VertexSet::from(p.base)).unwrap(),
            Locality::Vertex { vertex: 0 }
        );
        let inner = p.paths[0].vertices()[2];
        let far = p.paths[1].vertices()[1];
        assert_eq!(
            locality(&s, &VertexSet::from([inner, far])).unwrap(),
            Locality::NonlocalPair { x: inner.min(far), y: inner.max(far) }
        );
        assert!(locality(&s, &VertexSet::from([p.apex])).is_err());
    }

    #[test]
    fn lemma_pairs_are_nonlocal() {
        let tree = SmoothTree::new(
            Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap(),
        )
        .unwrap();
        let (_, s) = tree_strip(&tree, 2).unwrap();
        let idx = LocalIndex::new(&s);
        let support: Vec<usize> = s.support().into_iter().collect();
        for mask in 0u32..1 << 10 {
            let x: VertexSet = (0..10).filter(|i| mask >> i & 1 == 1).map(|i| support[i * 3 % support.len()]).collect();
            match locality(&s, &x).unwrap() {
                Locality::NonlocalPair { x: a, y: b } => {
                    assert!(x.contains(&a) && x.contains(&b) && !idx.pair(a, b));
                }
                _ => {
                    let all_pairs_local = x.iter().all(|&a| x.iter().all(|&b| idx.pair(a, b)));
                    assert!(all_pairs_local);
                }
            }
        }
    }

    #[test]
    fn eta_pyramids_of_the_canonical_strip() {
        let (g, p, s) = canonical([2, 3, 4]);
        let claw = claws_at(&s, 0)[0];
        let found = eta_pyramids(&g, &s, claw).unwrap();
        assert_eq!(found, vec![p]);
        let leaf = Claw { center: 1, edges: [e(1), e(2), e(3)] };
        assert!(eta_pyramids(&g, &s, leaf).is_err());
    }

    #[test]
    fn parallel_rungs_give_several_pyramids() {
        // A second rung in η(e_1) through a vertex beside y_3.
        let (g, p, mut s) = canonical([4, 2, 2]);
        let v = p.paths[0].vertices();
        let g = g.with_vertex(&[v[2], v[3], v[4]]);
        let z = g.n() - 1;
        s.emap.get_mut(&e(1)).unwrap().insert(z);
        assert!(validate_strip(&g, &s).unwrap().all());
        let found = eta_pyramids(&g, &s, claws_at(&s, 0)[0]).unwrap();
        assert_eq!(found.len(), 2);
        assert_ne!(found[0].paths[0], found[1].paths[0]);
        for sigma in &found {
            sigma.validate(&g).unwrap();
        }
    }

    #[test]
    fn jewel_index_examples() {
        let (g, p, s) = canonical([3, 3, 3]);
        assert!(find_strip_jewels(&g, &s).is_empty());

        let nbrs = [p.base[0], p.base_neighbor(0), p.base[1], p.base_neighbor(1)];
        let g1 = g.with_vertex(&nbrs);
        let x = g1.n() - 1;
        let index = find_strip_jewels(&g1, &s);
        assert_eq!(index.all(), VertexSet::from([x]));
        assert_eq!(index.by_seagull[&Seagull::new(0, e(1), e(2))], VertexSet::from([x]));

        let g2 = g.with_vertex(&[p.paths[0].vertices()[2]]);
        assert!(find_strip_jewels(&g2, &s).is_empty());
    }

    #[test]
    fn branches_respect_pruning() {
        let (g, _, s) = canonical([4, 4, 4]);
        let table = RungTable::new(&g, &s);
        let mut seen = 0;
        let _ = for_each_branch::<()>(&s, &table, 0, e(1), &mut |b| b.len() <= 5, &mut |_| {
            seen += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(seen, 1);
    }

    #[test]
    fn saturation_fixpoint() {
        let (g, _, s) = canonical([2, 3, 3]);
        let out = saturate_strip(&g, &s).unwrap();
        assert_eq!(out.strip, s);
        assert!(out.augmentations.is_empty() && out.residual.is_empty());
    }

    #[test]
    fn pendant_path_is_absorbed_into_its_edge() {
        let (g, p, s) = canonical([4, 2, 2]);
        let mid = p.paths[0].vertices()[2];
        let g = g.with_vertex(&[mid]);
        let z1 = g.n() - 1;
        let g = g.with_vertex(&[z1]);
        let z2 = g.n() - 1;
        assert!(class_obstruction(&g).is_none());
        let out = saturate_strip(&g, &s).unwrap();
        assert!(out.strip.edge_set(e(1)).is_superset(&VertexSet::from([z1, z2])));
        assert_eq!(out.absorbed_edge["0-1"], vec![vec![z1, z2]]);
        assert!(validate_strip(&g, &out.strip).is_ok());
    }

    #[test]
    fn corner_vertex_grows_the_edge_and_its_interface() {
        // With the whole base, x closes a K_4 rather than a theta.
        let (g, p, s) = canonical([3, 2, 2]);
        let c1 = p.base_neighbor(0);
        let g = g.with_vertex(&[p.base[0], p.base[1], p.base[2], c1]);
        let x = g.n() - 1;
        assert!(class_obstruction(&g).is_none());
        let out = saturate_strip(&g, &s).unwrap();
        assert_eq!(
            out.augmentations,
            vec![Augmentation { edge: e(1), v1: 0, path: vec![x], p2_interface: false }]
        );
        assert!(out.strip.interface(e(1), 0).contains(&x));
        let r = validate_strip(&g, &out.strip).unwrap();
        assert!(r.all());
    }

    #[test]
    fn ineligible_input_is_refused() {
        let (g, _, mut s) = canonical([2, 2, 2]);
        s.evmap.remove(&(e(2), 2));
        assert!(matches!(saturate_strip(&g, &s), Err(SaturationError::NotEligible(_))));
    }
}
