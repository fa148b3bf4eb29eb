//! Invariants checked against brute-force oracles on small random graphs.

use proptest::prelude::*;
use tpfree::generators::make_config;
use tpfree::graph::io::{from_graph6, from_json, to_graph6, to_json};
use tpfree::graph::{menger, treewidth, validate_decomposition, DecompositionReport, MengerOutcome};
use tpfree::obstructions::{ConfigKind, Configuration};
use tpfree::separators::{jewel_bound, ramsey, sigma_bound, Quantity};
use tpfree::strips::{canonical_pyramid_strip, locality, validate_strip, Locality};
use tpfree::{Graph, VertexSet};

fn graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph(n, &b)))
}

fn connected_without(g: &Graph, a: usize, b: usize, removed: u32) -> bool {
    let mut seen = 1u32 << a;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if seen >> w & 1 == 0 && removed >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen >> b & 1 == 1
}

/// Minimum `a`-`b` vertex cut over all subsets.
fn min_cut(g: &Graph, a: usize, b: usize) -> usize {
    (0u32..1 << g.n())
        .filter(|m| m >> a & 1 == 0 && m >> b & 1 == 0)
        .filter(|&m| !connected_without(g, a, b, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Treewidth as the best elimination order over all permutations.
fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    // dp over eliminated sets: best[s] = min width to eliminate s first.
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for s in 0u32..1 << n {
        if best[s as usize] == usize::MAX {
            continue;
        }
        for v in (0..n).filter(|v| s >> v & 1 == 0) {
            // Neighbours of v in the fill graph: vertices outside s ∪ {v}
            // reachable from v through s.
            let mut reach = 0u32;
            let mut seen = 1u32 << v;
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for w in 0..n {
                    if adj[x] >> w & 1 == 1 && seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        if s >> w & 1 == 1 {
                            stack.push(w);
                        } else {
                            reach |= 1 << w;
                        }
                    }
                }
            }
            let t = (s | 1 << v) as usize;
            let w = best[s as usize].max(reach.count_ones() as usize);
            best[t] = best[t].min(w);
        }
    }
    best[(1 << n) - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_and_json_round_trip(g in small_graph(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn menger_matches_the_minimum_cut(g in small_graph(9), k in 1usize..5) {
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                if g.adjacent(a, b) {
                    continue;
                }
                let cut = min_cut(&g, a, b);
                match menger(&g, a, b, k).unwrap() {
                    MengerOutcome::Paths(ps) => {
                        prop_assert!(cut >= k);
                        prop_assert_eq!(ps.len(), k);
                        prop_assert!(ps.validate(&g).is_ok());
                    }
                    MengerOutcome::Separator { set, separation } => {
                        prop_assert!(cut < k && set.len() < k);
                        prop_assert!(separation.verify(&g).is_ok());
                        let m = set.iter().fold(0u32, |m, &v| m | 1 << v);
                        prop_assert!(!connected_without(&g, a, b, m));
                    }
                }
            }
        }
    }

    #[test]
    fn treewidth_matches_elimination_orders(g in small_graph(8)) {
        let r = treewidth(&g).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.width, brute_treewidth(&g));
        let report = validate_decomposition(&g, &r.decomposition);
        let valid = matches!(report, DecompositionReport::Valid { width } if width == r.width);
        prop_assert!(valid);
    }

    #[test]
    fn canonical_pyramid_strips_are_rich(l1 in 2usize..6, l2 in 2usize..6, l3 in 2usize..6) {
        let (g, c) = make_config(ConfigKind::Pyramid, [l1, l2, l3]).unwrap();
        let Configuration::Pyramid(p) = c else { unreachable!() };
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        prop_assert!(validate_strip(&g, &s).unwrap().all());
    }

    #[test]
    fn nonlocal_sets_have_nonlocal_pairs(lengths in [2usize..6, 2usize..6, 2usize..6], pick in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let (g, c) = make_config(ConfigKind::Pyramid, lengths).unwrap();
        let Configuration::Pyramid(p) = c else { unreachable!() };
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let support: Vec<usize> = s.support().into_iter().collect();
        let x: VertexSet = pick.iter().map(|i| *i.get(&support)).collect();
        match locality(&s, &x).unwrap() {
            Locality::NonlocalPair { x: u, y: v } => {
                prop_assert!(x.contains(&u) && x.contains(&v));
                prop_assert!(!locality(&s, &VertexSet::from([u, v])).unwrap().is_local());
            }
            Locality::Edge { edge } => prop_assert!(x.is_subset(s.edge_set(edge))),
            Locality::Vertex { vertex } => {
                let mut around = s.bag(vertex);
                around.extend(s.vertex_set(vertex));
                prop_assert!(x.is_subset(&around));
            }
        }
    }
}

#[test]
fn small_constants() {
    assert_eq!(ramsey(3, 3), Quantity::exact(6));
    assert_eq!(ramsey(3, 4), Quantity::exact(9));
    // C(3, 2) · R(3, 3) and 2δ(j + t).
    assert_eq!(jewel_bound(3, 3), Quantity::exact(3 * 6));
    assert_eq!(sigma_bound(3, 3), Quantity::exact(2 * 3 * (18 + 3)));
}
