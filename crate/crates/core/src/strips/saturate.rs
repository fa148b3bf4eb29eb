//! Growing a tame, substantial, rich strip-structure until everything outside
//! it and its jewels is anticomplete to it.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use super::rungs::{find_strip_jewels, JewelIndex};
use super::structure::{validate_strip, Edge, LocalIndex, StripStructure};
use crate::graph::{Graph, Relation, VertexSet};
use crate::obstructions::{class_obstruction_in, Obstruction};

/// One step of the growth loop: `P` joins `η(f)`, `p_1` joins `η(f, v1)` and,
/// when `p2_interface`, `p_2` joins `η(f, v2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub edge: Edge,
    pub v1: usize,
    /// `p_1` first.
    pub path: Vec<usize>,
    pub p2_interface: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Saturation {
    pub strip: StripStructure,
    pub jewels: JewelIndex,
    pub augmentations: Vec<Augmentation>,
    /// Components absorbed into `ζ(v)`, by tree vertex.
    pub absorbed_vertex: BTreeMap<usize, Vec<Vec<usize>>>,
    /// Components absorbed into `ζ(e)`, by tree edge.
    pub absorbed_edge: BTreeMap<String, Vec<Vec<usize>>>,
    /// `G ∖ (ζ⁺(T) ∪ 𝒥_ζ)`.
    pub residual: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum SaturationError {
    #[error("input is not a tame, substantial and rich strip-structure: {0}")]
    NotEligible(String),
    /// A step of the case analysis failed; the host is outside the class.
    #[error("{stage}: the host contains an obstruction")]
    Obstruction { stage: String, witness: Obstruction },
    #[error("{stage}: {detail}")]
    Failed { stage: String, detail: String },
}

type Res<T> = std::result::Result<T, SaturationError>;

fn fail<T>(g: &Graph, s: &StripStructure, extra: &[usize], stage: &str, detail: String) -> Res<T> {
    let mut within = s.support_plus();
    within.extend(extra);
    Err(match class_obstruction_in(g, &within) {
        Some(witness) => SaturationError::Obstruction {
            stage: stage.into(),
            witness,
        },
        None => SaturationError::Failed {
            stage: stage.into(),
            detail,
        },
    })
}

/// Neighbours of `x` inside `η(T)`.
fn attachments(g: &Graph, support: &VertexSet, x: usize) -> Vec<usize> {
    g.neighbors(x).iter().copied().filter(|y| support.contains(y)).collect()
}

struct Violating {
    path: Vec<usize>,
    x: [usize; 2],
}

/// A shortest path `P` of `G[M]` whose ends see a nonlocal pair, choosing the
/// lexicographically least end pair among the shortest, then the least
/// attachment pair.
fn minimal_violating_path(g: &Graph, s: &StripStructure, m: &FixedBitSet) -> Option<Violating> {
    let support = s.support();
    let idx = LocalIndex::new(s);
    let att: BTreeMap<usize, Vec<usize>> = m
        .ones()
        .map(|p| (p, attachments(g, &support, p)))
        .filter(|(_, a)| !a.is_empty())
        .collect();
    let nonlocal = |a: &[usize], b: &[usize]| {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !idx.pair(x, y))
    };
    let mut best: Option<(usize, usize, usize, (usize, usize))> = None;
    for (&p1, a1) in &att {
        let dist = bfs(g, m, p1);
        for (&p2, a2) in att.range(p1..) {
            let Some(d) = dist[p2] else { continue };
            if best.is_some_and(|b| d >= b.0) {
                continue;
            }
            if let Some(pair) = nonlocal(a1, a2) {
                best = Some((d, p1, p2, pair));
            }
        }
    }
    let (_, p1, p2, (x1, x2)) = best?;
    Some(Violating {
        path: shortest_path(g, m, p1, p2),
        x: [x1, x2],
    })
}

fn bfs(g: &Graph, m: &FixedBitSet, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if m.contains(w) && dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

fn shortest_path(g: &Graph, m: &FixedBitSet, s: usize, t: usize) -> Vec<usize> {
    let mut target = g.bits();
    target.insert(t);
    g.shortest_path_through(s, &target, m)
        .expect("t is reachable from s inside M")
}

/// An edge `f = v1 v2` and an end order with
/// `x_1 ∈ B(v1) ∖ η(f)` and `x_2 ∈ (B(v2) ∪ η(f)) ∖ B(v1)`. Returns
/// `(f, v1, swapped)`.
fn locate_edge(s: &StripStructure, x: [usize; 2]) -> Option<(Edge, usize, bool)> {
    for swapped in [false, true] {
        let (x1, x2) = if swapped { (x[1], x[0]) } else { (x[0], x[1]) };
        for &f in s.tree.edges() {
            for (v1, v2) in [(f.0, f.1), (f.1, f.0)] {
                let b1 = s.bag(v1);
                let in_f = |y: &usize| s.edge_set(f).contains(y);
                if b1.contains(&x1) && !in_f(&x1) && (s.bag(v2).contains(&x2) || in_f(&x2)) && !b1.contains(&x2) {
                    return Some((f, v1, swapped));
                }
            }
        }
    }
    None
}

fn eligible(g: &Graph, s: &StripStructure) -> Res<()> {
    match validate_strip(g, s) {
        Ok(r) if r.all() => Ok(()),
        Ok(r) => Err(SaturationError::NotEligible(format!(
            "tame={}, substantial={}, rich={}",
            r.tame, r.substantial, r.rich
        ))),
        Err(v) => Err(SaturationError::NotEligible(v.to_string())),
    }
}

fn outside(g: &Graph, s: &StripStructure, jewels: &VertexSet) -> FixedBitSet {
    let plus = s.support_plus();
    let mut m = g.bits();
    for x in 0..g.n() {
        if !plus.contains(&x) && !jewels.contains(&x) {
            m.insert(x);
        }
    }
    m
}

/// One augmentation, or `None` when no violating path remains.
fn grow_once(g: &Graph, s: &mut StripStructure) -> Res<Option<Augmentation>> {
    let jewels = find_strip_jewels(g, s).all();
    let m = outside(g, s, &jewels);
    let Some(Violating { mut path, x }) = minimal_violating_path(g, s, &m) else {
        return Ok(None);
    };
    let Some((f, v1, swapped)) = locate_edge(s, x) else {
        return fail(g, s, &path, "edge location", format!("no edge fits the pair {x:?}"));
    };
    if swapped {
        path.reverse();
    }
    let v2 = s.tree.other_end(f, v1);
    let (p1, p2) = (path[0], *path.last().unwrap());
    let support = s.support();
    let (b1, b2) = (s.bag(v1), s.bag(v2));

    let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
    let inner_ok = interior
        .iter()
        .flat_map(|&q| attachments(g, &support, q))
        .all(|y| s.interface(f, v1).contains(&y));
    let ends_ok = [p1, p2]
        .iter()
        .flat_map(|&q| attachments(g, &support, q))
        .all(|y| s.edge_set(f).contains(&y) || b1.contains(&y) || b2.contains(&y));
    if !inner_ok || !ends_ok {
        return fail(g, s, &path, "attachment containment", "attachments escape η(f) ∪ B(v1) ∪ B(v2)".into());
    }

    let minus = |b: &VertexSet| -> VertexSet { b.difference(s.edge_set(f)).copied().collect() };
    let (r1, r2) = (minus(&b1), minus(&b2));
    let rel = |p: usize, r: &VertexSet| -> Relation {
        let p = VertexSet::from([p]);
        g.relation(&p, r).unwrap_or(Relation::Mixed)
    };
    if !r1.is_empty() && rel(p1, &r1) != Relation::Complete {
        return fail(g, s, &path, "interface completeness", format!("p1 = {p1} is not complete to B({v1}) ∖ η(f)"));
    }
    let p2_interface = match (r2.is_empty(), rel(p2, &r2)) {
        (true, _) | (false, Relation::Anticomplete) => false,
        (false, Relation::Complete) => true,
        (false, Relation::Mixed) => {
            return fail(g, s, &path, "interface completeness", format!("p2 = {p2} is mixed on B({v2}) ∖ η(f)"));
        }
    };

    let before = s.clone();
    s.emap.entry(f).or_default().extend(path.iter().copied());
    s.evmap.entry((f, v1)).or_default().insert(p1);
    if p2_interface {
        s.evmap.entry((f, v2)).or_default().insert(p2);
    }
    if let Err(e) = eligible(g, s) {
        let detail = e.to_string();
        return fail(g, &before, &path, "augmentation", detail);
    }
    Ok(Some(Augmentation {
        edge: f,
        v1,
        path,
        p2_interface,
    }))
}

/// Runs the growth loop, absorbs the remaining attached components, and
/// checks the result: `ζ` validates, is substantial and rich, dominates the
/// grown structure, and `G ∖ (ζ⁺(T) ∪ 𝒥_ζ)` is anticomplete to `ζ⁺(T)`.
pub fn saturate_strip(g: &Graph, s: &StripStructure) -> Res<Saturation> {
    eligible(g, s)?;
    let mut eta = s.clone();
    let mut augmentations = Vec::new();
    while let Some(step) = grow_once(g, &mut eta)? {
        augmentations.push(step);
    }

    let jewels = find_strip_jewels(g, &eta).all();
    let m = outside(g, &eta, &jewels);
    let plus = eta.support_plus();
    let support = eta.support();
    let mut zeta = eta.clone();
    let mut absorbed_vertex: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let mut absorbed_edge: BTreeMap<String, Vec<Vec<usize>>> = BTreeMap::new();
    let t = &eta.tree;
    let mut order: Vec<usize> = (0..t.n()).filter(|&v| !t.is_leaf(v)).collect();
    order.extend((0..t.n()).filter(|&v| t.is_leaf(v)));
    for comp in g.components_within(&m) {
        let n: VertexSet = comp.iter().flat_map(|&x| g.neighbors_in(x, &plus)).collect();
        if n.is_empty() {
            continue;
        }
        if n.contains(&eta.apex) {
            return fail(g, &eta, &comp, "absorption", "a residual component sees the apex".into());
        }
        if let Some(&v) = order.iter().find(|&&v| n.is_subset(&eta.bag(v))) {
            zeta.vmap.entry(v).or_default().extend(comp.iter().copied());
            absorbed_vertex.entry(v).or_default().push(comp);
            continue;
        }
        let fits = |e: Edge| {
            let (u, v) = e;
            let (iu, iv) = (eta.interface(e, u), eta.interface(e, v));
            n.is_subset(eta.edge_set(e))
                && (n.iter().any(|y| eta.edge_interior(e).contains(y))
                    || (n.iter().any(|y| iu.contains(y) && !iv.contains(y))
                        && n.iter().any(|y| iv.contains(y) && !iu.contains(y))))
        };
        if let Some(&e) = t.edges().iter().find(|&&e| fits(e)) {
            zeta.emap.entry(e).or_default().extend(comp.iter().copied());
            absorbed_edge.entry(format!("{}-{}", e.0, e.1)).or_default().push(comp);
            continue;
        }
        debug_assert!(n.is_subset(&support));
        return fail(g, &eta, &comp, "absorption", format!("component {comp:?} fits no 𝒟_v or 𝒟_e"));
    }

    match validate_strip(g, &zeta) {
        Ok(r) if r.substantial && r.rich => {}
        Ok(r) => {
            return fail(g, &zeta, &[], "postcondition", format!("substantial={}, rich={}", r.substantial, r.rich));
        }
        Err(v) => return fail(g, &zeta, &[], "postcondition", v.to_string()),
    }
    if !s.le(&zeta) || !eta.le(&zeta) {
        return fail(g, &zeta, &[], "postcondition", "ζ does not dominate the input".into());
    }
    let index = find_strip_jewels(g, &zeta);
    let zplus = zeta.support_plus();
    let all_jewels = index.all();
    let residual: VertexSet = (0..g.n())
        .filter(|x| !zplus.contains(x) && !all_jewels.contains(x))
        .collect();
    if let Some(&x) = residual.iter().find(|&&x| g.neighbors(x).iter().any(|y| zplus.contains(y))) {
        return fail(g, &zeta, &[x], "postcondition", format!("residual vertex {x} touches ζ⁺(T)"));
    }
    Ok(Saturation {
        strip: zeta,
        jewels: index,
        augmentations,
        absorbed_vertex,
        absorbed_edge,
        residual,
    })
}
