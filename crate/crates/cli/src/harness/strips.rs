//! Seeded decorated pyramids, their saturations, and the checks run on them.

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use tpfree::generators::make_config;
use tpfree::obstructions::{ConfigKind, Configuration, PyramidEmbedding};
use tpfree::separators::{
    bag_clique_defect, check_distant_jewels, jewel_bound, ramsey, sigma_bound, verify_jewel_locality, Quantity,
    SeparatorContext,
};
use tpfree::strips::{
    canonical_pyramid_strip, find_strip_jewels, locality, saturate_strip, validate_strip, Locality, Saturation,
    SaturationError, StripStructure,
};
use tpfree::{Graph, VertexSet};

use super::{in_class, run_indexed, sample_rng, HarnessConfig, Summary, Trial};

/// Hosts are kept free of `K_4`: every pyramid has a triangle.
pub const SUITE_T: usize = 4;
/// The parameters the bounds are evaluated at.
pub const BOUND_T: usize = 3;
pub const MAX_DECORATIONS: usize = 8;

pub struct SuiteInstance {
    pub index: u64,
    pub graph: Graph,
    pub sigma: PyramidEmbedding,
    pub strip: StripStructure,
    pub saturation: Result<Saturation, SaturationError>,
}

/// A long pyramid (paths of length 3 or 4) plus up to eight vertices, each
/// added only if the host stays theta-free, prism-free and `K_4`-free. No
/// decoration touches `N[a]`, so the apex stays trapped.
pub fn decorated_pyramid<R: Rng>(rng: &mut R) -> (Graph, PyramidEmbedding) {
    let lengths = [rng.random_range(3..=4), rng.random_range(3..=4), rng.random_range(3..=4)];
    let Ok((mut g, Configuration::Pyramid(sigma))) = make_config(ConfigKind::Pyramid, lengths) else {
        unreachable!("lengths are valid")
    };
    let base = sigma.base;
    let c: Vec<usize> = (0..3).map(|i| sigma.base_neighbor(i)).collect();
    let free_on = |i: usize| -> Vec<usize> { sigma.paths[i].vertices()[2..].to_vec() };
    let count = rng.random_range(0..=MAX_DECORATIONS);
    let mut added: Vec<usize> = Vec::new();
    for _ in 0..count {
        for _attempt in 0..20 {
            let i = rng.random_range(0..3);
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut nbrs: Vec<usize> = match rng.random_range(0..6) {
                0 => vec![base[j], c[j], base[k], c[k]],
                1 => {
                    let on: Vec<usize> = free_on(i).into_iter().filter(|&v| v != base[i]).collect();
                    let mut n = vec![base[j], base[k]];
                    n.extend(on.choose(rng));
                    n
                }
                2 => {
                    let on = free_on(i);
                    let start = rng.random_range(0..on.len());
                    let len = rng.random_range(1..=3.min(on.len() - start));
                    on[start..start + len].to_vec()
                }
                3 => base.iter().copied().filter(|_| rng.random_bool(0.5)).collect(),
                4 => {
                    let mut n: Vec<usize> = added.choose(rng).copied().into_iter().collect();
                    if rng.random_bool(0.5) {
                        n.extend(free_on(rng.random_range(0..3)).choose(rng));
                    }
                    n
                }
                _ => (0..3)
                    .flat_map(free_on)
                    .chain(added.iter().copied())
                    .filter(|_| rng.random_bool(0.2))
                    .collect(),
            };
            nbrs.sort_unstable();
            nbrs.dedup();
            let candidate = g.with_vertex(&nbrs);
            if in_class(&candidate, Some(SUITE_T)) {
                added.push(g.n());
                g = candidate;
                break;
            }
        }
    }
    (g, sigma)
}

pub fn suite_instance(seed: u64, index: u64) -> SuiteInstance {
    let mut rng = sample_rng(seed, index);
    let (graph, sigma) = decorated_pyramid(&mut rng);
    let strip = canonical_pyramid_strip(&graph, &sigma).expect("long pyramid");
    let saturation = saturate_strip(&graph, &strip);
    SuiteInstance { index, graph, sigma, strip, saturation }
}

/// `samples` instances, in index order.
pub fn saturated_suite(cfg: &HarnessConfig) -> Vec<SuiteInstance> {
    let work = || (0..cfg.samples as u64).into_par_iter().map(|i| suite_instance(cfg.seed, i)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn fail(inst: &SuiteInstance, detail: String) -> Trial {
    Trial::Fail { graph: inst.graph.clone(), t: Some(SUITE_T), detail }
}

fn saturated(inst: &SuiteInstance) -> Result<&Saturation, Trial> {
    inst.saturation
        .as_ref()
        .map_err(|e| fail(inst, format!("saturation failed: {e}")))
}

pub fn check_saturation(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    let g = &inst.graph;
    let zeta = &sat.strip;
    match validate_strip(g, zeta) {
        Ok(r) if r.substantial && r.rich => {}
        Ok(r) => return fail(inst, format!("output not substantial and rich: {r:?}")),
        Err(v) => return fail(inst, format!("output violates an axiom: {v:?}")),
    }
    if !inst.strip.le(zeta) {
        return fail(inst, "output does not contain the input structure".into());
    }
    let plus = zeta.support_plus();
    let jewels = find_strip_jewels(g, zeta).all();
    let residual: VertexSet = (0..g.n()).filter(|x| !plus.contains(x) && !jewels.contains(x)).collect();
    if residual != sat.residual {
        return fail(inst, format!("residual {:?} differs from recomputed {residual:?}", sat.residual));
    }
    for &x in &residual {
        if let Some(y) = g.neighbors(x).iter().find(|y| plus.contains(y)) {
            return fail(inst, format!("residual vertex {x} is adjacent to {y} in ζ⁺(T)"));
        }
    }
    let mut tags = vec![if sat.augmentations.is_empty() { "no augmentation" } else { "augmented" }];
    if g.n() > inst.sigma.vertices().len() {
        tags.push("decorated");
    }
    if !sat.jewels.is_empty() {
        tags.push("jewels");
    }
    if !sat.residual.is_empty() {
        tags.push("residual");
    }
    if !sat.absorbed_vertex.is_empty() || !sat.absorbed_edge.is_empty() {
        tags.push("absorbed");
    }
    Trial::Pass(tags)
}

pub fn check_jewel_locality(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    match verify_jewel_locality(&inst.graph, &sat.strip, &sat.jewels) {
        Ok(()) if sat.jewels.is_empty() => Trial::pass("no jewels"),
        Ok(()) => Trial::pass("jewels local"),
        Err(v) => fail(inst, format!("{:?}", v.fault)),
    }
}

pub fn check_bag_cliques(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    for v in 0..sat.strip.tree.n() {
        match bag_clique_defect(&inst.graph, &sat.strip, v) {
            Ok(d) if d.edges.len() <= 1 => {}
            Ok(d) => return fail(inst, format!("tree vertex {v}: non-clique interfaces at {:?}", d.edges)),
            Err(e) => return fail(inst, e.to_string()),
        }
    }
    Trial::pass("at most one defect per vertex")
}

/// `j(3, 3)` with `R(3, 3)` recomputed by the exhaustive Ramsey search.
pub fn bound_j() -> Quantity {
    assert!(ramsey(BOUND_T, 3).is_exact(), "R(t, 3) must come from the exhaustive search");
    jewel_bound(BOUND_T, 3)
}

pub fn check_jewel_bound(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    let j = jewel_bound(BOUND_T, sat.strip.tree.max_degree());
    for v in 0..sat.strip.tree.n() {
        let n = sat.jewels.at_vertex(v).len();
        if j.exceeds(n) != Some(true) {
            return fail(inst, format!("{n} jewels at tree vertex {v}, bound {j}"));
        }
    }
    Trial::pass("below j")
}

pub fn check_distant(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    match check_distant_jewels(&inst.graph, &sat.strip, &sat.jewels) {
        Ok(()) => Trial::pass("no distant pair"),
        Err(d) => fail(inst, format!("{d:?}")),
    }
}

pub fn check_jewel_separators(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    let ctx = match SeparatorContext::with_jewels(&inst.graph, &sat.strip, sat.jewels.clone(), BOUND_T) {
        Ok(c) => c,
        Err(e) => return fail(inst, e.to_string()),
    };
    let bound = jewel_bound(BOUND_T, sat.strip.tree.max_degree()).mul(&Quantity::exact(2));
    if sat.residual.is_empty() {
        return Trial::pass("no outside vertex");
    }
    for &x in &sat.residual {
        match ctx.jewel_separator(x) {
            Ok(c) if c.verified && c.verify(&inst.graph).is_ok() && bound.exceeds(c.set.len()) == Some(true) => {}
            Ok(c) => return fail(inst, format!("x = {x}: certificate {:?} fails its checks", c.set)),
            Err(e) => return fail(inst, format!("x = {x}: {e}")),
        }
    }
    Trial::pass("outside vertices separated")
}

pub fn check_apex_separators(inst: &SuiteInstance) -> Trial {
    let sat = match saturated(inst) {
        Ok(s) => s,
        Err(t) => return t,
    };
    let g = &inst.graph;
    let ctx = match SeparatorContext::with_jewels(g, &sat.strip, sat.jewels.clone(), BOUND_T) {
        Ok(c) => c,
        Err(e) => return fail(inst, e.to_string()),
    };
    let sigma = sigma_bound(BOUND_T, sat.strip.tree.max_degree());
    let a = sat.strip.apex;
    for x in (0..g.n()).filter(|&x| x != a && !g.adjacent(a, x)) {
        match ctx.apex_separator(x) {
            Ok(c) => {
                if let Err(e) = c.verify(g) {
                    return fail(inst, format!("x = {x}: {e}"));
                }
                if !c.verified || sigma.exceeds(c.set.len()) != Some(true) {
                    return fail(inst, format!("x = {x}: |S| = {} against σ = {sigma}", c.set.len()));
                }
            }
            Err(e) => return fail(inst, format!("x = {x}: {e}")),
        }
    }
    Trial::pass("all separated")
}

/// Random subsets of `η(T)` on the canonical and saturated structures.
pub fn check_nonlocal_pair(inst: &SuiteInstance) -> Trial {
    let mut rng = sample_rng(inst.index, u64::MAX);
    let mut strips = vec![&inst.strip];
    if let Ok(sat) = &inst.saturation {
        strips.push(&sat.strip);
    }
    let mut tags = Vec::new();
    for s in strips {
        let support: Vec<usize> = s.support().into_iter().collect();
        for _ in 0..20 {
            let k = rng.random_range(0..=4.min(support.len()));
            let x: VertexSet = support.choose_multiple(&mut rng, k).copied().collect();
            let contained = |set: &VertexSet| x.is_subset(set);
            let local = s.tree.edges().iter().any(|&e| contained(s.edge_set(e)))
                || (0..s.tree.n()).any(|v| {
                    let mut around = s.bag(v);
                    around.extend(s.vertex_set(v));
                    contained(&around)
                });
            match locality(s, &x) {
                Ok(Locality::NonlocalPair { x: p, y: q }) => {
                    let pair = VertexSet::from([p, q]);
                    let pair_local = matches!(locality(s, &pair), Ok(l) if l.is_local());
                    if local || !x.contains(&p) || !x.contains(&q) || pair_local {
                        return fail(inst, format!("X = {x:?}: bad pair {p}, {q}"));
                    }
                    tags.push("nonlocal");
                }
                Ok(l) if local => {
                    let place_ok = match l {
                        Locality::Edge { edge } => contained(s.edge_set(edge)),
                        Locality::Vertex { vertex } => {
                            let mut around = s.bag(vertex);
                            around.extend(s.vertex_set(vertex));
                            contained(&around)
                        }
                        Locality::NonlocalPair { .. } => unreachable!(),
                    };
                    if !place_ok {
                        return fail(inst, format!("X = {x:?}: location {l:?} does not contain X"));
                    }
                    tags.push("local");
                }
                other => return fail(inst, format!("X = {x:?}: local = {local}, got {other:?}")),
            }
        }
    }
    tags.sort_unstable();
    tags.dedup();
    Trial::Pass(tags)
}

fn over_suite(name: &str, cfg: &HarnessConfig, f: fn(&SuiteInstance) -> Trial) -> Summary {
    run_indexed(name, "seeded", cfg.samples as u64, cfg.jobs, |i| f(&suite_instance(cfg.seed, i)))
}

pub fn nonlocal_pair(cfg: &HarnessConfig) -> Summary {
    over_suite("nonlocal-pair", cfg, check_nonlocal_pair)
}

pub fn saturation(cfg: &HarnessConfig) -> Summary {
    over_suite("saturation", cfg, check_saturation)
}

pub fn jewel_locality(cfg: &HarnessConfig) -> Summary {
    over_suite("jewel-locality", cfg, check_jewel_locality)
}

pub fn bag_cliques(cfg: &HarnessConfig) -> Summary {
    over_suite("bag-cliques", cfg, check_bag_cliques)
}

pub fn jewel_bound_check(cfg: &HarnessConfig) -> Summary {
    over_suite("jewel-bound", cfg, check_jewel_bound)
}

pub fn distant_jewels(cfg: &HarnessConfig) -> Summary {
    over_suite("distant-jewels", cfg, check_distant)
}

pub fn jewel_separator_bound(cfg: &HarnessConfig) -> Summary {
    over_suite("jewel-separator", cfg, check_jewel_separators)
}

pub fn apex_separator_bound(cfg: &HarnessConfig) -> Summary {
    over_suite("apex-separator", cfg, check_apex_separators)
}
