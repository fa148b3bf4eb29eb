//! Exhaustive attachments of outside vertices and short paths to long
//! pyramids.

use std::collections::HashMap;

use rayon::prelude::*;
use tpfree::generators::make_config;
use tpfree::obstructions::{ConfigKind, Configuration, PyramidEmbedding};
use tpfree::strips::{classify_wrt_pyramid, is_corner_path, is_pyramid_jewel, is_trapped, pyramid_locality, PyramidClass};
use tpfree::graph::GraphBuilder;
use tpfree::{Error, Graph, VertexSet};

use super::{in_class, tally, HarnessConfig, Summary, Trial};

/// Longest pyramid path used by the exhaustive checks.
pub const MAX_PATH_LENGTH: usize = 4;

/// All long pyramids with path lengths in `2..=MAX_PATH_LENGTH` and at most
/// `max_n` vertices; `ordered` keeps every permutation of the lengths.
pub struct PyramidSpace {
    pub pyramids: Vec<(Graph, PyramidEmbedding)>,
}

impl PyramidSpace {
    pub fn new(max_n: usize, ordered: bool) -> Self {
        let mut pyramids = Vec::new();
        for l1 in 2..=MAX_PATH_LENGTH {
            for l2 in 2..=MAX_PATH_LENGTH {
                for l3 in 2..=MAX_PATH_LENGTH {
                    if !ordered && !(l1 <= l2 && l2 <= l3) {
                        continue;
                    }
                    if 1 + l1 + l2 + l3 > max_n {
                        continue;
                    }
                    if let Ok((g, Configuration::Pyramid(p))) = make_config(ConfigKind::Pyramid, [l1, l2, l3]) {
                        pyramids.push((g, p));
                    }
                }
            }
        }
        PyramidSpace { pyramids }
    }
}

fn all(g: &Graph) -> VertexSet {
    (0..g.n()).collect()
}

fn attach(g: &Graph, sigma: &PyramidEmbedding, path: &[usize]) -> VertexSet {
    let sv = sigma.vertices();
    path.iter().flat_map(|&p| g.neighbors_in(p, &sv)).collect()
}

fn single_vertex_trial(g: &Graph, sigma: &PyramidEmbedding, h: &VertexSet) -> Trial {
    if !in_class(g, None) {
        return Trial::Skip("outside the class");
    }
    let p = g.n() - 1;
    let trapped = is_trapped(g, h, sigma.apex).unwrap_or(false);
    let out = classify_wrt_pyramid(g, h, sigma, &[p]);
    let fail = |detail: String| Trial::Fail { graph: g.clone(), t: None, detail };
    if !trapped {
        return match out {
            Err(Error::Precondition(_)) => Trial::pass("untrapped: precondition reported"),
            other => fail(format!("apex not trapped, yet classify returned {other:?}")),
        };
    }
    let local = pyramid_locality(sigma, &attach(g, sigma, &[p])).is_some();
    match out {
        Ok(PyramidClass::Local { .. }) if local => Trial::Pass(vec!["trapped", "local"]),
        Ok(PyramidClass::CornerPath { index, path }) if !local && is_corner_path(g, sigma, index, &path) => {
            Trial::Pass(vec!["trapped", "corner path"])
        }
        Ok(PyramidClass::Jewel { index, vertex }) if !local && is_pyramid_jewel(g, sigma, index, vertex) => {
            Trial::Pass(vec!["trapped", "jewel"])
        }
        other => fail(format!("local = {local}, classify returned {other:?}")),
    }
}

/// Every long pyramid on at most `max_n` vertices, every neighbourhood of
/// one outside vertex into it (the apex included).
pub fn corner_or_jewel(cfg: &HarnessConfig) -> Summary {
    let space = PyramidSpace::new(cfg.max_n, true);
    let sizes: Vec<u64> = space.pyramids.iter().map(|(g, _)| 1u64 << g.n()).collect();
    let offsets: Vec<u64> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total = sizes.iter().sum();
    super::run_indexed("corner-or-jewel", "exhaustive", total, cfg.jobs, |i| {
        let k = offsets.partition_point(|&o| o <= i) - 1;
        let mask = i - offsets[k];
        let (sg, sigma) = &space.pyramids[k];
        let nbrs: Vec<usize> = (0..sg.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let g = sg.with_vertex(&nbrs);
        single_vertex_trial(&g, sigma, &all(sg))
    })
}

/// The host `Σ` plus an induced path whose `i`-th vertex sees exactly
/// `free[bit]` for the set bits of `masks[i]`.
fn with_path(sg: &Graph, free: &[usize], masks: &[u32]) -> Graph {
    let mut b = GraphBuilder::from_graph(sg);
    let mut prev: Option<usize> = None;
    for &m in masks {
        let q = b.add_vertex();
        for (bit, &v) in free.iter().enumerate() {
            if m >> bit & 1 == 1 {
                b.add_edge(q, v);
            }
        }
        if let Some(p) = prev {
            b.add_edge(p, q);
        }
        prev = Some(q);
    }
    b.build()
}

/// `(local, contains a corner path, contains a jewel)`, each decided from
/// the definitions over every subpath and vertex.
fn outcome_flags(g: &Graph, sigma: &PyramidEmbedding, path: &[usize]) -> (bool, bool, bool) {
    let local = pyramid_locality(sigma, &attach(g, sigma, path)).is_some();
    let mut corner = false;
    for len in 1..=path.len() {
        for start in 0..=path.len() - len {
            let sub = &path[start..start + len];
            let rev: Vec<usize> = sub.iter().rev().copied().collect();
            corner |= (0..3).any(|i| is_corner_path(g, sigma, i, sub) || is_corner_path(g, sigma, i, &rev));
        }
    }
    let jewel = path.iter().any(|&p| (0..3).any(|i| is_pyramid_jewel(g, sigma, i, p)));
    (local, corner, jewel)
}

/// With `exact`, exactly one outcome must hold; otherwise at least one.
fn path_trial(g: &Graph, sigma: &PyramidEmbedding, h: &VertexSet, path: &[usize], exact: bool) -> Trial {
    let (local, corner, jewel) = outcome_flags(g, sigma, path);
    let fail = |detail: String| Trial::Fail { graph: g.clone(), t: None, detail };
    let holding = [local, corner, jewel].iter().filter(|&&f| f).count();
    if holding == 0 || (exact && holding > 1) {
        return fail(format!("path {path:?}: local {local}, corner {corner}, jewel {jewel}"));
    }
    let tag = match classify_wrt_pyramid(g, h, sigma, path) {
        Ok(PyramidClass::Local { .. }) if local => "local",
        Ok(PyramidClass::CornerPath { .. }) if corner => "corner path",
        Ok(PyramidClass::Jewel { .. }) if jewel => "jewel",
        other => return fail(format!("path {path:?}: flags ({local}, {corner}, {jewel}), classify {other:?}")),
    };
    let len = match path.len() {
        1 => "path length 0",
        2 => "path length 1",
        _ => "path length 2",
    };
    let mut tags = vec![tag, len];
    if holding > 1 {
        tags.push("several outcomes");
    }
    Trial::Pass(tags)
}

/// Paths of up to three vertices outside the pyramid, attaching anywhere
/// off `N[a]`. Class membership is hereditary, so a path is tried only when
/// the pyramid plus each of its proper subpaths is theta- and prism-free.
fn paths_on(index: usize, sg: &Graph, sigma: &PyramidEmbedding, max_vertices: usize, exact: bool) -> Summary {
    let h = all(sg);
    let mut closed: VertexSet = sg.neighbors(sigma.apex).iter().copied().collect();
    closed.insert(sigma.apex);
    let free: Vec<usize> = (0..sg.n()).filter(|v| !closed.contains(v)).collect();
    let m = 1u32 << free.len();
    let base = (index as u64) << 40;
    let mut summary = Summary::default();
    let mut counter = 0u64;
    let mut run = |masks: &[u32], summary: &mut Summary| -> bool {
        let g = with_path(sg, &free, masks);
        let member = in_class(&g, None);
        if member {
            let path: Vec<usize> = (sg.n()..g.n()).collect();
            let s = std::mem::take(summary);
            *summary = s.merge(tally(base + counter, path_trial(&g, sigma, &h, &path, exact)));
        }
        counter += 1;
        member
    };
    let singles: Vec<u32> = (0..m).filter(|&x| run(&[x], &mut summary)).collect();
    if max_vertices < 2 {
        return summary;
    }
    let mut pairs: HashMap<(u32, u32), bool> = HashMap::new();
    for (i, &x) in singles.iter().enumerate() {
        for &y in &singles[i..] {
            let ok = run(&[x, y], &mut summary);
            pairs.insert((x, y), ok);
            pairs.insert((y, x), ok);
        }
    }
    if max_vertices < 3 {
        return summary;
    }
    for &x in &singles {
        for &y in &singles {
            if !pairs[&(x, y)] {
                continue;
            }
            for &z in singles.iter().filter(|&&z| z >= x) {
                if pairs[&(y, z)] {
                    run(&[x, y, z], &mut summary);
                }
            }
        }
    }
    summary
}

/// Pyramids up to relabelling of their paths, outside paths of length at
/// most two; at least one outcome must hold.
pub fn path_trichotomy(cfg: &HarnessConfig) -> Summary {
    path_trichotomy_with(cfg, false)
}

pub fn path_trichotomy_with(cfg: &HarnessConfig, exact: bool) -> Summary {
    let space = PyramidSpace::new(cfg.max_n, false);
    let work = || {
        space
            .pyramids
            .par_iter()
            .enumerate()
            .map(|(i, (sg, sigma))| paths_on(i, sg, sigma, 3, exact))
            .reduce(Summary::default, Summary::merge)
    };
    let mut s = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    s.check = if exact { "path-trichotomy-exact" } else { "path-trichotomy" }.into();
    s.mode = "exhaustive".into();
    s
}
