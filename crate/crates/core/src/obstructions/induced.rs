//! Backtracking detectors for thetas, prisms and pyramids.
//!
//! Each search fixes a skeleton (the ends, the two triangles, or the apex and
//! base), grows the first two paths as induced paths avoiding the closed
//! neighbourhoods of everything already placed, and finds the third path as
//! a shortest path through what remains. A shortest path is induced, and any
//! valid third path certifies that the remaining region connects its ends,
//! so the last step loses nothing.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::configs::{PrismEmbedding, PyramidEmbedding, ThetaEmbedding};
use crate::graph::{for_each_induced_path, Graph, Path};

/// Enumerates induced paths from `s` to `t` whose interior lies in `ok`.
/// `ok` must not contain `s` or `t`.
fn induced_paths<B>(
    g: &Graph,
    s: usize,
    t: usize,
    ok: &FixedBitSet,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut target = g.bits();
    target.insert(t);
    for_each_induced_path(g, s, &target, ok, visit)
}

/// Removes the closed neighbourhood of `vs` from `ok`.
fn forbid(g: &Graph, ok: &mut FixedBitSet, vs: &[usize]) {
    for &v in vs {
        ok.set(v, false);
        for &w in g.neighbors(v) {
            ok.set(w, false);
        }
    }
}

fn full(g: &Graph) -> FixedBitSet {
    let mut b = g.bits();
    b.insert_range(..);
    b
}

fn shortest(g: &Graph, s: usize, t: usize, ok: &FixedBitSet) -> Option<Vec<usize>> {
    let mut target = g.bits();
    target.insert(t);
    g.shortest_path_through(s, &target, ok)
}

pub(crate) fn search_theta(g: &Graph) -> Option<ThetaEmbedding> {
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.adjacent(a, b) {
                continue;
            }
            if let Some(t) = theta_with_ends(g, a, b) {
                return Some(t);
            }
        }
    }
    None
}

fn theta_with_ends(g: &Graph, a: usize, b: usize) -> Option<ThetaEmbedding> {
    let mut ok = full(g);
    ok.set(a, false);
    ok.set(b, false);
    let found = induced_paths(g, a, b, &ok, &mut |p1| {
        let mut ok2 = ok.clone();
        forbid(g, &mut ok2, &p1[1..p1.len() - 1]);
        let x1 = p1[1];
        induced_paths(g, a, b, &ok2, &mut |p2| {
            if p2[1] < x1 {
                return ControlFlow::Continue(());
            }
            let mut ok3 = ok2.clone();
            forbid(g, &mut ok3, &p2[1..p2.len() - 1]);
            match shortest(g, a, b, &ok3) {
                Some(p3) => ControlFlow::Break([p1.to_vec(), p2.to_vec(), p3]),
                None => ControlFlow::Continue(()),
            }
        })
    });
    match found {
        ControlFlow::Break([p1, p2, p3]) => Some(ThetaEmbedding {
            ends: [a, b],
            paths: [p1, p2, p3].map(Path::new_unchecked),
        }),
        ControlFlow::Continue(()) => None,
    }
}

/// Triangles `x < y < z`, in lexicographic order.
fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        for &y in g.neighbors(x).iter().filter(|&&y| y > x) {
            for &z in g.neighbors(y).iter().filter(|&&z| z > y) {
                if g.adjacent(x, z) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub(crate) fn search_prism(g: &Graph) -> Option<PrismEmbedding> {
    let tris = triangles(g);
    for (i, ta) in tris.iter().enumerate() {
        for tb0 in &tris[i + 1..] {
            if tb0.iter().any(|v| ta.contains(v)) {
                continue;
            }
            for perm in PERMS {
                let tb = perm.map(|k| tb0[k]);
                if let Some(p) = prism_on(g, *ta, tb) {
                    return Some(p);
                }
            }
        }
    }
    None
}

fn prism_on(g: &Graph, ta: [usize; 3], tb: [usize; 3]) -> Option<PrismEmbedding> {
    for i in 0..3 {
        for j in 0..3 {
            if i != j && g.adjacent(ta[i], tb[j]) {
                return None;
            }
        }
    }
    let mut ok = full(g);
    for v in ta.iter().chain(&tb) {
        ok.set(*v, false);
    }
    let mut ok1 = ok.clone();
    forbid(g, &mut ok1, &[ta[1], ta[2], tb[1], tb[2]]);
    let found = induced_paths(g, ta[0], tb[0], &ok1, &mut |p1| {
        let mut ok2 = ok.clone();
        forbid(g, &mut ok2, p1);
        forbid(g, &mut ok2, &[ta[2], tb[2]]);
        induced_paths(g, ta[1], tb[1], &ok2, &mut |p2| {
            let mut ok3 = ok.clone();
            forbid(g, &mut ok3, p1);
            forbid(g, &mut ok3, p2);
            match shortest(g, ta[2], tb[2], &ok3) {
                Some(p3) => ControlFlow::Break([p1.to_vec(), p2.to_vec(), p3]),
                None => ControlFlow::Continue(()),
            }
        })
    });
    match found {
        ControlFlow::Break(paths) => Some(PrismEmbedding {
            triangles: [ta, tb],
            paths: paths.map(Path::new_unchecked),
        }),
        ControlFlow::Continue(()) => None,
    }
}

pub(crate) fn search_pyramid(g: &Graph) -> Option<PyramidEmbedding> {
    let tris = triangles(g);
    for a in 0..g.n() {
        for &base in &tris {
            if base.contains(&a) {
                continue;
            }
            if let Some(p) = pyramid_on(g, a, base) {
                return Some(p);
            }
        }
    }
    None
}

/// A pyramid with the given apex and base, if one exists.
fn pyramid_on(g: &Graph, a: usize, base: [usize; 3]) -> Option<PyramidEmbedding> {
    if base.iter().filter(|&&b| g.adjacent(a, b)).count() > 1 {
        return None;
    }
    let mut ok = full(g);
    ok.set(a, false);
    for b in base {
        ok.set(b, false);
    }
    let mut ok1 = ok.clone();
    forbid(g, &mut ok1, &[base[1], base[2]]);
    let found = induced_paths(g, a, base[0], &ok1, &mut |p1| {
        let mut ok2 = ok.clone();
        forbid(g, &mut ok2, &p1[1..]);
        forbid(g, &mut ok2, &[base[2]]);
        induced_paths(g, a, base[1], &ok2, &mut |p2| {
            let mut ok3 = ok.clone();
            forbid(g, &mut ok3, &p1[1..]);
            forbid(g, &mut ok3, &p2[1..]);
            match shortest(g, a, base[2], &ok3) {
                Some(p3) => ControlFlow::Break([p1.to_vec(), p2.to_vec(), p3]),
                None => ControlFlow::Continue(()),
            }
        })
    });
    match found {
        ControlFlow::Break(paths) => Some(PyramidEmbedding {
            apex: a,
            base,
            paths: paths.map(Path::new_unchecked),
        }),
        ControlFlow::Continue(()) => None,
    }
}
