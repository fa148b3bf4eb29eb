//! Paths outside a pyramid whose apex is trapped: locality, corner paths and
//! jewels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::obstructions::{class_obstruction_in, Obstruction, PyramidEmbedding};

/// Whether `a` is trapped in `h`: `N²[a] ⊆ H` and every neighbour of `a` has
/// degree two in `G[H]`.
pub fn is_trapped(g: &Graph, h: &VertexSet, a: usize) -> Result<bool> {
    g.check_vertex(a)?;
    g.check_vertices(h)?;
    if !h.contains(&a) {
        return Err(Error::invalid(format!("apex {a} is not in H")));
    }
    if !g.neighborhood(a, 2)?.is_subset(h) {
        return Ok(false);
    }
    Ok(g.neighbors(a).iter().all(|&x| g.neighbors_in(x, h).len() == 2))
}

/// Where a local attachment sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PyramidLocation {
    /// Inside `P_i`.
    Path(usize),
    Base,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PyramidClass {
    Local { location: PyramidLocation },
    /// `path[0]` is `p_1`, the end with a neighbour in `P_i ∖ {b_i}`.
    CornerPath { index: usize, path: Vec<usize> },
    Jewel { index: usize, vertex: usize },
    /// The trichotomy failed, so the host is not theta- and prism-free.
    Obstruction { witness: Obstruction },
}

/// `X ⊆ P_i` for some `i`, or `X ⊆ {b_1, b_2, b_3}`.
pub fn pyramid_locality(sigma: &PyramidEmbedding, x: &VertexSet) -> Option<PyramidLocation> {
    if let Some(i) = (0..3).find(|&i| x.iter().all(|v| sigma.paths[i].contains(*v))) {
        return Some(PyramidLocation::Path(i));
    }
    x.iter()
        .all(|v| sigma.base.contains(v))
        .then_some(PyramidLocation::Base)
}

/// Whether the ordered path `q` is a corner path for `sigma` at `b_i`.
pub fn is_corner_path(g: &Graph, sigma: &PyramidEmbedding, i: usize, q: &[usize]) -> bool {
    let sv = sigma.vertices();
    if q.is_empty() || q.iter().any(|v| sv.contains(v)) {
        return false;
    }
    let (p1, p2) = (q[0], q[q.len() - 1]);
    let bi = sigma.base[i];
    let far: Vec<usize> = (0..3).filter(|&j| j != i).map(|j| sigma.base[j]).collect();
    let near = |y: usize| y != bi && sigma.paths[i].contains(y);
    if !g.neighbors(p1).iter().any(|&y| near(y)) || !far.iter().all(|&b| g.adjacent(p2, b)) {
        return false;
    }
    q.iter().all(|&x| {
        g.neighbors(x).iter().all(|&y| {
            !sv.contains(&y)
                || y == bi
                || (x == p1 && near(y))
                || (x == p2 && far.contains(&y))
        })
    })
}

/// Whether `p` is a jewel for `sigma` at `b_i`.
pub fn is_pyramid_jewel(g: &Graph, sigma: &PyramidEmbedding, i: usize, p: usize) -> bool {
    if sigma.vertices().contains(&p) {
        return false;
    }
    if sigma.paths[i].vertices().iter().any(|&y| g.adjacent(p, y)) {
        return false;
    }
    (0..3).filter(|&j| j != i).all(|j| {
        let contact: VertexSet = g.neighbors_in(p, &sigma.paths[j].vertex_set());
        contact == VertexSet::from([sigma.base[j], sigma.base_neighbor(j)])
    })
}

fn check_preconditions(
    g: &Graph,
    h: &VertexSet,
    sigma: &PyramidEmbedding,
    path: &[usize],
) -> Result<()> {
    sigma
        .validate(g)
        .map_err(|e| Error::precondition(format!("Σ is not a pyramid: {e}")))?;
    if !sigma.vertices().is_subset(h) {
        return Err(Error::precondition("Σ is not inside H"));
    }
    if !is_trapped(g, h, sigma.apex)? {
        return Err(Error::precondition(format!("apex {} is not trapped in H", sigma.apex)));
    }
    g.check_vertices(path)?;
    if let Some(v) = path.iter().find(|v| h.contains(v)) {
        return Err(Error::precondition(format!("path vertex {v} lies in H")));
    }
    if !g.is_induced_path(path) {
        return Err(Error::precondition(format!("{path:?} is not an induced path")));
    }
    Ok(())
}

/// Classifies a path `P ⊆ G ∖ H` against a pyramid `Σ ⊆ H` whose apex is
/// trapped in `H`: its attachment is local, or some subpath is a corner path,
/// or some vertex is a jewel. When none holds the host contains a theta or a
/// prism inside `Σ ∪ P`, which is returned instead.
pub fn classify_wrt_pyramid(
    g: &Graph,
    h: &VertexSet,
    sigma: &PyramidEmbedding,
    path: &[usize],
) -> Result<PyramidClass> {
    check_preconditions(g, h, sigma, path)?;
    let sv = sigma.vertices();
    let attach: VertexSet = path.iter().flat_map(|&p| g.neighbors_in(p, &sv)).collect();
    if let Some(location) = pyramid_locality(sigma, &attach) {
        return Ok(PyramidClass::Local { location });
    }
    let k = path.len();
    for len in 1..=k {
        for start in 0..=k - len {
            let sub = &path[start..start + len];
            if len == 1 {
                if let Some(index) = (0..3).find(|&i| is_pyramid_jewel(g, sigma, i, sub[0])) {
                    return Ok(PyramidClass::Jewel { index, vertex: sub[0] });
                }
            }
            let rev: Vec<usize> = sub.iter().rev().copied().collect();
            for q in [sub, &rev[..]] {
                if let Some(index) = (0..3).find(|&i| is_corner_path(g, sigma, i, q)) {
                    return Ok(PyramidClass::CornerPath { index, path: q.to_vec() });
                }
            }
        }
    }
    let within: VertexSet = sv.iter().chain(path).copied().collect();
    match class_obstruction_in(g, &within) {
        Some(witness) => Ok(PyramidClass::Obstruction { witness }),
        None => Err(Error::precondition(
            "no local, corner or jewel outcome and no theta or prism in Σ ∪ P",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_config;
    use crate::obstructions::{ConfigKind, Configuration};

    fn pyramid(lengths: [usize; 3]) -> (Graph, PyramidEmbedding) {
        match make_config(ConfigKind::Pyramid, lengths).unwrap() {
            (g, Configuration::Pyramid(p)) => (g, p),
            _ => unreachable!(),
        }
    }

    fn with(g: &Graph, nbrs: &[usize]) -> (Graph, usize) {
        (g.with_vertex(nbrs), g.n())
    }

    fn all(g: &Graph) -> VertexSet {
        (0..g.n()).collect()
    }

    #[test]
    fn trapped_apex() {
        let (g, s) = pyramid([2, 3, 3]);
        assert!(is_trapped(&g, &all(&g), s.apex).unwrap());
        let (g, s) = pyramid([1, 2, 2]);
        assert!(!is_trapped(&g, &all(&g), s.apex).unwrap());
        let (g, s) = pyramid([2, 2, 2]);
        let mut h = all(&g);
        h.remove(&s.base[0]);
        assert!(!is_trapped(&g, &h, s.apex).unwrap());
        assert!(is_trapped(&g, &VertexSet::new(), s.apex).is_err());
    }

    #[test]
    fn the_three_outcomes() {
        let (g, s) = pyramid([3, 3, 3]);
        let h = all(&g);
        let b = s.base;
        let c: Vec<usize> = (0..3).map(|i| s.base_neighbor(i)).collect();

        let (g1, p) = with(&g, &[b[0], c[0], b[1], c[1]]);
        assert_eq!(
            classify_wrt_pyramid(&g1, &h, &s, &[p]).unwrap(),
            PyramidClass::Jewel { index: 2, vertex: p }
        );

        let (g2, p) = with(&g, &[b[1], b[2], c[0]]);
        assert_eq!(
            classify_wrt_pyramid(&g2, &h, &s, &[p]).unwrap(),
            PyramidClass::CornerPath { index: 0, path: vec![p] }
        );

        let mid = s.paths[1].vertices()[2];
        let (g3, p) = with(&g, &[mid]);
        assert_eq!(
            classify_wrt_pyramid(&g3, &h, &s, &[p]).unwrap(),
            PyramidClass::Local { location: PyramidLocation::Path(1) }
        );
    }

    #[test]
    fn failure_yields_an_obstruction() {
        // A vertex with one neighbour inside each of P_1 and P_2 closes a theta.
        let (g, s) = pyramid([3, 3, 3]);
        let h = all(&g);
        let (g1, p) = with(&g, &[s.paths[0].vertices()[2], s.paths[1].vertices()[2]]);
        match classify_wrt_pyramid(&g1, &h, &s, &[p]).unwrap() {
            PyramidClass::Obstruction { witness } => witness.validate(&g1).unwrap(),
            other => panic!("expected an obstruction, got {other:?}"),
        }
    }

    #[test]
    fn preconditions_are_named() {
        let (g, s) = pyramid([2, 2, 2]);
        let h = all(&g);
        let (g1, p) = with(&g, &[s.paths[0].vertices()[1]]);
        let err = classify_wrt_pyramid(&g1, &h, &s, &[p]).unwrap_err();
        assert!(err.to_string().contains("trapped"), "{err}");
        let err = classify_wrt_pyramid(&g, &h, &s, &[s.base[0]]).unwrap_err();
        assert!(err.to_string().contains("lies in H"), "{err}");
    }
}
