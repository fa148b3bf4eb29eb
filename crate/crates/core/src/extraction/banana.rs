//! Selecting paths with stable first neighbours and forward interior
//! adjacency.

use serde::{Deserialize, Serialize};

use super::tournament::{transitive_sequence, Tournament};
use crate::error::{Error, Result};
use crate::graph::{Graph, PathSystem, VertexSet};
use crate::obstructions::find_clique;

/// `ν` paths, listed as indices into the input path system in the order
/// `P_1, ..., P_ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BananaSelection {
    pub paths: Vec<usize>,
    pub first_neighbors: Vec<usize>,
    /// The head of the transitive tournament, not retained.
    pub dropped: usize,
    pub digraph: Tournament,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BananaStage {
    StableSet,
    Digraph,
    Transitive,
    Verify,
}

impl BananaStage {
    pub fn number(self) -> usize {
        self as usize + 1
    }
}

/// `witness` holds path indices: the maximum stable set of first
/// neighbours at stage 1, a maximum stable set of `D⁻` at stage 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BananaFailure {
    pub stage: BananaStage,
    pub reason: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BananaOutcome {
    Selected(BananaSelection),
    Failed(BananaFailure),
}

impl BananaOutcome {
    pub fn selected(self) -> Option<BananaSelection> {
        match self {
            BananaOutcome::Selected(s) => Some(s),
            BananaOutcome::Failed(_) => None,
        }
    }
}

/// Whether `a_i` has a neighbour in `P_j* ∖ {a_j}`.
fn reaches(g: &Graph, ps: &PathSystem, i: usize, j: usize) -> bool {
    let ai = ps.paths[i].vertices()[1];
    ps.paths[j].interior()[1..].iter().any(|&w| g.adjacent(ai, w))
}

/// The lexicographically first maximum stable set among `vs`.
pub(crate) fn max_stable(g: &Graph, vs: &[usize]) -> Vec<usize> {
    let comp = g.induced(vs).complement();
    let mut best = Vec::new();
    for k in 1..=vs.len() {
        match find_clique(&comp, k) {
            Some(c) => best = c,
            None => break,
        }
    }
    best.into_iter().map(|i| vs[i]).collect()
}

fn fail(stage: BananaStage, reason: String, witness: Vec<usize>) -> BananaOutcome {
    BananaOutcome::Failed(BananaFailure { stage, reason, witness })
}

/// Runs the selection on the given paths, whatever their number.
pub fn banana(g: &Graph, ps: &PathSystem, nu: usize) -> Result<BananaOutcome> {
    ps.validate(g)?;
    let (a, b) = (ps.source, ps.sink);
    if g.adjacent(a, b) {
        return Err(Error::precondition("a and b must be non-adjacent"));
    }
    if nu == 0 {
        return Err(Error::invalid("ν must be positive"));
    }
    let firsts = ps.first_neighbors();

    // Stage 1: a stable set of first neighbours, all non-adjacent to b.
    let free: Vec<usize> = (0..ps.len()).filter(|&i| !g.adjacent(firsts[i], b)).collect();
    let free_vertices: Vec<usize> = free.iter().map(|&i| firsts[i]).collect();
    let stable = max_stable(g, &free_vertices);
    let index_of = |v: usize| firsts.iter().position(|&f| f == v).unwrap();
    let n_set: Vec<usize> = stable.iter().map(|&v| index_of(v)).collect();
    if n_set.len() < nu + 1 {
        return Ok(fail(
            BananaStage::StableSet,
            format!(
                "largest stable set of first neighbours avoiding N(b) has {} vertices, need {}",
                n_set.len(),
                nu + 1
            ),
            n_set,
        ));
    }

    // Stage 2: D on N, arc i → j iff a_i sees P_j* ∖ {a_j}.
    let mut d = Tournament::new(n_set.clone());
    for (x, &i) in n_set.iter().enumerate() {
        for (y, &j) in n_set.iter().enumerate() {
            if x != y && reaches(g, ps, i, j) {
                d.add_arc(x, y);
            }
        }
    }

    // Stage 3: a transitive subtournament on ν + 1 vertices.
    let Some(seq) = transitive_sequence(&d, nu + 1) else {
        let under = d.underlying();
        let all: Vec<usize> = (0..d.len()).collect();
        let witness = max_stable(&under, &all).into_iter().map(|x| n_set[x]).collect();
        return Ok(fail(
            BananaStage::Transitive,
            format!("D has no transitive subtournament on {} vertices", nu + 1),
            witness,
        ));
    };
    let paths: Vec<usize> = seq[1..].iter().map(|&x| n_set[x]).collect();
    let sel = BananaSelection {
        first_neighbors: paths.iter().map(|&i| firsts[i]).collect(),
        paths,
        dropped: n_set[seq[0]],
        digraph: d,
    };

    // Stage 4: both conclusions, re-checked from the definitions.
    if let Err(e) = verify_banana(g, ps, nu, &sel) {
        return Ok(fail(BananaStage::Verify, e, sel.paths));
    }
    Ok(BananaOutcome::Selected(sel))
}

/// Checks that `{a_{P_1}, ..., a_{P_ν}, b}` is stable and that `a_{P_i}` has a
/// neighbour in `P_j* ∖ {a_{P_j}}` whenever `i < j`.
pub fn verify_banana(
    g: &Graph,
    ps: &PathSystem,
    nu: usize,
    sel: &BananaSelection,
) -> std::result::Result<(), String> {
    let distinct: VertexSet = sel.paths.iter().copied().collect();
    if sel.paths.len() != nu || distinct.len() != nu {
        return Err(format!("expected {nu} distinct paths, got {:?}", sel.paths));
    }
    if let Some(&i) = sel.paths.iter().find(|&&i| i >= ps.len()) {
        return Err(format!("path index {i} out of range"));
    }
    let mut stable: Vec<usize> = sel.paths.iter().map(|&i| ps.paths[i].vertices()[1]).collect();
    if stable != sel.first_neighbors {
        return Err("first neighbours do not match the paths".into());
    }
    stable.push(ps.sink);
    for x in 0..stable.len() {
        for y in x + 1..stable.len() {
            if g.adjacent(stable[x], stable[y]) {
                return Err(format!("{} and {} are adjacent", stable[x], stable[y]));
            }
        }
    }
    for x in 0..nu {
        for y in x + 1..nu {
            let (pi, pj) = (&ps.paths[sel.paths[x]], &ps.paths[sel.paths[y]]);
            let ai = pi.vertices()[1];
            let aj = pj.vertices()[1];
            if !pj.interior().iter().any(|&w| w != aj && g.adjacent(ai, w)) {
                return Err(format!("{ai} has no neighbour in P*∖{{{aj}}} of path {}", sel.paths[y]));
            }
        }
    }
    Ok(())
}

/// `a` and `b` joined by `k` paths `a - x_i - y_i - b`, with `x_i` adjacent
/// to `y_j` whenever `wired(i, j)`. Returns the host, `a`, `b` and paths.
pub fn forward_wired(k: usize, wired: impl Fn(usize, usize) -> bool) -> (Graph, PathSystem) {
    let (a, b) = (0, 1);
    let x = |i: usize| 2 + 2 * i;
    let y = |i: usize| 3 + 2 * i;
    let mut builder = crate::graph::GraphBuilder::new(2 + 2 * k);
    for i in 0..k {
        builder.add_edge(a, x(i)).add_edge(x(i), y(i)).add_edge(y(i), b);
        for j in 0..k {
            if i != j && wired(i, j) {
                builder.add_edge(x(i), y(j));
            }
        }
    }
    let g = builder.build();
    let paths = (0..k).map(|i| vec![a, x(i), y(i), b]).collect();
    let ps = PathSystem::new(&g, a, b, paths).expect("paths are induced");
    (g, ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn forward_wiring_succeeds_and_drops_the_head() {
        let (g, ps) = forward_wired(5, |i, j| i < j);
        let sel = banana(&g, &ps, 4).unwrap().selected().unwrap();
        assert_eq!(sel.paths, vec![1, 2, 3, 4]);
        assert_eq!(sel.dropped, 0);
        verify_banana(&g, &ps, 4, &sel).unwrap();
    }

    #[test]
    fn backward_wiring_reverses_the_order() {
        let (g, ps) = forward_wired(4, |i, j| i > j);
        let sel = banana(&g, &ps, 3).unwrap().selected().unwrap();
        assert_eq!(sel.dropped, 3);
        assert_eq!(sel.paths, vec![2, 1, 0]);
    }

    #[test]
    fn adjacent_first_neighbours_fail_at_stage_one() {
        let (g, ps) = forward_wired(4, |i, j| i < j);
        let mut b = GraphBuilder::from_graph(&g);
        for i in 0..4 {
            for j in i + 1..4 {
                b.add_edge(2 + 2 * i, 2 + 2 * j);
            }
        }
        let g = b.build();
        match banana(&g, &ps, 2).unwrap() {
            BananaOutcome::Failed(f) => {
                assert_eq!(f.stage, BananaStage::StableSet);
                assert_eq!(f.stage.number(), 1);
                assert_eq!(f.witness, vec![0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edgeless_digraph_fails_at_stage_three() {
        let (g, ps) = forward_wired(6, |_, _| false);
        match banana(&g, &ps, 3).unwrap() {
            BananaOutcome::Failed(f) => {
                assert_eq!(f.stage.number(), 3);
                assert_eq!(f.witness, (0..6).collect::<Vec<_>>());
                assert!(g.is_stable(f.witness.iter().map(|&i| &ps.paths[i].vertices()[1])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampered_selection_is_rejected() {
        let (g, ps) = forward_wired(5, |i, j| i < j);
        let mut sel = banana(&g, &ps, 4).unwrap().selected().unwrap();
        sel.paths.swap(0, 1);
        sel.first_neighbors.swap(0, 1);
        assert!(verify_banana(&g, &ps, 4, &sel).is_err());
    }

    #[test]
    fn adjacent_ends_are_refused() {
        let g = Graph::path(2);
        let ps = PathSystem { source: 0, sink: 1, paths: vec![] };
        assert!(banana(&g, &ps, 1).is_err());
    }
}
