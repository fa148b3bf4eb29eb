//! Seeded wired path systems for the banana selection and tree extraction.

use rand::seq::SliceRandom;
use rand::Rng;
use tpfree::extraction::{banana, extract_tree, forward_wired, BananaOutcome, BananaStage, Extraction};
use tpfree::{Graph, PathSystem};

use super::{run_indexed, sample_rng, HarnessConfig, Summary, Trial};

/// Renames vertices by a random permutation, keeping the path order.
fn shuffled<R: Rng>(rng: &mut R, g: &Graph, ps: &PathSystem) -> (Graph, PathSystem) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let h = Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).expect("relabelled");
    let paths = ps.paths.iter().map(|p| p.vertices().iter().map(|&v| perm[v]).collect()).collect();
    let qs = PathSystem::new(&h, perm[ps.source], perm[ps.sink], paths).expect("relabelled");
    (h, qs)
}

/// `k` paths whose interiors are wired along a hidden random order, plus
/// backward noise arcs, on randomly renamed vertices. With `success` false
/// nothing is wired and `D⁻` is edgeless.
pub fn banana_instance(seed: u64, index: u64, success: bool) -> (Graph, PathSystem, usize) {
    let mut rng = sample_rng(seed, index);
    let k = rng.random_range(3..=9);
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut rng);
    let noise: Vec<Vec<bool>> = (0..k).map(|_| (0..k).map(|_| rng.random_bool(0.25)).collect()).collect();
    let wired = |i: usize, j: usize| success && (order[i] < order[j] || noise[i][j]);
    let (g, ps) = forward_wired(k, wired);
    let (g, ps) = shuffled(&mut rng, &g, &ps);
    (g, ps, k - 1)
}

/// Enough forward-wired paths for `T_d^2` below the source, in a random
/// order, on randomly renamed vertices.
pub fn wired_tree_instance(seed: u64, index: u64, d: usize) -> (Graph, PathSystem) {
    let mut rng = sample_rng(seed, index);
    let k = (d + 1) * d + 1 + rng.random_range(0..=3);
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut rng);
    let (g, ps) = forward_wired(k, |i, j| order[i] < order[j]);
    shuffled(&mut rng, &g, &ps)
}

/// Both conclusions from the definitions: the chosen first neighbours and
/// `b` are pairwise non-adjacent, and each earlier first neighbour sees the
/// interior of every later path away from its first neighbour.
pub fn banana_conclusions(g: &Graph, ps: &PathSystem, nu: usize, chosen: &[usize]) -> Result<(), String> {
    if chosen.len() != nu {
        return Err(format!("{} paths chosen, ν = {nu}", chosen.len()));
    }
    let firsts: Vec<usize> = chosen.iter().map(|&i| ps.paths[i].vertices()[1]).collect();
    let mut stable = firsts.clone();
    stable.push(ps.sink);
    for (x, &u) in stable.iter().enumerate() {
        for &v in &stable[x + 1..] {
            if u == v || g.adjacent(u, v) {
                return Err(format!("{u} and {v} are not distinct and non-adjacent"));
            }
        }
    }
    for x in 0..nu {
        for y in x + 1..nu {
            let p = ps.paths[chosen[y]].vertices();
            let seen = p[2..p.len() - 1].iter().any(|&w| g.adjacent(firsts[x], w));
            if !seen {
                return Err(format!("{} misses the interior of path {}", firsts[x], chosen[y]));
            }
        }
    }
    Ok(())
}

fn banana_trial(seed: u64, i: u64) -> Trial {
    let success = i % 2 == 0;
    let (g, ps, nu) = banana_instance(seed, i, success);
    let fail = |detail: String| Trial::Broken { graph: g.clone(), detail };
    let run = || banana(&g, &ps, nu);
    let (first, second) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
    };
    if first != second {
        return fail("two runs disagree".into());
    }
    match (success, first) {
        (true, BananaOutcome::Selected(sel)) => match banana_conclusions(&g, &ps, nu, &sel.paths) {
            Ok(()) => Trial::pass("selected"),
            Err(e) => fail(e),
        },
        (false, BananaOutcome::Failed(f)) if f.stage == BananaStage::Transitive => {
            // Nothing is wired, so the witness must be every path.
            if f.witness.len() == ps.len() {
                Trial::pass("stage 3 witness")
            } else {
                fail(format!("stage 3 witness {:?} is not a maximum stable set of D⁻", f.witness))
            }
        }
        (_, other) => fail(format!("unexpected outcome {other:?}")),
    }
}

pub fn banana_check(cfg: &HarnessConfig) -> Summary {
    let seed = cfg.seed;
    run_indexed("banana", "seeded", cfg.samples as u64, cfg.jobs, move |i| banana_trial(seed, i))
}

/// Independent check of a `T_d^r` witness as a subgraph of the union of
/// the paths: parent edges present, root degree `d`, every other non-leaf
/// degree `d + 1`, all leaves at depth `r`, and the sink excluded.
pub fn tree_shape_defect(
    g: &Graph,
    ps: &PathSystem,
    t: &tpfree::extraction::TreeWitness,
    d: usize,
    r: usize,
) -> Option<String> {
    if t.root != ps.source || t.depth.get(&t.root) != Some(&0) || t.parent.contains_key(&t.root) {
        return Some("root is not the source at depth 0".into());
    }
    if t.depth.contains_key(&ps.sink) {
        return Some("sink in the tree".into());
    }
    let union: std::collections::BTreeSet<usize> = ps.paths.iter().flat_map(|p| p.vertices().to_vec()).collect();
    let mut degree: std::collections::BTreeMap<usize, usize> = t.depth.keys().map(|&v| (v, 0)).collect();
    for (&v, &p) in &t.parent {
        if !union.contains(&v) || !g.adjacent(v, p) || !t.depth.contains_key(&p) {
            return Some(format!("bad parent {p} of {v}"));
        }
        if t.depth[&v] != t.depth[&p] + 1 {
            return Some(format!("{v} is not one level below its parent {p}"));
        }
        *degree.get_mut(&v).unwrap() += 1;
        *degree.get_mut(&p).unwrap() += 1;
    }
    if t.parent.len() + 1 != t.depth.len() {
        return Some("some vertex other than the root has no parent".into());
    }
    for (&v, &deg) in &degree {
        let depth = t.depth[&v];
        let want = if v == t.root { d } else if depth == r { 1 } else { d + 1 };
        if deg != want || depth > r {
            return Some(format!("vertex {v} at depth {depth} has degree {deg}, want {want}"));
        }
    }
    None
}

fn tree_trial(seed: u64, i: u64) -> Trial {
    let d = 2 + (i % 2) as usize;
    let (g, ps) = wired_tree_instance(seed, i, d);
    let fail = |detail: String| Trial::Broken { graph: g.clone(), detail };
    match extract_tree(&g, &ps, d, 2) {
        Ok(Extraction::Found(t)) => match tree_shape_defect(&g, &ps, &t, d, 2) {
            None => Trial::pass(if d == 2 { "d = 2" } else { "d = 3" }),
            Some(e) => fail(e),
        },
        Ok(Extraction::Failed(f)) => fail(format!("failed at depth {}: {}", f.depth, f.reason)),
        Err(e) => fail(e.to_string()),
    }
}

pub fn tree_check(cfg: &HarnessConfig) -> Summary {
    let seed = cfg.seed;
    run_indexed("tree-extraction", "seeded", cfg.samples as u64, cfg.jobs, move |i| tree_trial(seed, i))
}
