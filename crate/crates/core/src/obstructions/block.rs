//! Strong `k`-blocks: `k` vertices, every pair joined by `k` internally
//! disjoint paths, with paths for different pairs meeting only in shared
//! ends.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::error::{Error, Result};
use crate::graph::{vertex_disjoint_paths, Graph};

pub const STRONG_BLOCK_MAX_N: usize = 20;
pub const STRONG_BLOCK_MAX_K: usize = 4;

/// Pair orders tried by the greedy packer before giving up.
const ORDER_BUDGET: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPaths {
    pub pair: [usize; 2],
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongBlockWitness {
    pub block: Vec<usize>,
    pub systems: Vec<PairPaths>,
}

impl StrongBlockWitness {
    /// Checks the definition verbatim, paths being induced paths of `g`.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), String> {
        let block: BTreeSet<usize> = self.block.iter().copied().collect();
        if block.len() != self.block.len() || block.len() < k {
            return Err(format!("block needs at least {k} distinct vertices"));
        }
        for pair in self.block.iter().copied().tuple_combinations::<(usize, usize)>() {
            let (x, y) = (pair.0.min(pair.1), pair.0.max(pair.1));
            let Some(sys) = self.systems.iter().find(|s| s.pair == [x, y]) else {
                return Err(format!("no paths for the pair {{{x}, {y}}}"));
            };
            let distinct: BTreeSet<&Vec<usize>> = sys.paths.iter().collect();
            if distinct.len() < k {
                return Err(format!("fewer than {k} distinct paths for {{{x}, {y}}}"));
            }
            let mut interiors = BTreeSet::new();
            for p in &sys.paths {
                let ends = (p.first().copied(), p.last().copied());
                if ends != (Some(x), Some(y)) && ends != (Some(y), Some(x)) {
                    return Err(format!("path {p:?} does not join {x} and {y}"));
                }
                if !g.is_induced_path(p) {
                    return Err(format!("{p:?} is not an induced path"));
                }
                for &v in &p[1..p.len() - 1] {
                    if !interiors.insert(v) {
                        return Err(format!("paths for {{{x}, {y}}} share interior vertex {v}"));
                    }
                }
            }
        }
        for (s, t) in self.systems.iter().tuple_combinations() {
            let shared: BTreeSet<usize> = s
                .pair
                .iter()
                .filter(|v| t.pair.contains(v))
                .copied()
                .collect();
            for p in &s.paths {
                let pv: BTreeSet<usize> = p.iter().copied().collect();
                for q in &t.paths {
                    let meet: BTreeSet<usize> =
                        q.iter().filter(|v| pv.contains(v)).copied().collect();
                    if meet != shared {
                        return Err(format!(
                            "paths {p:?} and {q:?} meet in {meet:?}, expected {shared:?}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Searches `k`-subsets in lexicographic order.
///
/// Paths are induced, so adjacent vertices are joined by a single path and
/// a strong block with `k ≥ 2` is a stable set. For each candidate set the
/// pairs are packed greedily by maximum flow, shortening every flow path to
/// an induced path inside its own vertex set; a candidate that passes the
/// necessary per-pair flow test but cannot be packed makes the overall
/// answer inconclusive rather than absent.
pub fn find_strong_block(g: &Graph, k: usize) -> Result<Outcome<StrongBlockWitness>> {
    if k > STRONG_BLOCK_MAX_K {
        return Err(Error::CapExceeded {
            what: "strong block order",
            size: k,
            cap: STRONG_BLOCK_MAX_K,
        });
    }
    if g.n() > STRONG_BLOCK_MAX_N {
        return Ok(Outcome::Inconclusive(format!(
            "{} vertices exceeds the strong-block cap of {STRONG_BLOCK_MAX_N}",
            g.n()
        )));
    }
    if k == 0 {
        return Ok(Outcome::Found(StrongBlockWitness {
            block: Vec::new(),
            systems: Vec::new(),
        }));
    }
    let mut undecided = None;
    for block in (0..g.n()).combinations(k) {
        if k >= 2 && !g.is_stable(block.iter()) {
            continue;
        }
        let pairs: Vec<(usize, usize)> = block.iter().copied().tuple_combinations().collect();
        // Every non-adjacent path has an interior vertex of its own.
        if pairs.len() * k > g.n() - k {
            continue;
        }
        let others = |x: usize, y: usize| {
            let mut allowed = g.bits();
            allowed.insert_range(..);
            for &b in &block {
                if b != x && b != y {
                    allowed.set(b, false);
                }
            }
            allowed
        };
        let feasible = pairs.iter().all(|&(x, y)| {
            vertex_disjoint_paths(g, x, y, &others(x, y), k).0.len() >= k
        });
        if !feasible {
            continue;
        }
        for order in pairs.iter().copied().permutations(pairs.len()).take(ORDER_BUDGET) {
            if let Some(systems) = pack(g, &block, &order, k) {
                let w = StrongBlockWitness {
                    block: block.clone(),
                    systems,
                };
                w.validate(g, k).expect("packed block validates");
                return Ok(Outcome::Found(w));
            }
        }
        undecided.get_or_insert(block);
    }
    Ok(match undecided {
        Some(b) => Outcome::Inconclusive(format!(
            "{b:?} passes the per-pair flow test but greedy packing failed"
        )),
        None => Outcome::Absent,
    })
}

fn pack(g: &Graph, block: &[usize], order: &[(usize, usize)], k: usize) -> Option<Vec<PairPaths>> {
    let mut allowed = g.bits();
    allowed.insert_range(..);
    for &b in block {
        allowed.set(b, false);
    }
    let mut out = Vec::with_capacity(order.len());
    for &(x, y) in order {
        let (paths, _) = vertex_disjoint_paths(g, x, y, &allowed, k);
        if paths.len() < k {
            return None;
        }
        let mut target = g.bits();
        target.insert(y);
        let mut induced = Vec::with_capacity(k);
        for p in paths {
            let through = g.bits_of(&p[1..p.len() - 1]);
            let q = g.shortest_path_through(x, &target, &through)?;
            for &v in &q[1..q.len() - 1] {
                allowed.set(v, false);
            }
            induced.push(q);
        }
        induced.sort();
        out.push(PairPaths {
            pair: [x, y],
            paths: induced,
        });
    }
    out.sort_by_key(|s| s.pair);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_has_an_opposite_pair() {
        match find_strong_block(&Graph::cycle(4), 2).unwrap() {
            Outcome::Found(w) => {
                assert_eq!(w.block, vec![0, 2]);
                w.validate(&Graph::cycle(4), 2).unwrap();
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trees_have_none() {
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(find_strong_block(&tree, 2).unwrap(), Outcome::Absent);
    }

    #[test]
    fn cross_pair_overlap_rejected() {
        let g = Graph::complete_bipartite(3, 3);
        let w = StrongBlockWitness {
            block: vec![0, 1],
            systems: vec![PairPaths {
                pair: [0, 1],
                paths: vec![vec![0, 3, 1], vec![0, 3, 1]],
            }],
        };
        assert!(w.validate(&g, 2).is_err());
    }
}
