//! Isomorphism classes of small graphs, by vertex augmentation and a
//! refinement-based canonical form.
//!
//! Graphs are at most [`MAX_N`] vertices so that adjacency rows fit in a
//! `u16` and the upper triangle fits in a `u64`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_N: usize = 11;

type Rows = [u16; MAX_N];

fn rows(g: &Graph) -> Rows {
    let mut r = [0u16; MAX_N];
    for (u, v) in g.edges() {
        r[u] |= 1 << v;
        r[v] |= 1 << u;
    }
    r
}

/// Upper triangle read column by column: bit `k` of the code is the pair
/// `(i, j)`, `i < j`, with `k = j(j-1)/2 + i`, under relabelling `order`.
fn code(adj: &Rows, order: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut k = 0;
    for j in 1..order.len() {
        for i in 0..j {
            if adj[order[i] as usize] >> order[j] & 1 == 1 {
                out |= 1 << k;
            }
            k += 1;
        }
    }
    out
}

/// Splits cells by neighbour counts into every other cell until stable.
fn refine(adj: &Rows, cells: &mut Vec<Vec<u8>>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mask: u16 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, u8)> = cell
                    .iter()
                    .map(|&v| ((adj[v as usize] & mask).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
            }
            *cells = next;
            s += 1;
        }
    }
}

fn twins(adj: &Rows, u: u8, v: u8) -> bool {
    let mask = !((1u16 << u) | (1u16 << v));
    adj[u as usize] & mask == adj[v as usize] & mask
}

fn search(adj: &Rows, cells: Vec<Vec<u8>>, best: &mut Option<u64>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let c = code(adj, &order);
        if best.is_none_or(|b| c < b) {
            *best = Some(c);
        }
        return;
    };
    let mut tried: Vec<u8> = Vec::new();
    for &v in &cells[target] {
        // Swapping twins is an automorphism fixing the partition.
        if tried.iter().any(|&u| twins(adj, u, v)) {
            continue;
        }
        tried.push(v);
        let mut split = Vec::with_capacity(cells.len() + 1);
        split.extend_from_slice(&cells[..target]);
        split.push(vec![v]);
        split.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        refine(adj, &mut split);
        search(adj, split, best);
    }
}

/// An isomorphism invariant that determines the graph up to isomorphism.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "canonical form",
            size: n,
            cap: MAX_N,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = rows(g);
    let mut cells = vec![(0..n as u8).collect::<Vec<_>>()];
    refine(&adj, &mut cells);
    let mut best = None;
    search(&adj, cells, &mut best);
    Ok(best.expect("search reaches a leaf"))
}

/// Decodes a canonical code back into a graph on `n` vertices.
pub fn from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("codes describe simple graphs")
}

/// One representative per isomorphism class of graphs on `n` vertices, in
/// increasing order of canonical code.
pub fn graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to(n)?.pop().unwrap_or_default())
}

/// Representatives on `0..=n` vertices, indexed by vertex count.
pub fn graphs_up_to(n: usize) -> Result<Vec<Vec<Graph>>> {
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "graph enumeration",
            size: n,
            cap: MAX_N,
        });
    }
    let mut levels = vec![vec![Graph::empty(0)]];
    for m in 1..=n {
        let mut seen = HashSet::new();
        for parent in &levels[m - 1] {
            let base = rows(parent);
            for subset in 0u16..1 << (m - 1) {
                let mut adj = base;
                adj[m - 1] = subset;
                for u in 0..m - 1 {
                    if subset >> u & 1 == 1 {
                        adj[u] |= 1 << (m - 1);
                    }
                }
                let mut cells = vec![(0..m as u8).collect::<Vec<_>>()];
                refine(&adj, &mut cells);
                let mut best = None;
                search(&adj, cells, &mut best);
                seen.insert(best.unwrap());
            }
        }
        let mut codes: Vec<u64> = seen.into_iter().collect();
        codes.sort_unstable();
        levels.push(codes.into_iter().map(|c| from_code(m, c)).collect());
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_the_known_sequence() {
        let counts: Vec<usize> = graphs_up_to(7).unwrap().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn relabelled_graphs_share_a_code() {
        let a = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let b = Graph::from_edges(5, [(4, 3), (3, 2), (2, 1), (1, 0), (0, 4), (4, 2)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
        assert_ne!(
            canonical_code(&a).unwrap(),
            canonical_code(&Graph::cycle(5)).unwrap()
        );
    }

    #[test]
    fn decoding_inverts_encoding_up_to_isomorphism() {
        let g = Graph::complete_bipartite(2, 3);
        let c = canonical_code(&g).unwrap();
        assert_eq!(canonical_code(&from_code(5, c)).unwrap(), c);
    }
}
