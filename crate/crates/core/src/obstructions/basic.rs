//! Induced subdivisions of walls and line graphs of such subdivisions, by
//! subset enumeration on small hosts.

use itertools::Itertools;

use crate::error::Result;
use crate::generators::make_wall;
use crate::graph::Graph;

/// Largest host searched for wall-type obstructions.
pub const BASIC_SEARCH_MAX_N: usize = 16;

/// The multigraph left after suppressing every degree-2 vertex, as a
/// multiplicity matrix over the degree-3 vertices. `None` unless all
/// degrees are 2 or 3, at least one is 3, and the graph is connected.
fn suppressed(h: &Graph) -> Option<Vec<Vec<u8>>> {
    if h.n() == 0 || !h.is_connected() || (0..h.n()).any(|v| !(2..=3).contains(&h.degree(v))) {
        return None;
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == 3).collect();
    if branch.is_empty() {
        return None;
    }
    let mut index = vec![usize::MAX; h.n()];
    for (i, &v) in branch.iter().enumerate() {
        index[v] = i;
    }
    let mut m = vec![vec![0u8; branch.len()]; branch.len()];
    for &s in &branch {
        for &first in h.neighbors(s) {
            let (mut prev, mut cur) = (s, first);
            while h.degree(cur) == 2 {
                let next = h.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
                (prev, cur) = (cur, next);
            }
            m[index[s]][index[cur]] += 1;
        }
    }
    // Threads between distinct branch vertices are counted once in each
    // direction; loops are counted twice on the diagonal, consistently.
    Some(m)
}

fn isomorphic(a: &[Vec<u8>], b: &[Vec<u8>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut sig_a: Vec<Vec<u8>> = a.iter().map(|r| r.iter().copied().sorted().collect()).collect();
    let mut sig_b: Vec<Vec<u8>> = b.iter().map(|r| r.iter().copied().sorted().collect()).collect();
    sig_a.sort();
    sig_b.sort();
    if sig_a != sig_b {
        return false;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; a.len()];
    iso_rec(a, b, 0, &mut map, &mut used)
}

fn iso_rec(a: &[Vec<u8>], b: &[Vec<u8>], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.len() {
        return true;
    }
    for x in 0..b.len() {
        if used[x] || a[i][i] != b[x][x] {
            continue;
        }
        if (0..i).all(|j| a[i][j] == b[x][map[j]]) {
            map[i] = x;
            used[x] = true;
            if iso_rec(a, b, i + 1, map, used) {
                return true;
            }
            used[x] = false;
        }
    }
    false
}

/// Whether `h` is a subdivision of `w` (both without degree-1 vertices).
fn is_subdivision_of(h: &Graph, w: &[Vec<u8>]) -> bool {
    suppressed(h).is_some_and(|m| isomorphic(&m, w))
}

/// The root of `h` when `h` is the line graph of a triangle-free graph of
/// minimum degree at least two: every triangle of `h` is the star of a
/// root vertex and every other edge is the star of a degree-2 vertex.
fn line_graph_root(h: &Graph) -> Option<Graph> {
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut covered = std::collections::BTreeSet::new();
    for x in 0..h.n() {
        for &y in h.neighbors(x).iter().filter(|&&y| y > x) {
            for &z in h.neighbors(y).iter().filter(|&&z| z > y) {
                if h.adjacent(x, z) {
                    for e in [(x, y), (x, z), (y, z)] {
                        if !covered.insert(e) {
                            return None;
                        }
                    }
                    cliques.push(vec![x, y, z]);
                }
            }
        }
    }
    for (x, y) in h.edges() {
        if !covered.contains(&(x, y)) {
            cliques.push(vec![x, y]);
        }
    }
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (c, members) in cliques.iter().enumerate() {
        for &v in members {
            ends[v].push(c);
        }
    }
    let mut edges = Vec::with_capacity(h.n());
    for e in &ends {
        if e.len() != 2 {
            return None;
        }
        edges.push((e[0], e[1]));
    }
    Graph::from_edges(cliques.len(), edges).ok()
}

fn search(
    g: &Graph,
    t: usize,
    accept: impl Fn(&Graph, &[Vec<u8>]) -> bool,
    min: usize,
) -> Result<Option<Vec<usize>>> {
    let wall = suppressed(&make_wall(t)?).expect("walls with t ≥ 3 have branch vertices");
    for size in min..=g.n() {
        for subset in (0..g.n()).combinations(size) {
            if accept(&g.induced(&subset), &wall) {
                return Ok(Some(subset));
            }
        }
    }
    Ok(None)
}

/// An induced subdivision of `W_{t×t}` (`t ≥ 3`), as its vertex set.
pub fn find_wall_subdivision(g: &Graph, t: usize) -> Result<Option<Vec<usize>>> {
    let min = make_wall(t)?.n();
    search(g, t, is_subdivision_of, min)
}

/// An induced line graph of a subdivision of `W_{t×t}` (`t ≥ 3`).
pub fn find_wall_line_graph(g: &Graph, t: usize) -> Result<Option<Vec<usize>>> {
    let min = make_wall(t)?.edge_count();
    search(
        g,
        t,
        |h, w| line_graph_root(h).is_some_and(|r| is_subdivision_of(&r, w)),
        min,
    )
}
