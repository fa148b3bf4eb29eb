//! Vertex-disjoint paths by unit-capacity augmenting paths on the
//! vertex-split network.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Graph, PathSystem, Separation, VertexSet};
use crate::error::{Error, Result};

/// The two alternatives of Menger's theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MengerOutcome {
    Paths(PathSystem),
    Separator {
        set: VertexSet,
        separation: Separation,
    },
}

struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// One BFS augmentation; returns whether the sink was reached.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        false
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Up to `limit` internally disjoint `a`–`b` paths with interiors in
/// `allowed` (the direct edge `ab`, if present, counts as one path).
///
/// Returns the paths found and, when fewer than `limit` exist, a minimum
/// set of allowed vertices meeting every remaining `a`–`b` path.
pub fn vertex_disjoint_paths(
    g: &Graph,
    a: usize,
    b: usize,
    allowed: &FixedBitSet,
    limit: usize,
) -> (Vec<Vec<usize>>, Option<VertexSet>) {
    let inn = |v: usize| 2 * v;
    let out = |v: usize| 2 * v + 1;
    let mut net = Network::new(2 * g.n());
    for v in allowed.ones() {
        if v != a && v != b {
            net.arc(inn(v), out(v), 1);
        }
    }
    let usable = |v: usize| v == a || v == b || allowed.contains(v);
    for (u, v) in g.edges() {
        if !usable(u) || !usable(v) {
            continue;
        }
        for (x, y) in [(u, v), (v, u)] {
            if x != b && y != a {
                // Only the edge ab can carry a path on its own; every other
                // arc is bounded by the vertex arcs around it.
                let cap = if x == a && y == b { 1 } else { u32::MAX / 2 };
                net.arc(out(x), inn(y), cap);
            }
        }
    }
    let (s, t) = (out(a), inn(b));
    let mut flow = 0;
    while flow < limit && net.augment(s, t) {
        flow += 1;
    }

    // Forward arcs sit at even indices; flow shows as capacity on the twin.
    let mut paths = Vec::with_capacity(flow);
    let mut used = vec![false; net.to.len()];
    for _ in 0..flow {
        let mut path = vec![a];
        let mut node = s;
        while node != t {
            let e = net.head[node]
                .iter()
                .copied()
                .find(|&e| e % 2 == 0 && net.cap[e ^ 1] > 0 && !used[e])
                .expect("flow conservation");
            used[e] = true;
            node = net.to[e];
            if node % 2 == 0 {
                path.push(node / 2);
                if node != t {
                    node += 1;
                }
            }
        }
        paths.push(path);
    }

    let cut = (flow < limit).then(|| {
        let seen = net.reachable(s);
        allowed
            .ones()
            .filter(|&v| v != a && v != b && seen[inn(v)] && !seen[out(v)])
            .collect()
    });
    (paths, cut)
}

/// Either `k` internally disjoint induced `a`–`b` paths or a separator of
/// size less than `k` between the non-adjacent vertices `a` and `b`.
pub fn menger(g: &Graph, a: usize, b: usize, k: usize) -> Result<MengerOutcome> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(Error::precondition("a and b must be distinct"));
    }
    if g.adjacent(a, b) {
        return Err(Error::precondition(format!("{a} and {b} are adjacent")));
    }
    let mut allowed = g.bits();
    allowed.insert_range(..);
    let (paths, cut) = vertex_disjoint_paths(g, a, b, &allowed, k);
    match cut {
        None => {
            let mut target = g.bits();
            target.insert(b);
            let induced = paths
                .into_iter()
                .map(|p| {
                    let through = g.bits_of(&p[1..p.len() - 1]);
                    g.shortest_path_through(a, &target, &through)
                        .expect("a path exists inside its own vertex set")
                })
                .collect();
            Ok(MengerOutcome::Paths(PathSystem::new(g, a, b, induced)?))
        }
        Some(set) => {
            let separation = Separation::separating(
                g,
                &set,
                &VertexSet::from([a]),
                &VertexSet::from([b]),
            )
            .expect("a minimum cut separates");
            separation
                .verify(g)
                .expect("separation from a minimum cut is valid");
            Ok(MengerOutcome::Separator { set, separation })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_vertex_of_a_path() {
        let g = Graph::path(3);
        match menger(&g, 0, 2, 2).unwrap() {
            MengerOutcome::Separator { set, .. } => assert_eq!(set, VertexSet::from([1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn four_cycle() {
        // a=0, x=1, b=2, y=3
        let g = Graph::cycle(4);
        match menger(&g, 0, 2, 2).unwrap() {
            MengerOutcome::Paths(ps) => {
                let v: Vec<_> = ps.paths.iter().map(|p| p.vertices().to_vec()).collect();
                assert_eq!(v.len(), 2);
                assert!(v.contains(&vec![0, 1, 2]) && v.contains(&vec![0, 3, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
        match menger(&g, 0, 2, 3).unwrap() {
            MengerOutcome::Separator { set, .. } => assert_eq!(set, VertexSet::from([1, 3])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adjacent_ends_rejected() {
        assert!(matches!(
            menger(&Graph::path(2), 0, 1, 1),
            Err(Error::Precondition(_))
        ));
    }
}
