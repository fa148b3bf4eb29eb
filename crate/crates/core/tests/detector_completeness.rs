//! Detectors against naive all-subsets oracles on every small graph.

use tpfree::enumerate::graphs_up_to;
use tpfree::obstructions::{find_prism, find_pyramid, find_theta};
use tpfree::Graph;

struct Small {
    n: usize,
    adj: Vec<u16>,
}

impl Small {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
            .collect();
        Small { n: g.n(), adj }
    }

    fn deg(&self, v: usize, s: u16) -> u32 {
        (self.adj[v] & s).count_ones()
    }

    fn members(s: u16) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&v| s >> v & 1 == 1)
    }

    /// Components of the graph on `s` using only adjacency `adj`.
    fn components(adj: &[u16], s: u16) -> Vec<u16> {
        let mut left = s;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grown = Self::members(comp).fold(comp, |m, v| m | (adj[v] & s));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn connected(&self, s: u16) -> bool {
        Self::components(&self.adj, s).len() == 1
    }

    fn triangles(&self, s: u16) -> Vec<u16> {
        let mut out = Vec::new();
        for x in Self::members(s) {
            for y in Self::members(self.adj[x] & s).filter(|&y| y > x) {
                for z in Self::members(self.adj[x] & self.adj[y] & s).filter(|&z| z > y) {
                    out.push(1 << x | 1 << y | 1 << z);
                }
            }
        }
        out
    }

    fn is_theta(&self, s: u16) -> bool {
        let three: Vec<usize> = Self::members(s).filter(|&v| self.deg(v, s) == 3).collect();
        if three.len() != 2 || Self::members(s).any(|v| !(2..=3).contains(&self.deg(v, s))) {
            return false;
        }
        let (a, b) = (three[0], three[1]);
        if self.adj[a] >> b & 1 == 1 || !self.connected(s) {
            return false;
        }
        let rest = s & !(1 << a | 1 << b);
        let comps = Self::components(&self.adj, rest);
        comps.len() == 3 && comps.iter().all(|&c| self.adj[a] & c != 0 && self.adj[b] & c != 0)
    }

    /// Adjacency with the edges inside each of `cliques` removed.
    fn without_edges_in(&self, cliques: &[u16]) -> Vec<u16> {
        (0..self.n)
            .map(|v| {
                let mut row = self.adj[v];
                for &c in cliques {
                    if c >> v & 1 == 1 {
                        row &= !c;
                    }
                }
                row
            })
            .collect()
    }

    fn is_prism(&self, s: u16) -> bool {
        if Self::members(s).any(|v| !(2..=3).contains(&self.deg(v, s))) || !self.connected(s) {
            return false;
        }
        let tris = self.triangles(s);
        if tris.len() != 2 || tris[0] & tris[1] != 0 {
            return false;
        }
        let three: u16 = Self::members(s)
            .filter(|&v| self.deg(v, s) == 3)
            .fold(0, |m, v| m | 1 << v);
        if three != tris[0] | tris[1] {
            return false;
        }
        let adj = self.without_edges_in(&tris);
        let comps = Self::components(&adj, s);
        comps.len() == 3
            && comps
                .iter()
                .all(|&c| (c & tris[0]).count_ones() == 1 && (c & tris[1]).count_ones() == 1)
    }

    fn is_pyramid(&self, s: u16) -> bool {
        if Self::members(s).any(|v| !(2..=3).contains(&self.deg(v, s))) {
            return false;
        }
        let tris = self.triangles(s);
        if tris.len() != 1 {
            return false;
        }
        let three: Vec<usize> = Self::members(s).filter(|&v| self.deg(v, s) == 3).collect();
        if three.len() != 4 {
            return false;
        }
        let adj = self.without_edges_in(&tris);
        let edges: u32 = Self::members(s).map(|v| (adj[v] & s).count_ones()).sum::<u32>() / 2;
        let leaves: u16 = Self::members(s)
            .filter(|&v| (adj[v] & s).count_ones() == 1)
            .fold(0, |m, v| m | 1 << v);
        Self::components(&adj, s).len() == 1 && edges + 1 == s.count_ones() && leaves == tris[0]
    }

    fn any(&self, min: u32, test: impl Fn(&Self, u16) -> bool) -> bool {
        (0u16..1 << self.n).any(|s| s.count_ones() >= min && test(self, s))
    }
}

#[test]
fn oracle_recognises_the_minimal_configurations() {
    let k23 = Small::new(&Graph::complete_bipartite(2, 3));
    assert!(k23.is_theta(0b11111));
    let prism = Graph::from_edges(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    assert!(Small::new(&prism).is_prism(0b111111));
    assert!(!Small::new(&prism).is_pyramid(0b111111));
    let pyramid =
        Graph::from_edges(6, [(1, 2), (2, 3), (1, 3), (0, 1), (0, 4), (4, 2), (0, 5), (5, 3)])
            .unwrap();
    assert!(Small::new(&pyramid).is_pyramid(0b111111));
}

#[test]
fn theta_detector_is_complete_up_to_eight_vertices() {
    let mut checked = 0;
    for level in graphs_up_to(8).unwrap() {
        for g in level {
            let oracle = Small::new(&g).any(5, Small::is_theta);
            let found = find_theta(&g, false);
            if let Some(w) = found.clone().found() {
                w.validate(&g).unwrap();
            }
            assert_eq!(found.is_found(), oracle, "theta disagreement on {:?}", g.edges());
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044 + 12346);
}

#[test]
fn prism_and_pyramid_detectors_are_complete_up_to_nine_vertices() {
    let mut counts = [0usize; 2];
    for level in graphs_up_to(9).unwrap() {
        for g in level {
            let small = Small::new(&g);
            let prism = find_prism(&g, false);
            if let Some(w) = prism.clone().found() {
                w.validate(&g).unwrap();
                counts[0] += 1;
            }
            assert_eq!(
                prism.is_found(),
                small.any(6, Small::is_prism),
                "prism disagreement on {:?}",
                g.edges()
            );
            let pyramid = find_pyramid(&g, false);
            if let Some(w) = pyramid.clone().found() {
                w.validate(&g).unwrap();
                counts[1] += 1;
            }
            assert_eq!(
                pyramid.is_found(),
                small.any(6, Small::is_pyramid),
                "pyramid disagreement on {:?}",
                g.edges()
            );
        }
    }
    assert!(counts.iter().all(|&c| c > 0));
}
