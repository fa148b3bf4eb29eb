//! Small separators around a saturated rich strip-structure: between an
//! outside vertex and the structure, and between the apex and any vertex
//! not next to it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error as ThisError;

use super::constants::{jewel_bound, sigma_bound, Quantity};
use super::jewels::{obstruction_within, DistantJewels};
use super::seed::SeedFailure;
use crate::graph::{menger, Graph, GraphBuilder, MengerOutcome, Separation, VertexSet};
use crate::obstructions::Obstruction;
use crate::strips::{
    find_strip_jewels, validate_strip, Edge, JewelIndex, Place, SaturationError, StripStructure,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub name: String,
    pub value: Quantity,
}

/// Which construction produced `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SeparatorCase {
    /// `x ∈ ζ(e)`.
    Edge { edge: Edge },
    /// `x ∈ ζ(v)`.
    Vertex { vertex: usize },
    /// `x ∈ 𝒥_{ζ,v}`.
    Jewel { vertex: usize },
    /// `x` outside `ζ⁺(T) ∪ 𝒥_ζ`: the contraction argument.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorCertificate {
    pub source: usize,
    pub target: VertexSet,
    #[serde(rename = "S")]
    pub set: VertexSet,
    #[serde(rename = "L")]
    pub left: VertexSet,
    #[serde(rename = "R")]
    pub right: VertexSet,
    #[serde(flatten)]
    pub case: SeparatorCase,
    /// The named pieces `S` is assembled from (`E_x`, `I_x`, `O_v`, ...).
    pub parts: BTreeMap<String, VertexSet>,
    pub bound: Bound,
    /// `|S|` is below the bound; `None` when the bound is symbolic.
    pub within_bound: Option<bool>,
    pub verified: bool,
}

impl SeparatorCertificate {
    /// Re-checks the separation against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let sep = Separation {
            left: self.left.clone(),
            middle: self.set.clone(),
            right: self.right.clone(),
        };
        sep.verify(g)?;
        if !self.left.contains(&self.source) {
            return Err(format!("source {} is not in L", self.source));
        }
        if let Some(t) = self.target.iter().find(|t| !self.right.contains(t)) {
            return Err(format!("target {t} is not in R"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum SeparatorError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not an a-seed: {0}")]
    NotASeed(SeedFailure),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    /// The constructed set leaves a path from the source to a target; the
    /// hypotheses must fail somewhere.
    #[error("{set:?} does not separate: path {path:?} avoids it")]
    Crossing { set: VertexSet, path: Vec<usize> },
    /// Three internally disjoint paths from `x` to jewels at three tree
    /// vertices; two of those vertices are not adjacent in the tree.
    #[error("three disjoint routes from {x} reach jewels at tree vertices {centers:?}")]
    ThreeRoutes {
        x: usize,
        centers: Vec<usize>,
        distant: Option<DistantJewels>,
        witness: Option<Obstruction>,
    },
}

type Res<T> = std::result::Result<T, SeparatorError>;

fn pre<T>(msg: impl Into<String>) -> Res<T> {
    Err(SeparatorError::Precondition(msg.into()))
}

/// The checked hypotheses and the pieces the constructions share.
pub struct SeparatorContext<'a> {
    g: &'a Graph,
    s: &'a StripStructure,
    jewels: JewelIndex,
    t: usize,
    plus: VertexSet,
    all_jewels: VertexSet,
    at: Vec<VertexSet>,
    cliques: Vec<VertexSet>,
}

impl<'a> SeparatorContext<'a> {
    pub fn new(g: &'a Graph, s: &'a StripStructure, t: usize) -> Res<Self> {
        let jewels = find_strip_jewels(g, s);
        Self::with_jewels(g, s, jewels, t)
    }

    /// `jewels` must be `𝒥_ζ`, e.g. as returned by saturation.
    pub fn with_jewels(g: &'a Graph, s: &'a StripStructure, jewels: JewelIndex, t: usize) -> Res<Self> {
        let report = validate_strip(g, s).map_err(|v| SeparatorError::Precondition(v.to_string()))?;
        if !report.rich {
            return pre("the strip-structure is not rich");
        }
        let plus = s.support_plus();
        let all_jewels = jewels.all();
        if let Some(x) = all_jewels.iter().find(|x| plus.contains(x)) {
            return pre(format!("jewel {x} lies in ζ⁺(T)"));
        }
        for x in (0..g.n()).filter(|x| !plus.contains(x) && !all_jewels.contains(x)) {
            if let Some(y) = g.neighbors(x).iter().find(|y| plus.contains(y)) {
                return pre(format!(
                    "residual vertex {x} is adjacent to {y} in ζ⁺(T); saturate first"
                ));
            }
        }
        let n = s.tree.n();
        let at = (0..n).map(|v| jewels.at_vertex(v)).collect();
        let cliques = (0..n).map(|v| first_maximal_clique(g, &s.bag(v))).collect();
        Ok(SeparatorContext { g, s, jewels, t, plus, all_jewels, at, cliques })
    }

    pub fn jewels(&self) -> &JewelIndex {
        &self.jewels
    }

    /// `δ`, the maximum degree of `T`.
    pub fn delta(&self) -> usize {
        self.s.tree.max_degree()
    }

    /// `K_v`.
    pub fn clique(&self, v: usize) -> &VertexSet {
        &self.cliques[v]
    }

    /// `C_v`: `B(v)` at a leaf, empty elsewhere.
    fn c(&self, v: usize) -> VertexSet {
        if self.s.tree.is_leaf(v) {
            self.s.bag(v)
        } else {
            VertexSet::new()
        }
    }

    fn tree_neighbors(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&v| self.s.tree.graph().neighbors(v).iter().copied())
            .filter(|w| !set.contains(w))
            .collect()
    }

    /// `𝓜_S`.
    fn m(&self, set: &BTreeSet<usize>) -> VertexSet {
        self.tree_neighbors(set).into_iter().flat_map(|w| self.at[w].clone()).collect()
    }

    /// `𝓝_S`.
    fn n(&self, set: &BTreeSet<usize>) -> VertexSet {
        self.tree_neighbors(set).into_iter().flat_map(|w| self.cliques[w].clone()).collect()
    }

    fn certify(
        &self,
        source: usize,
        target: VertexSet,
        set: VertexSet,
        case: SeparatorCase,
        parts: BTreeMap<String, VertexSet>,
        bound: Bound,
    ) -> Res<SeparatorCertificate> {
        let g = self.g;
        let Some(sep) = Separation::separating(g, &set, &VertexSet::from([source]), &target) else {
            let mut allowed = g.bits();
            allowed.insert_range(..);
            set.iter().for_each(|&v| allowed.set(v, false));
            let path = g
                .shortest_path_through(source, &g.bits_of(&target), &allowed)
                .unwrap_or_default();
            return Err(SeparatorError::Crossing { set, path });
        };
        let within_bound = bound.value.exceeds(set.len());
        let mut cert = SeparatorCertificate {
            source,
            target,
            set,
            left: sep.left,
            right: sep.right,
            case,
            parts,
            bound,
            within_bound,
            verified: false,
        };
        cert.verified = cert.verify(g).is_ok();
        Ok(cert)
    }

    /// A set of fewer than `2j(t, δ)` vertices outside `ζ⁺(T) ∪ {x}`
    /// separating `x` from `ζ⁺(T)` and from the jewels it does not contain.
    /// Jewels at each tree vertex are contracted to one vertex, all of those
    /// are joined to a new vertex `z`, and a cut of size at most two between
    /// `x` and `z` is expanded back.
    pub fn jewel_separator(&self, x: usize) -> Res<SeparatorCertificate> {
        let g = self.g;
        g.check_vertex(x).map_err(|e| SeparatorError::Precondition(e.to_string()))?;
        if self.plus.contains(&x) || self.all_jewels.contains(&x) {
            return pre(format!("{x} lies in ζ⁺(T) or is a jewel"));
        }
        let outside: Vec<usize> = (0..g.n())
            .filter(|v| !self.plus.contains(v) && !self.all_jewels.contains(v))
            .collect();
        let centers: Vec<usize> = (0..self.s.tree.n()).filter(|&v| !self.at[v].is_empty()).collect();
        // Node ids: outside vertices first, then one per jewel class, then z.
        let mut node = vec![usize::MAX; g.n()];
        for (i, &v) in outside.iter().enumerate() {
            node[v] = i;
        }
        for (k, &c) in centers.iter().enumerate() {
            for &j in &self.at[c] {
                node[j] = outside.len() + k;
            }
        }
        let z = outside.len() + centers.len();
        let mut b = GraphBuilder::new(z + 1);
        for (u, v) in g.edges() {
            let (nu, nv) = (node[u], node[v]);
            if nu != usize::MAX && nv != usize::MAX && nu != nv {
                b.add_edge(nu, nv);
            }
        }
        for k in 0..centers.len() {
            b.add_edge(outside.len() + k, z);
        }
        let aux = b.build();
        let cut = match menger(&aux, node[x], z, 3).map_err(|e| SeparatorError::Precondition(e.to_string()))? {
            MengerOutcome::Separator { set, .. } => set,
            MengerOutcome::Paths(ps) => {
                let reached: Vec<usize> = ps
                    .paths
                    .iter()
                    .map(|p| centers[p.vertices()[p.length() - 1] - outside.len()])
                    .collect();
                let distant = super::jewels::check_distant_jewels(g, self.s, &self.jewels).err();
                let witness = distant.as_ref().and_then(|d| {
                    let mut within: VertexSet = d.path.iter().copied().collect();
                    within.extend(self.plus.iter());
                    obstruction_within(g, &within)
                });
                return Err(SeparatorError::ThreeRoutes { x, centers: reached, distant, witness });
            }
        };
        let mut set = VertexSet::new();
        let mut y = VertexSet::new();
        for c in cut {
            if c >= outside.len() {
                let v = centers[c - outside.len()];
                y.insert(v);
                set.extend(&self.at[v]);
            } else {
                set.insert(outside[c]);
            }
        }
        let mut target = self.plus.clone();
        target.extend(self.all_jewels.difference(&set));
        let parts = BTreeMap::from([
            ("Y_contracted".to_string(), y),
            ("S_x".to_string(), set.clone()),
        ]);
        let delta = self.delta();
        let bound = Bound {
            name: format!("2·j({}, {delta})", self.t),
            value: Quantity::exact(2).mul(&jewel_bound(self.t, delta)),
        };
        self.certify(x, target, set, SeparatorCase::External, parts, bound)
    }

    /// A set of fewer than `σ(t, δ)` vertices separating the apex from
    /// `x ∉ N[a]`, by the case split on where `x` lies.
    pub fn apex_separator(&self, x: usize) -> Res<SeparatorCertificate> {
        let (g, s) = (self.g, self.s);
        g.check_vertex(x).map_err(|e| SeparatorError::Precondition(e.to_string()))?;
        let a = s.apex;
        if x == a || g.adjacent(x, a) {
            return pre(format!("{x} lies in N[a]"));
        }
        let delta = self.delta();
        let bound = Bound {
            name: format!("σ({}, {delta})", self.t),
            value: sigma_bound(self.t, delta),
        };
        let one = |v: usize| BTreeSet::from([v]);
        let (set, case, parts) = if let Some(place) = s.place_of(x) {
            match place {
                Place::Edge(e) => {
                    let (u, v) = e;
                    let mut ex = self.m(&one(u));
                    ex.extend(self.m(&one(v)));
                    let mut ix = self.n(&BTreeSet::from([u, v]));
                    ix.extend(self.c(u));
                    ix.extend(self.c(v));
                    let set: VertexSet = ex.union(&ix).copied().collect();
                    (set, SeparatorCase::Edge { edge: e }, [("E_x", ex), ("I_x", ix)])
                }
                Place::Vertex(v) => {
                    let mut ex = self.m(&one(v));
                    ex.extend(&self.at[v]);
                    let ix = self.n(&one(v));
                    let set: VertexSet = ex.union(&ix).copied().collect();
                    (set, SeparatorCase::Vertex { vertex: v }, [("E_x", ex), ("I_x", ix)])
                }
            }
        } else if self.all_jewels.contains(&x) {
            let v = (0..s.tree.n()).find(|&v| self.at[v].contains(&x)).unwrap();
            let (mv, nv) = (self.m(&one(v)), self.n(&one(v)));
            let set: VertexSet = mv.union(&nv).copied().collect();
            (set, SeparatorCase::Jewel { vertex: v }, [("M_v", mv), ("N_v", nv)])
        } else {
            let inner = self.jewel_separator(x)?;
            let parts = inner.parts.clone();
            return self.certify(a, VertexSet::from([x]), inner.set, SeparatorCase::External, parts, bound);
        };
        if set.contains(&x) {
            return Err(SeparatorError::Crossing { set, path: vec![a, x] });
        }
        let parts = parts.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self.certify(a, VertexSet::from([x]), set, case, parts, bound)
    }
}

/// The lexicographically first maximal clique of `G[set]`: greedily add
/// vertices in ascending order.
pub fn first_maximal_clique(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut k = VertexSet::new();
    for &v in set {
        if k.iter().all(|&u| g.adjacent(u, v)) {
            k.insert(v);
        }
    }
    k
}

pub fn jewel_separator(g: &Graph, s: &StripStructure, x: usize, t: usize) -> Res<SeparatorCertificate> {
    SeparatorContext::new(g, s, t)?.jewel_separator(x)
}

pub fn apex_separator(g: &Graph, s: &StripStructure, x: usize, t: usize) -> Res<SeparatorCertificate> {
    SeparatorContext::new(g, s, t)?.apex_separator(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_config;
    use crate::obstructions::{ConfigKind, Configuration, PyramidEmbedding};
    use crate::strips::{canonical_pyramid_strip, edge, tree_strip, RungTable, Seagull, SmoothTree};

    fn pyramid(lengths: [usize; 3]) -> (Graph, PyramidEmbedding) {
        match make_config(ConfigKind::Pyramid, lengths).unwrap() {
            (g, Configuration::Pyramid(p)) => (g, p),
            _ => unreachable!(),
        }
    }

    #[test]
    fn base_vertex_is_cut_off_by_the_apex_neighbours() {
        let (g, p) = pyramid([3, 3, 3]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let ctx = SeparatorContext::new(&g, &s, 4).unwrap();
        let na: VertexSet = g.neighbors(p.apex).iter().copied().collect();
        for i in 0..3 {
            let cert = ctx.apex_separator(p.base[i]).unwrap();
            assert_eq!(cert.case, SeparatorCase::Edge { edge: edge(0, i + 1) });
            assert_eq!(cert.set, na);
            assert!(cert.verified);
            assert_eq!(cert.within_bound, Some(true));
            assert_eq!(cert.bound.value, Quantity::exact(2 * 3 * (3 * 9 + 4)));
        }
        assert!(matches!(
            ctx.apex_separator(p.paths[0].vertices()[1]),
            Err(SeparatorError::Precondition(_))
        ));
    }

    /// A `[4,4,4]` pyramid with a jewel `x` at the centre and `y` hanging
    /// off `x`.
    fn jewel_with_tail() -> (Graph, PyramidEmbedding, usize, usize) {
        let (g, p) = pyramid([4, 4, 4]);
        let x = g.n();
        let g = g.with_vertex(&[p.base[0], p.base_neighbor(0), p.base[1], p.base_neighbor(1)]);
        let y = g.n();
        (g.with_vertex(&[x]), p, x, y)
    }

    #[test]
    fn jewel_and_its_tail() {
        let (g, p, x, y) = jewel_with_tail();
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let ctx = SeparatorContext::new(&g, &s, 4).unwrap();
        assert_eq!(ctx.jewels().all(), VertexSet::from([x]));

        let cert = ctx.apex_separator(x).unwrap();
        assert_eq!(cert.case, SeparatorCase::Jewel { vertex: 0 });
        let na: VertexSet = g.neighbors(p.apex).iter().copied().collect();
        assert_eq!(cert.set, na);
        assert!(cert.verified);

        let inner = ctx.jewel_separator(y).unwrap();
        assert_eq!(inner.set, VertexSet::from([x]));
        assert!(inner.verified);
        assert_eq!(inner.bound.value, Quantity::exact(2 * 27));
        let outer = ctx.apex_separator(y).unwrap();
        assert_eq!(outer.case, SeparatorCase::External);
        assert_eq!(outer.set, VertexSet::from([x]));
    }

    #[test]
    fn isolated_vertex_needs_nothing() {
        let (g, p) = pyramid([3, 3, 3]);
        let g = g.with_vertex(&[]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let cert = jewel_separator(&g, &s, g.n() - 1, 4).unwrap();
        assert!(cert.set.is_empty() && cert.verified);
    }

    #[test]
    fn unsaturated_input_is_refused() {
        let (g, p) = pyramid([3, 3, 3]);
        let g = g.with_vertex(&[p.paths[0].vertices()[2]]);
        let s = canonical_pyramid_strip(&g, &p).unwrap();
        let err = SeparatorContext::new(&g, &s, 4).err().unwrap();
        assert!(err.to_string().contains("saturate"), "{err}");
    }

    #[test]
    fn three_jewel_classes_reached_disjointly() {
        let t = SmoothTree::new(
            Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (3, 7)]).unwrap(),
        )
        .unwrap();
        let (g, s) = tree_strip(&t, 2).unwrap();
        let table = RungTable::new(&g, &s);
        let contacts = |sg: Seagull| {
            let mut nbrs = Vec::new();
            for e in sg.edges {
                let path = table.get(e).rungs[0].from_end(sg.center);
                nbrs.extend([path[0], path[1]]);
            }
            nbrs
        };
        let mut b = GraphBuilder::from_graph(&g);
        let x = b.add_vertex();
        for sg in [
            Seagull::new(1, edge(0, 1), edge(1, 4)),
            Seagull::new(2, edge(1, 2), edge(2, 5)),
            Seagull::new(3, edge(3, 6), edge(3, 7)),
        ] {
            let j = b.add_vertex();
            for v in contacts(sg) {
                b.add_edge(j, v);
            }
            b.add_edge(j, x);
        }
        let g2 = b.build();
        let ctx = SeparatorContext::new(&g2, &s, 4).unwrap();
        match ctx.jewel_separator(x) {
            Err(SeparatorError::ThreeRoutes { centers, distant, .. }) => {
                assert_eq!(centers.len(), 3);
                assert_eq!(distant.unwrap().centers, [1, 3]);
            }
            other => panic!("expected three routes, got {other:?}"),
        }
    }

    #[test]
    fn first_maximal_clique_is_greedy() {
        let g = Graph::from_edges(4, [(0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(first_maximal_clique(&g, &(0..4).collect()), VertexSet::from([0, 2]));
        assert_eq!(first_maximal_clique(&g, &VertexSet::from([1, 2, 3])), VertexSet::from([1, 2, 3]));
    }
}
