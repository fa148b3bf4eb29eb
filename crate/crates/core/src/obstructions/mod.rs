//! Detectors for the forbidden configurations and class membership.

mod basic;
mod block;
mod clique;
mod configs;
mod induced;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use basic::{find_wall_line_graph, find_wall_subdivision, BASIC_SEARCH_MAX_N};
pub use block::{
    find_strong_block, PairPaths, StrongBlockWitness, STRONG_BLOCK_MAX_K, STRONG_BLOCK_MAX_N,
};
pub use clique::{contains_induced, embed_induced, find_biclique, find_clique, INDUCED_PATTERN_CAP};
pub use configs::{PrismEmbedding, PyramidEmbedding, ThetaEmbedding};

/// Exhaustive theta search is refused above this many vertices unless forced.
pub const THETA_CAP: usize = 14;
pub const PYRAMID_CAP: usize = 14;
pub const PRISM_CAP: usize = 16;

/// Result of a search that may be cut short by a size cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome<T> {
    Found(T),
    Absent,
    Inconclusive(String),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Absent => Outcome::Absent,
            Outcome::Inconclusive(s) => Outcome::Inconclusive(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigKind {
    Theta,
    Prism,
    Pyramid,
}

impl FromStr for ConfigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(ConfigKind::Theta),
            "prism" => Ok(ConfigKind::Prism),
            "pyramid" => Ok(ConfigKind::Pyramid),
            _ => Err(Error::invalid(format!("unknown configuration {s:?}"))),
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigKind::Theta => "theta",
            ConfigKind::Prism => "prism",
            ConfigKind::Pyramid => "pyramid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Configuration {
    Theta(ThetaEmbedding),
    Prism(PrismEmbedding),
    Pyramid(PyramidEmbedding),
}

impl Configuration {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        match self {
            Configuration::Theta(t) => t.validate(g),
            Configuration::Prism(p) => p.validate(g),
            Configuration::Pyramid(p) => p.validate(g),
        }
    }
}

/// A witness that a graph lies outside some class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    Theta(ThetaEmbedding),
    Prism(PrismEmbedding),
    Clique(Vec<usize>),
    Biclique { left: Vec<usize>, right: Vec<usize> },
    /// An induced copy of a pattern: `map[i]` is the image of pattern vertex `i`.
    Induced { map: Vec<usize> },
    WallSubdivision { vertices: Vec<usize> },
    WallLineGraph { vertices: Vec<usize> },
}

impl Obstruction {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = match self {
            Obstruction::Theta(t) => t.vertices().into_iter().collect(),
            Obstruction::Prism(p) => p.vertices().into_iter().collect(),
            Obstruction::Clique(c) => c.clone(),
            Obstruction::Biclique { left, right } => left.iter().chain(right).copied().collect(),
            Obstruction::Induced { map } => map.clone(),
            Obstruction::WallSubdivision { vertices } | Obstruction::WallLineGraph { vertices } => {
                vertices.clone()
            }
        };
        v.sort_unstable();
        v
    }

    /// Re-checks the structural claim against `g` (pattern-specific
    /// witnesses only re-check what they can without the pattern).
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        match self {
            Obstruction::Theta(t) => t.validate(g),
            Obstruction::Prism(p) => p.validate(g),
            Obstruction::Clique(c) => {
                if g.is_clique(c.iter()) {
                    Ok(())
                } else {
                    Err("not a clique".into())
                }
            }
            Obstruction::Biclique { left, right } => {
                let ok = g.is_stable(left.iter())
                    && g.is_stable(right.iter())
                    && left.iter().all(|&x| right.iter().all(|&y| g.adjacent(x, y)));
                if ok {
                    Ok(())
                } else {
                    Err("not an induced complete bipartite graph".into())
                }
            }
            Obstruction::Induced { map } => {
                if map.iter().all(|&v| v < g.n()) {
                    Ok(())
                } else {
                    Err("image vertex out of range".into())
                }
            }
            Obstruction::WallSubdivision { vertices } | Obstruction::WallLineGraph { vertices } => {
                if vertices.iter().all(|&v| v < g.n()) {
                    Ok(())
                } else {
                    Err("vertex out of range".into())
                }
            }
        }
    }
}

fn capped<T>(
    g: &Graph,
    cap: usize,
    force: bool,
    what: &str,
    search: impl FnOnce(&Graph) -> Option<T>,
) -> Outcome<T> {
    if g.n() > cap && !force {
        return Outcome::Inconclusive(format!(
            "{} vertices exceeds the {what} cap of {cap}; use force",
            g.n()
        ));
    }
    match search(g) {
        Some(t) => Outcome::Found(t),
        None => Outcome::Absent,
    }
}

pub fn find_theta(g: &Graph, force: bool) -> Outcome<ThetaEmbedding> {
    capped(g, THETA_CAP, force, "theta", induced::search_theta)
}

pub fn find_prism(g: &Graph, force: bool) -> Outcome<PrismEmbedding> {
    capped(g, PRISM_CAP, force, "prism", induced::search_prism)
}

pub fn find_pyramid(g: &Graph, force: bool) -> Outcome<PyramidEmbedding> {
    capped(g, PYRAMID_CAP, force, "pyramid", induced::search_pyramid)
}

/// Uncapped exhaustive searches, for internal use on instances known to be
/// small.
pub fn search_theta(g: &Graph) -> Option<ThetaEmbedding> {
    induced::search_theta(g)
}

pub fn search_prism(g: &Graph) -> Option<PrismEmbedding> {
    induced::search_prism(g)
}

pub fn search_pyramid(g: &Graph) -> Option<PyramidEmbedding> {
    induced::search_pyramid(g)
}

/// A theta or prism in `g`, if any (uncapped).
pub fn class_obstruction(g: &Graph) -> Option<Obstruction> {
    search_theta(g)
        .map(Obstruction::Theta)
        .or_else(|| search_prism(g).map(Obstruction::Prism))
}

/// A theta or prism inside `g[within]`, named by vertices of `g`.
pub fn class_obstruction_in(g: &Graph, within: &VertexSet) -> Option<Obstruction> {
    let vs: Vec<usize> = within.iter().copied().collect();
    let h = g.induced(&vs);
    search_theta(&h)
        .map(|t| Obstruction::Theta(t.relabel(&vs)))
        .or_else(|| search_prism(&h).map(|p| Obstruction::Prism(p.relabel(&vs))))
}

/// Membership in `𝒞`, `𝒞_t` and `𝒞_t(F)`, each negative answer with its
/// witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub in_c: Option<bool>,
    pub in_c_t: Option<bool>,
    pub in_c_t_f: Option<bool>,
    pub witnesses: Vec<Obstruction>,
    pub notes: Vec<String>,
}

pub fn class_membership(
    g: &Graph,
    t: usize,
    forest: Option<&Graph>,
    force: bool,
) -> Result<ClassReport> {
    if let Some(f) = forest {
        if !f.is_forest() {
            return Err(Error::invalid("F must be a forest"));
        }
    }
    let mut report = ClassReport {
        in_c: None,
        in_c_t: None,
        in_c_t_f: None,
        witnesses: Vec::new(),
        notes: Vec::new(),
    };
    let theta = find_theta(g, force);
    let prism = find_prism(g, force);
    report.in_c = match (&theta, &prism) {
        (Outcome::Found(_), _) | (_, Outcome::Found(_)) => Some(false),
        (Outcome::Absent, Outcome::Absent) => Some(true),
        _ => None,
    };
    for o in [theta.map(Obstruction::Theta), prism.map(Obstruction::Prism)] {
        match o {
            Outcome::Found(w) => report.witnesses.push(w),
            Outcome::Inconclusive(s) => report.notes.push(s),
            Outcome::Absent => {}
        }
    }
    let clique = find_clique(g, t);
    let no_clique = clique.is_none();
    if let Some(c) = clique {
        report.witnesses.push(Obstruction::Clique(c));
    }
    report.in_c_t = match report.in_c {
        Some(false) => Some(false),
        _ if !no_clique => Some(false),
        other => other,
    };
    if let Some(f) = forest {
        let copy = contains_induced(g, f)?;
        let f_free = copy.is_none();
        if let Some(map) = copy {
            report.witnesses.push(Obstruction::Induced { map });
        }
        report.in_c_t_f = match report.in_c_t {
            Some(false) => Some(false),
            _ if !f_free => Some(false),
            other => other,
        };
    }
    Ok(report)
}

/// Whether `g` contains a `t`-basic obstruction: `K_t`, `K_{t,t}`, a
/// subdivision of `W_{t×t}` or the line graph of one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cleanliness {
    Clean { reason: String },
    Dirty { witness: Obstruction },
    Inconclusive { reason: String },
}

pub fn is_t_clean(g: &Graph, t: usize) -> Result<Cleanliness> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    if let Some(c) = find_clique(g, t) {
        return Ok(Cleanliness::Dirty {
            witness: Obstruction::Clique(c),
        });
    }
    if t <= 2 {
        // Every other 2-basic obstruction contains an edge.
        return Ok(Cleanliness::Clean {
            reason: "no clique of size t".into(),
        });
    }
    let theta = find_theta(g, false);
    let prism = find_prism(g, false);
    if theta == Outcome::Absent && prism == Outcome::Absent {
        return Ok(Cleanliness::Clean {
            reason: "theta-free and prism-free with no K_t".into(),
        });
    }
    if let Some((a, b)) = find_biclique(g, t) {
        return Ok(Cleanliness::Dirty {
            witness: Obstruction::Biclique { left: a, right: b },
        });
    }
    if g.n() > BASIC_SEARCH_MAX_N {
        return Ok(Cleanliness::Inconclusive {
            reason: format!(
                "{} vertices exceeds the wall search cap of {BASIC_SEARCH_MAX_N}",
                g.n()
            ),
        });
    }
    if let Some(vertices) = find_wall_subdivision(g, t)? {
        return Ok(Cleanliness::Dirty {
            witness: Obstruction::WallSubdivision { vertices },
        });
    }
    if let Some(vertices) = find_wall_line_graph(g, t)? {
        return Ok(Cleanliness::Dirty {
            witness: Obstruction::WallLineGraph { vertices },
        });
    }
    Ok(Cleanliness::Clean {
        reason: "exhaustive search found no basic obstruction".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_config;

    #[test]
    fn detector_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        let th = find_theta(&k23, false).found().unwrap();
        th.validate(&k23).unwrap();

        let c8 = Graph::cycle(8);
        assert_eq!(find_prism(&c8, false), Outcome::Absent);
        assert_eq!(find_pyramid(&c8, false), Outcome::Absent);

        let (prism, _) = make_config(ConfigKind::Prism, [1, 1, 1]).unwrap();
        find_prism(&prism, false).found().unwrap().validate(&prism).unwrap();
        assert_eq!(find_theta(&prism, false), Outcome::Absent);

        let big = Graph::cycle(15);
        assert!(matches!(find_theta(&big, false), Outcome::Inconclusive(_)));
        assert_eq!(find_theta(&big, true), Outcome::Absent);
    }

    #[test]
    fn membership_examples() {
        let r = class_membership(&Graph::complete_bipartite(2, 3), 3, None, false).unwrap();
        assert_eq!(r.in_c, Some(false));
        assert!(matches!(r.witnesses[0], Obstruction::Theta(_)));

        let r = class_membership(&Graph::complete(4), 4, None, false).unwrap();
        assert_eq!((r.in_c, r.in_c_t), (Some(true), Some(false)));

        let r = class_membership(&Graph::cycle(6), 3, Some(&Graph::path(4)), false).unwrap();
        assert_eq!((r.in_c_t, r.in_c_t_f), (Some(true), Some(false)));
    }

    #[test]
    fn clean_examples() {
        assert!(matches!(
            is_t_clean(&Graph::complete(4), 4).unwrap(),
            Cleanliness::Dirty { witness: Obstruction::Clique(_) }
        ));
        assert!(matches!(is_t_clean(&Graph::cycle(5), 3).unwrap(), Cleanliness::Clean { .. }));
        let (prism, _) = make_config(ConfigKind::Prism, [1, 1, 1]).unwrap();
        assert!(matches!(
            is_t_clean(&prism, 3).unwrap(),
            Cleanliness::Dirty { witness: Obstruction::Clique(_) }
        ));
        // A long prism is triangle-rich but K_4-free; its K_{4,4}-freeness
        // and size leave it 4-clean.
        let (prism, _) = make_config(ConfigKind::Prism, [2, 2, 2]).unwrap();
        assert!(matches!(is_t_clean(&prism, 4).unwrap(), Cleanliness::Clean { .. }));
    }
}
