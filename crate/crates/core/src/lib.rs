//! Constructive machinery for (theta, prism)-free graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable simple graphs, separations, Menger, exact treewidth
//!   and the graph6 / edge-JSON formats.
//! - [`generators`]: the named graph families (thetas, prisms, pyramids,
//!   walls, line graphs, rooted trees, seeds) and seeded random class members.
//! - [`obstructions`]: exhaustive detectors for thetas, prisms, pyramids,
//!   cliques, bicliques, induced subgraphs and strong blocks.
//! - [`strips`]: trapped apices, pyramid-relative classification and the
//!   `(T, a)`-strip-structure model with its saturation procedure.
//! - [`separators`]: jewel locality, the quantitative constants and the
//!   explicit separator constructions.
//! - [`extraction`]: connectifier outcomes, transitive subtournaments, banana
//!   selection, rooted tree extraction and the induced-tree trichotomy.
//!
//! Vertices are always dense integers `0..n` and every search iterates in
//! ascending vertex order, so witnesses are reproducible.

pub mod enumerate;
pub mod extraction;
pub mod error;
pub mod generators;
pub mod obstructions;
pub mod graph;
pub mod separators;
pub mod strips;

pub use error::{Error, Result};
pub use graph::{Graph, Path, PathSystem, Separation, VertexSet};
