//! From path systems to rooted trees.

mod banana;
mod connectify;
mod pipeline;
mod tournament;
mod tree;

pub use banana::{
    banana, forward_wired, verify_banana, BananaFailure, BananaOutcome, BananaSelection, BananaStage,
};
pub use connectify::{
    connectify, validate_connectified, ConnectifierWitness, Shape, CONNECTIFY_MAX_H, CONNECTIFY_MAX_N,
};
pub use pipeline::{forest_pipeline, PipelineReport, StageReport, StageStatus};
pub use tournament::{transitive_subtournament, Tournament, TRANSITIVE_MAX_P};
pub use tree::{
    extract_tree, kp_trichotomy, Extraction, ExtractionFailure, TreeWitness, Trichotomy,
    TRICHOTOMY_MAX_N,
};
