//! Jewel locality, the quantitative constants, and explicit separators for
//! rich strip-structures and `a`-seeds.

mod apex;
mod constants;
mod jewels;
mod seed;

pub use apex::{
    apex_separator, first_maximal_clique, jewel_separator, Bound, SeparatorCase,
    SeparatorCertificate, SeparatorContext, SeparatorError,
};
pub use constants::{
    constants, jewel_bound, ramsey, ramsey_binomial_bound, ramsey_with_budget, sigma_bound,
    tournament_ramsey, tournament_ramsey_with_budget, Constants, Quantity, TournamentBound,
    DEFAULT_SEARCH_BUDGET,
};
pub use jewels::{
    attachment_region, bag_clique_defect, check_distant_jewels, verify_jewel_locality,
    vertex_region, AttachmentRegion, CliqueDefect, DistantJewels, JewelFault, JewelViolation,
    WITNESS_SEARCH_CAP,
};
pub(crate) use seed::{is_caterpillar, root_tree};
pub use seed::{
    is_a_seed, recognize_seed, saturated_seed, seed_separator, seed_strip, SeedClause,
    SeedFailure, SeedRecognition,
};
