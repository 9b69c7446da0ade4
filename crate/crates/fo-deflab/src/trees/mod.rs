//! Diverging and ranked tree families, their Spoiler strategies, and
//! rooted-tree minimization.

pub mod catalog;
pub mod certify;
pub mod minimize;
pub mod ranked;
pub mod strategies;

pub use catalog::{
    enumerate_diverging, gen_diverging_rooted, gen_diverging_tree, is_diverging,
    is_diverging_tree, max_diverging_order, DivergingCatalog,
};
pub use certify::{certify_tree_definability, DefinabilityReport, OpponentClass};
pub use minimize::{
    minimize_rooted, minimize_rooted_report, rooted_equivalent, rooted_value, MinimizeReport,
};
pub use ranked::{
    base_quadruple, embeds_as_rooted_subtree, gen_ranked, ranked_counts, ranked_rank_of,
    search_base_quadruple, verify_base_properties, RankedFamily,
};
pub use strategies::{
    center_strategy, cycle_strategy, diameter_strategy, distance_strategy, diverging_strategy,
    divergence_break_strategy, ranked_continuous_strategy, ranked_root_strategy,
    ranked_vs_disconnected_strategy, ranked_vs_tree_strategy, CenterStrategy, CycleStrategy,
    DiameterStrategy, DistanceStrategy, DivergenceBreakStrategy, DivergingStrategy,
    RankedContinuousStrategy, RankedRootStrategy, RankedVsConnectedStrategy,
    RankedVsDisconnectedStrategy,
};
