//! Ensemble-level quantities over all simple graphs with `k` labeled
//! vertices and `n` edges, drawn uniformly.

mod closed_form;
mod curve;
mod exhaustive;
mod montecarlo;
mod params;

pub use closed_form::{
    epf_lower, epf_lower_raw, epf_upper, expected_iow, expected_t, match_probability, pu_lower, pu_upper,
    ExpectedIOWeightTable, PuLowerBound,
};
pub use curve::{
    bound_curve, format_significant, round_f64, BoundCurve, BoundRow, GridSpec, DEFAULT_GRID, OUTPUT_DIGITS,
};
pub use exhaustive::{
    average_io_weight_table, epf_exact, epf_exact_with, pu_exact, pu_exact_with, rank_distribution,
    rank_distribution_with, total_failure_counts, unconnected_count, RankDistribution,
};
pub use montecarlo::{epf_montecarlo, epf_montecarlo_with, McEstimate, RNG_ALGORITHM};
pub use params::{fold_edge_sets, EnsembleParams, EnumerationOptions, DEFAULT_EDGE_SET_CAP};
