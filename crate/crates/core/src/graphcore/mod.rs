//! Labeled simple graphs, their F2 incidence matrices, and cut spaces.

mod cutspace;
mod f2;
mod graph;

pub use cutspace::{
    cut_weight_distribution, cutset_oracle, io_weight_table, io_weight_table_capped, null_space_size,
    CutWeightDistribution, IOWeightTable, DEFAULT_ORACLE_VERTEX_CAP, DEFAULT_TABLE_VERTEX_CAP,
};
pub use f2::{f2_rank, incidence_matrix, F2Matrix};
pub use graph::{is_connected, pair_count, Edge, LabeledGraph};
