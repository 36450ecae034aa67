//! Partially symmetric codes: the projection bound, stage graphs and the
//! construction that attains the bound.

mod bound;
mod construct;
mod graph;
mod verify;

pub use bound::{
    bound_curve, granularity, lower_bound, stage_count, BoundPoint, BoundTrace, DesignSpec, Granularity,
    RemovalKind, StageRecord,
};
pub use construct::{construct, Construction, PartitionRemoval};
pub use graph::{
    build_stage_graph, grow, nested_chain, regular_subgraph, shrink, BipartiteStageGraph, RegularSubgraph,
};
pub use verify::{
    check_conjecture, find_variable_equivalence, verify_symmetry, ConjectureReport, ProjectionPair,
    SymmetryReport,
};
