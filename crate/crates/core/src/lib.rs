//! Short circuit covers of signed graphs.
//!
//! Vertex and edge ids are 0-based in the API and 1-based in every text
//! format and error message.

pub mod connectivity;
pub mod cover;
pub mod cycles;
pub mod cycletree;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
mod setcover;
pub mod switching;

pub use connectivity::{is_connected, is_two_edge_connected, positive_subgraph, EdgeConnectivity, Subgraph};
pub use cover::{
    bridgeless_cycle_cover, bridgeless_cycle_cover_with, check_cutedge_coverage, cover_even, cover_even_with,
    cover_main, cover_main_with, structural_checks, verify_cover, verify_records, CoverOptions, CoverReport,
    StructuralBudget, StructuralReport,
};
pub use cycles::{
    classify_cycle, disjoint_paths, enumerate_circuits, enumerate_cycles, fundamental_cycles, make_barbell,
    shortest_negative_circuits, signed_girth, symmetric_difference_cycles, Barbell, Circuit, CircuitFamily, Cycle,
};
pub use cycletree::{
    boundary_walk_order, cycle_coverage, cycle_tree_cover, extract_cycle_tree, leaf_cycle_cover, minimize_cycle_count,
    minimize_cycle_count_with, BoundaryWalk, CycleCoverage, CycleTree, TreePortfolio,
};
pub use error::{Error, Result};
pub use format::{parse_cover, write_cover, write_record, CircuitRecord};
pub use graph::{parse_signed_graph, Edge, Sign, SignedGraph};
pub use oracle::{
    barbell_cdc_property, cdc_exists, exact_scc, gen_no_cdc, BarbellCheck, CdcOutcome, NoCdcInstance, OracleBudget,
    OracleResult, OracleStatus,
};
pub use switching::{
    is_balanced, minimize_signature, minimize_signature_with, negativeness, negativeness_with, switch,
    NegativenessBudget, SignatureSummary, Switching,
};
