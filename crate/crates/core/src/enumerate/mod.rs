//! Counting equations as exact solvers, identity checks and oracle sweeps.

mod identities;
mod one;
mod oracle;
mod table;
mod two;

pub use identities::{verify_all, verify_identity, Failure, IdentityReport, IDENTITIES};
pub use one::{
    quad_boundary_table, quad_boundary_table_tutte, quad_boundary_table_with, quad_counts,
    quad_counts_with, tri_boundary_table, tri_boundary_table_with, tri_counts, tri_counts_with,
    Annotation, CellSource, TriBoundaryTable,
};
pub use oracle::{
    lastcar_roundtrip, loop_tree_count, map_roundtrip, oracle_compare, oracle_roundtrip,
    CompareReport, Mismatch, RoundTripReport, EXHAUSTIVE_LIMIT,
};
pub use table::CountTable;
pub use two::{
    a_table, b_table, quad_two, quad_two_boundary, tri_two, tri_two_boundary, MarkedTable,
};
