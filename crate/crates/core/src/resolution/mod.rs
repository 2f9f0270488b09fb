//! Width-bounded derivations over base-edge parities, refutation width, and
//! the sign-carrying equivalence classes of small edge sets.

mod classes;
mod dsu;
mod edgeset;
mod width;

pub use classes::{
    build_class_table, classes_sanity, ClassTable, EdgeClass, SanityReport, Snapshot, SnapshotClass, SNAPSHOT_SCHEMA,
};
pub use dsu::ParityDsu;
pub use edgeset::{EdgeSet, MAX_EDGES};
pub use width::{
    derivable, reachable, refutation_width, refutation_width_with_budget, step_relation, Derivable, Generator,
    ProjectedSystem, RefutationWidth, Sign, DEFAULT_STATE_BUDGET,
};
