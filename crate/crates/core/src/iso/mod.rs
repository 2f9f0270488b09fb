//! Weisfeiler-Leman refinement and a backtracking isomorphism oracle.

mod search;
mod wl;

pub use search::{automorphisms, find_isomorphism, IsoCertificate, IsoOutcome, SearchBudget};
pub use wl::{wl_refine, RefinementState, WlResult, WlVerdict, MAX_WL_WORK};
