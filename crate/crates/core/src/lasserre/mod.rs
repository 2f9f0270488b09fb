//! Class-indexed vectors `v_σ`, exact verifiers for the five Lasserre
//! constraint families, and the isomorphism-distribution construction.

mod instance;
mod qp;
mod vector;

pub use instance::{
    classify_pair, verify_all, verify_l1, verify_l2, verify_l3, verify_l4_l5, CaseSummary, L2Case, L2Failure,
    L2Report, L3Report, L45Report, LasserreInstance, LasserreReport, FAMILY_CAP,
};
pub use qp::{qp_check, vectors_from_isomorphisms, FamilyCheck, IsoVectorFamily, IsoVerifyReport};
pub use vector::LasserreVector;
