//! The XOR system relating partial maps between CFI graphs to partial
//! assignments, plus GF(2) elimination.

pub mod gf2;
mod perm;
mod system;

pub use gf2::Gf2System;
pub use perm::{meet_opt, PartialIso};
pub use system::{
    alpha_of, build_phi, is_color_preserving, is_harmonious, violates, PartialAssignment, XorConstraint,
    XorSystem, XorVar,
};
