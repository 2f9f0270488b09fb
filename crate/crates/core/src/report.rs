//! JSON helpers shared by the verification reports.

use serde::Serializer;

use crate::scalar::Scalar;

pub const REPORT_SCHEMA: u32 = 1;

/// Serializes a scalar as `p/q` (exact) or in scientific notation (float).
pub fn scalar<T: Scalar, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.render())
}

pub fn scalar_list<T: Scalar, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(Scalar::render))
}
