//! Scalar abstraction shared by the Fourier and Lasserre layers.
//!
//! Every value produced by the vector construction is a dyadic rational, so
//! the exact instantiation never rounds. Floating instantiations exist for
//! distributions whose square-root weights are irrational.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field-like scalar used for Fourier coefficients and vector coordinates.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact and comparisons ignore tolerances.
    const EXACT: bool;

    /// `numer / 2^exp`.
    fn from_dyadic(numer: i64, exp: u32) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact square root when it exists in the scalar domain.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Equality up to `tol`; exact scalars ignore `tol`.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.to_f64() - other.to_f64()).abs() <= tol
        }
    }

    /// Rendering used in JSON reports: `p/q` for exact scalars.
    fn render(&self) -> String;
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_dyadic(numer: i64, exp: u32) -> Self {
                (numer as $t) / (2.0 as $t).powi(exp as i32)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn sqrt_checked(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }

            fn render(&self) -> String {
                format!("{:e}", self)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

macro_rules! impl_ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            const EXACT: bool = true;

            fn from_dyadic(numer: i64, exp: u32) -> Self {
                Ratio::new(numer as $t, (1 as $t) << exp)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $t, denom as $t)
            }

            fn to_f64(&self) -> f64 {
                self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
            }

            fn sqrt_checked(&self) -> Option<Self> {
                if self.is_negative() {
                    return None;
                }
                let n = self.numer().sqrt();
                let d = self.denom().sqrt();
                (n * n == *self.numer() && d * d == *self.denom()).then(|| Ratio::new(n, d))
            }

            fn render(&self) -> String {
                format!("{}/{}", self.numer(), self.denom())
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

/// Render an exact rational as `p/q`, always with an explicit denominator.
pub fn render_ratio<T: std::fmt::Display + Clone + num_integer::Integer>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
