//! CFI graph-isomorphism instances and explicit Lasserre vector solutions.
//!
//! The crate builds CFI pairs `X_f(G)`, `X_g(G)` over a 3-regular base graph,
//! the XOR system relating them, width-bounded derivation classes with their
//! signs, and from those the class-indexed Lasserre vectors. Everything is
//! checked exactly: vectors carry dyadic rational coordinates and the
//! verifiers compare with `==`.

pub mod cfi;
pub mod error;
pub mod fourier;
pub mod graph;
pub mod iso;
pub mod lasserre;
pub mod report;
pub mod resolution;
pub mod scalar;
pub mod xor;

pub use error::{Error, Result};
pub use graph::{AdjacencyMatrix, ColoredGraph};
pub use scalar::Scalar;

/// Exact rational used for expansions, Fourier coefficients and vectors.
pub type Rational = num_rational::Ratio<i128>;

/// Class-indexed vector with exact coordinates.
pub type ExactVector = lasserre::LasserreVector<Rational>;

/// Class-indexed vector with floating coordinates.
pub type FloatVector = lasserre::LasserreVector<f64>;
