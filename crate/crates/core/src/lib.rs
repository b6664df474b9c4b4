//! Generalized bra-ket calculus on finite-dimensional coupled vector spaces
//! with an indefinite metric.
//!
//! The crate is layered bottom-up:
//!
//! - [`numkernel`]: dense complex matrices, hermitian signatures, `expm`, `kron`.
//! - [`cvs`]: metric operators, variance-tagged vectors, dual forms and
//!   scalar products.
//! - [`opalg`]: the four operator kinds, hermitian and Dirac adjoints,
//!   semi-hermiticity and traces.
//! - [`projections`]: perp and additive projectors, coupled-subspace metrics.
//! - [`transforms`]: basis changes, semi-unitary symmetries and the
//!   `GL(N, C)` generator families.
//! - [`repsl2c`]: su(2) irreps, exact Clebsch-Gordan coefficients and the
//!   coupled sl(2, C) representations with their invariant metrics.
//!
//! [`sampling`] holds random generators for the objects above, used by the
//! property and acceptance tests.

pub mod cvs;
pub mod error;
pub mod numkernel;
pub mod opalg;
pub mod projections;
pub mod repsl2c;
pub mod sampling;
pub mod transforms;

pub use error::{Error, Result};
pub use numkernel::{Complex64, ComplexMatrix, Signature, Tolerances};
