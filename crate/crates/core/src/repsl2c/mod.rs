//! su(2) irreducible representations, exact Clebsch-Gordan coefficients and
//! the semi-unitary coupled representations of sl(2, C).

mod cg;
mod rep;
mod su2;
mod weight;

pub use cg::{clebsch_gordan, clebsch_gordan_f64, rational_sqrt, CGValue, SqrtSum};
pub use rep::{
    build_any, build_in_basis, build_rep, build_rep_diag, chiral_projectors, default_epsilon,
    default_epsilon_diag, expected_signature, mnv_deviation, orthonormal_basis, rep_signature,
    rotation_basis, rotation_metric_spectral, self_adjoint_deviation, BasisKind, BasisLabel,
    CoupledRep,
};
pub use su2::{su2_generators, Su2Irrep};
pub use weight::{twice_half_integer, Weight};
