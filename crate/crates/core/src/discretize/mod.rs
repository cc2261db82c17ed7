//! Finite-difference and finite-element discretizations of the regular
//! Sturm–Liouville problem.

pub mod coeff;
pub mod fem;
pub mod quadrature;
pub mod sturm;

pub use coeff::Coefficient;
pub use fem::{build_fem_mass_dg, build_fem_mass_tent};
pub use sturm::{
    build_sl_generalized, build_sl_reduced, laplacian_eigenvalues, GridSpec, SturmLiouvilleSpec,
};
