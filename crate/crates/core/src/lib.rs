//! Banded Hermitian / block-diagonal generalized eigenproblems, their
//! reduction to ordinary Hermitian form, and simulated phase estimation on
//! the result.
//!
//! The guide under `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod analysis;
pub mod cli;
pub mod discretize;
pub mod error;
pub mod linalg;
pub mod qsim;
pub mod reduction;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/reduction.md")]
mod book_reduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/sturm_liouville.md")]
mod book_sturm_liouville {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/sparsity.md")]
mod book_sparsity {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/phase_estimation.md")]
mod book_phase_estimation {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/trotter.md")]
mod book_trotter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
