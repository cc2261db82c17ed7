//! Banded and block-diagonal storage, factorizations and sparsity
//! accounting.

pub mod banded;
pub mod block;
pub mod dense;
pub mod sparsity;

pub use banded::{i_commutator, BandedHermitian};
pub use block::{
    cholesky_block_diagonal, invert_block_diagonal, solve_block_lower, sqrt_block_diagonal,
    BlockDiagonalPD, BlockLowerTriangular,
};
pub use dense::{c64, DMat, HermitianEigen, C64};
pub use sparsity::{
    count_nonzeros, fill_fraction, predicted_nnz, CountNonzeros, SparsityReport,
    DEFAULT_NONZERO_TOL,
};
