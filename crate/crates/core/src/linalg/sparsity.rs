//! Nonzero counting and the large-`N` fill predictions for the two
//! reductions.

use super::banded::BandedHermitian;
use super::block::{BlockDiagonalPD, BlockLowerTriangular};
use super::dense::{max_abs, DMat};
use crate::error::{Error, Result};
use crate::reduction::Route;

/// Entries at or below this fraction of the largest entry count as zero.
pub const DEFAULT_NONZERO_TOL: f64 = 1e-12;

/// Matrices whose nonzero entries can be counted without densifying.
pub trait CountNonzeros {
    fn dimension(&self) -> usize;

    /// Number of entries with `|M_ij| > rel_tol * max|M|`, counted over the
    /// full `N × N` matrix.
    fn count_nonzeros(&self, rel_tol: f64) -> usize;
}

impl CountNonzeros for DMat {
    fn dimension(&self) -> usize {
        self.nrows()
    }

    fn count_nonzeros(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * max_abs(self);
        self.iter().filter(|z| z.norm() > cut).count()
    }
}

impl CountNonzeros for BandedHermitian {
    fn dimension(&self) -> usize {
        self.size()
    }

    fn count_nonzeros(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.max_abs();
        (0..=self.half_bandwidth())
            .map(|d| {
                let hits = self.band(d).iter().filter(|z| z.norm() > cut).count();
                if d == 0 {
                    hits
                } else {
                    2 * hits
                }
            })
            .sum()
    }
}

fn count_blocks(blocks: &[DMat], rel_tol: f64) -> usize {
    let cut = rel_tol * super::block::block_max_abs(blocks);
    blocks
        .iter()
        .map(|b| b.iter().filter(|z| z.norm() > cut).count())
        .sum()
}

impl CountNonzeros for BlockDiagonalPD {
    fn dimension(&self) -> usize {
        self.size()
    }

    fn count_nonzeros(&self, rel_tol: f64) -> usize {
        count_blocks(self.blocks(), rel_tol)
    }
}

impl CountNonzeros for BlockLowerTriangular {
    fn dimension(&self) -> usize {
        self.size()
    }

    fn count_nonzeros(&self, rel_tol: f64) -> usize {
        count_blocks(self.blocks(), rel_tol)
    }
}

pub fn count_nonzeros<M: CountNonzeros + ?Sized>(m: &M, rel_tol: f64) -> usize {
    m.count_nonzeros(rel_tol)
}

/// Large-`N` nonzero count of the reduced Hamiltonian for a half-bandwidth
/// `k` operator and uniform mass blocks of size `m`: `(2k + m) N` for the
/// Cholesky route and `3 m N` for the square-root route (valid for `m >= k`).
pub fn predicted_nnz(route: Route, k: usize, m: usize, n: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::OutOfRange("block size must be at least 1".into()));
    }
    match route {
        Route::Cholesky => Ok((2 * k + m) * n),
        Route::Sqrt => {
            if m < k {
                Err(Error::RegimeViolation { k, m })
            } else {
                Ok(3 * m * n)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparsityReport {
    pub matrix_label: String,
    pub measured_nnz: usize,
    pub predicted_nnz: usize,
    pub tolerance: f64,
}

impl SparsityReport {
    pub fn measure<M: CountNonzeros + ?Sized>(
        label: impl Into<String>,
        m: &M,
        predicted_nnz: usize,
        tolerance: f64,
    ) -> Self {
        Self {
            matrix_label: label.into(),
            measured_nnz: m.count_nonzeros(tolerance),
            predicted_nnz,
            tolerance,
        }
    }

    /// `|measured − predicted| / predicted`.
    pub fn relative_deviation(&self) -> f64 {
        if self.predicted_nnz == 0 {
            return self.measured_nnz as f64;
        }
        (self.measured_nnz as f64 - self.predicted_nnz as f64).abs() / self.predicted_nnz as f64
    }
}

/// Fraction of entries counted as nonzero.
pub fn fill_fraction<M: CountNonzeros + ?Sized>(m: &M, rel_tol: f64) -> f64 {
    let n = m.dimension();
    if n == 0 {
        return 0.0;
    }
    m.count_nonzeros(rel_tol) as f64 / (n * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense::c64;

    #[test]
    fn identity_counts_n() {
        assert_eq!(
            count_nonzeros(&DMat::identity(7, 7), DEFAULT_NONZERO_TOL),
            7
        );
        assert_eq!(
            count_nonzeros(&BandedHermitian::identity(7).unwrap(), DEFAULT_NONZERO_TOL),
            7
        );
    }

    #[test]
    fn full_tridiagonal_counts_3n_minus_2() {
        let n = 9;
        let t = BandedHermitian::tridiagonal(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        assert_eq!(count_nonzeros(&t, DEFAULT_NONZERO_TOL), 3 * n - 2);
        assert_eq!(
            count_nonzeros(&t.to_dense(), DEFAULT_NONZERO_TOL),
            3 * n - 2
        );
    }

    #[test]
    fn dust_is_not_counted() {
        let t = BandedHermitian::from_bands(
            3,
            vec![vec![c64(1.0, 0.0); 3], vec![c64(1e-14, 0.0), c64(0.5, 0.0)]],
        )
        .unwrap();
        assert_eq!(count_nonzeros(&t, DEFAULT_NONZERO_TOL), 5);
        assert_eq!(count_nonzeros(&t, 0.0), 7);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_nnz(Route::Cholesky, 1, 4, 100).unwrap(), 600);
        assert_eq!(predicted_nnz(Route::Sqrt, 1, 4, 100).unwrap(), 1200);
        assert_eq!(predicted_nnz(Route::Cholesky, 0, 1, 37).unwrap(), 37);
        let err = predicted_nnz(Route::Sqrt, 3, 2, 100).unwrap_err();
        assert_eq!(err.name(), "RegimeViolation");
        assert!(predicted_nnz(Route::Cholesky, 3, 2, 100).is_ok());
    }

    #[test]
    fn fill_of_identity() {
        assert!((fill_fraction(&DMat::identity(8, 8), DEFAULT_NONZERO_TOL) - 0.125).abs() < 1e-15);
    }
}
