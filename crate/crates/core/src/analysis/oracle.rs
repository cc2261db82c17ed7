use crate::error::{check_dim, Error, Result};
use crate::linalg::dense::{vec_norm, C64};
use crate::linalg::{
    invert_block_diagonal, sqrt_block_diagonal, BandedHermitian, BlockDiagonalPD, HermitianEigen,
};
use crate::reduction::{recover_eigenvector, reduce, Route};

pub const MAX_ORACLE_SIZE: usize = 4096;

/// A generalized eigenpair, `v` normalized so that `v† B v = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<C64>,
}

impl Eigenpair {
    /// `‖A v − λ B v‖₂`.
    pub fn residual(&self, a: &BandedHermitian, b: &BlockDiagonalPD) -> Result<f64> {
        let av = a.matvec(&self.vector)?;
        let bv = b.matvec(&self.vector)?;
        let r: Vec<C64> = av
            .iter()
            .zip(&bv)
            .map(|(x, y)| x - y * self.value)
            .collect();
        Ok(vec_norm(&r))
    }
}

/// Solves `A v = λ B v` densely through the Cholesky reduction.
pub fn oracle_eigensolve(a: &BandedHermitian, b: &BlockDiagonalPD) -> Result<Vec<Eigenpair>> {
    oracle_eigensolve_via(a, b, Route::Cholesky)
}

/// As [`oracle_eigensolve`], through either reduction.
pub fn oracle_eigensolve_via(
    a: &BandedHermitian,
    b: &BlockDiagonalPD,
    route: Route,
) -> Result<Vec<Eigenpair>> {
    check_dim(a.size(), b.size())?;
    if a.size() > MAX_ORACLE_SIZE {
        return Err(Error::OutOfRange(format!(
            "dense oracle limited to N ≤ {MAX_ORACLE_SIZE}, got {}",
            a.size()
        )));
    }
    let reduced = reduce(a, b, route)?;
    let eig = HermitianEigen::new(&reduced.hamiltonian.to_dense())?;
    (0..eig.dim())
        .map(|j| {
            Ok(Eigenpair {
                value: eig.values[j],
                vector: recover_eigenvector(&eig.vector(j), &reduced.witness)?,
            })
        })
        .collect()
}

/// `B^{-1/2}` for a block-diagonal positive definite `B`.
pub fn inverse_sqrt(b: &BlockDiagonalPD) -> Result<BlockDiagonalPD> {
    invert_block_diagonal(&sqrt_block_diagonal(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::{
        build_sl_generalized, laplacian_eigenvalues, GridSpec, SturmLiouvilleSpec,
    };
    use crate::linalg::c64;

    #[test]
    fn diagonal_pencil() {
        let a = BandedHermitian::from_diagonal(&[3.0, 1.0, 2.0]).unwrap();
        let pairs = oracle_eigensolve(&a, &BlockDiagonalPD::identity(3).unwrap()).unwrap();
        let vals: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        let a = BandedHermitian::tridiagonal(&[2.0, 2.0], &[1.0]).unwrap();
        let b = BlockDiagonalPD::from_diagonal(&[1.0, 4.0]).unwrap();
        let s = 52f64.sqrt();
        for route in [Route::Sqrt, Route::Cholesky] {
            let pairs = oracle_eigensolve_via(&a, &b, route).unwrap();
            assert!((pairs[0].value - (10.0 - s) / 8.0).abs() < 1e-14);
            assert!((pairs[1].value - (10.0 + s) / 8.0).abs() < 1e-14);
            for p in &pairs {
                assert!(p.residual(&a, &b).unwrap() < 1e-13);
                assert!((b.inner(&p.vector, &p.vector).unwrap() - c64(1.0, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn laplacian_spectrum() {
        let grid = GridSpec::new(31).unwrap();
        let (a, b) = build_sl_generalized(&SturmLiouvilleSpec::laplacian(), &grid).unwrap();
        let pairs = oracle_eigensolve(&a, &b).unwrap();
        for (p, exact) in pairs.iter().zip(laplacian_eigenvalues(&grid)) {
            assert!((p.value - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn size_cap() {
        let a = BandedHermitian::zeros(MAX_ORACLE_SIZE + 1).unwrap();
        let b = BlockDiagonalPD::identity(MAX_ORACLE_SIZE + 1).unwrap();
        assert_eq!(oracle_eigensolve(&a, &b).unwrap_err().name(), "OutOfRange");
    }
}
