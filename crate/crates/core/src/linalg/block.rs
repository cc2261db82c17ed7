//! Block-diagonal positive-definite matrices and their factorizations.
//!
//! The mass matrices of interest are diagonal (finite differences) or block
//! diagonal (discontinuous Galerkin). Every factor used by the reductions
//! keeps that block structure, so all work is done one block at a time.

use super::dense::{c64, hermitian_part, max_abs, DMat, HermitianEigen, C64};
use crate::error::{check_dim, Error, Result};

/// Relative tolerance for the Hermitian check on each block.
pub const BLOCK_HERMITIAN_TOL: f64 = 1e-13;
/// Pivots (or eigenvalues) below this fraction of the block scale are
/// treated as a loss of positive definiteness.
pub const PIVOT_REL_TOL: f64 = 1e-14;

fn offsets_of(blocks: &[DMat]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for b in blocks {
        acc += b.nrows();
        offsets.push(acc);
    }
    offsets
}

/// Positive-definite block-diagonal matrix.
///
/// Construction checks that every block is square, Hermitian and admits a
/// Cholesky factorization with strictly positive pivots.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonalPD {
    blocks: Vec<DMat>,
    offsets: Vec<usize>,
}

impl BlockDiagonalPD {
    pub fn new(blocks: Vec<DMat>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::OutOfRange("at least one block is required".into()));
        }
        let mut stored = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            check_dim(block.nrows(), block.ncols())?;
            if block.nrows() == 0 {
                return Err(Error::OutOfRange(format!("block {b} is empty")));
            }
            let defect = super::dense::hermitian_defect(block);
            if defect > BLOCK_HERMITIAN_TOL {
                return Err(Error::NotHermitian(format!(
                    "block {b} has relative Hermitian defect {defect:e}"
                )));
            }
            let h = hermitian_part(block);
            cholesky_dense(&h).map_err(|e| match e {
                Error::NotPositiveDefinite(msg) => {
                    Error::NotPositiveDefinite(format!("block {b}: {msg}"))
                }
                other => other,
            })?;
            stored.push(h);
        }
        let offsets = offsets_of(&stored);
        Ok(Self {
            blocks: stored,
            offsets,
        })
    }

    /// `diag(b_1, …, b_N)` as 1×1 blocks.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(
            diag.iter()
                .map(|&b| DMat::from_element(1, 1, c64(b, 0.0)))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn single_block(m: DMat) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[DMat] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    /// Start index of every block followed by the total size.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).max().unwrap_or(0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b.nrows() == 1)
    }

    pub fn to_dense(&self) -> DMat {
        block_to_dense(&self.blocks, &self.offsets)
    }

    pub fn matvec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size(), x.len())?;
        Ok(per_block(&self.blocks, &self.offsets, x, |b, xs| {
            super::dense::mat_vec(b, xs)
        }))
    }

    /// Solves `B y = x` through the per-block Cholesky factors.
    pub fn solve(&self, x: &[C64]) -> Result<Vec<C64>> {
        let l = cholesky_block_diagonal(self)?;
        let y = l.solve_vec(x)?;
        l.solve_adjoint_vec(&y)
    }

    /// `x† B y`.
    pub fn inner(&self, x: &[C64], y: &[C64]) -> Result<C64> {
        let by = self.matvec(y)?;
        check_dim(self.size(), x.len())?;
        Ok(super::dense::inner(x, &by))
    }
}

/// Block lower-triangular factor with real positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockLowerTriangular {
    blocks: Vec<DMat>,
    offsets: Vec<usize>,
}

impl BlockLowerTriangular {
    pub fn size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn blocks(&self) -> &[DMat] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn to_dense(&self) -> DMat {
        block_to_dense(&self.blocks, &self.offsets)
    }

    /// `L L†` as dense blocks (no positive-definiteness re-check).
    pub fn reconstruct_blocks(&self) -> Vec<DMat> {
        self.blocks.iter().map(|l| l * l.adjoint()).collect()
    }

    /// `L x`.
    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size(), x.len())?;
        Ok(per_block(&self.blocks, &self.offsets, x, |l, xs| {
            super::dense::mat_vec(l, xs)
        }))
    }

    /// `L† x`.
    pub fn mul_adjoint_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size(), x.len())?;
        Ok(per_block(&self.blocks, &self.offsets, x, |l, xs| {
            super::dense::adjoint_mat_vec(l, xs)
        }))
    }

    /// Solves `L y = x` by forward substitution.
    pub fn solve_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size(), x.len())?;
        Ok(per_block(&self.blocks, &self.offsets, x, |l, xs| {
            let rhs = DMat::from_column_slice(xs.len(), 1, xs);
            forward_substitute(l, &rhs).iter().copied().collect()
        }))
    }

    /// Solves `L† y = x` by back substitution.
    pub fn solve_adjoint_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size(), x.len())?;
        Ok(per_block(&self.blocks, &self.offsets, x, |l, xs| {
            let rhs = DMat::from_column_slice(xs.len(), 1, xs);
            back_substitute_adjoint(l, &rhs).iter().copied().collect()
        }))
    }

    /// Solves `L Y = X` column by column.
    pub fn solve_mat(&self, x: &DMat) -> Result<DMat> {
        check_dim(self.size(), x.nrows())?;
        let mut out = DMat::zeros(x.nrows(), x.ncols());
        for (b, l) in self.blocks.iter().enumerate() {
            let (start, len) = (self.offsets[b], l.nrows());
            let rhs = x.rows(start, len).into_owned();
            out.rows_mut(start, len)
                .copy_from(&forward_substitute(l, &rhs));
        }
        Ok(out)
    }
}

fn block_to_dense(blocks: &[DMat], offsets: &[usize]) -> DMat {
    let n = *offsets.last().unwrap();
    let mut m = DMat::zeros(n, n);
    for (b, block) in blocks.iter().enumerate() {
        let s = offsets[b];
        m.view_mut((s, s), (block.nrows(), block.ncols()))
            .copy_from(block);
    }
    m
}

fn per_block(
    blocks: &[DMat],
    offsets: &[usize],
    x: &[C64],
    f: impl Fn(&DMat, &[C64]) -> Vec<C64>,
) -> Vec<C64> {
    let mut out = Vec::with_capacity(x.len());
    for (b, block) in blocks.iter().enumerate() {
        out.extend(f(block, &x[offsets[b]..offsets[b + 1]]));
    }
    out
}

/// Dense Cholesky `A = L L†` with a relative pivot floor.
pub fn cholesky_dense(a: &DMat) -> Result<DMat> {
    let n = a.nrows();
    check_dim(n, a.ncols())?;
    let max_diag = (0..n).map(|i| a[(i, i)].re).fold(0.0f64, f64::max);
    let mut l = DMat::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d.is_nan() || d <= 0.0 || d < PIVOT_REL_TOL * max_diag {
            return Err(Error::NotPositiveDefinite(format!(
                "Cholesky pivot {d:e} at row {j} (largest diagonal {max_diag:e})"
            )));
        }
        let ljj = d.sqrt();
        l[(j, j)] = c64(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Solves `L Y = X` for lower-triangular `L`.
pub fn forward_substitute(l: &DMat, x: &DMat) -> DMat {
    let n = l.nrows();
    let mut y = x.clone();
    for c in 0..x.ncols() {
        for i in 0..n {
            let mut s = y[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * y[(k, c)];
            }
            y[(i, c)] = s / l[(i, i)];
        }
    }
    y
}

/// Solves `L† Y = X` for lower-triangular `L`.
pub fn back_substitute_adjoint(l: &DMat, x: &DMat) -> DMat {
    let n = l.nrows();
    let mut y = x.clone();
    for c in 0..x.ncols() {
        for i in (0..n).rev() {
            let mut s = y[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * y[(k, c)];
            }
            y[(i, c)] = s / l[(i, i)].conj();
        }
    }
    y
}

/// Per-block Cholesky factorization `B = L L†`.
pub fn cholesky_block_diagonal(b: &BlockDiagonalPD) -> Result<BlockLowerTriangular> {
    let blocks = b
        .blocks
        .iter()
        .map(cholesky_dense)
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockLowerTriangular {
        blocks,
        offsets: b.offsets.clone(),
    })
}

/// Principal square root, block by block, through a Hermitian
/// eigendecomposition. 1×1 blocks take the scalar square root directly.
pub fn sqrt_block_diagonal(b: &BlockDiagonalPD) -> Result<BlockDiagonalPD> {
    let blocks = b
        .blocks
        .iter()
        .enumerate()
        .map(|(idx, block)| {
            if block.nrows() == 1 {
                return Ok(DMat::from_element(1, 1, c64(block[(0, 0)].re.sqrt(), 0.0)));
            }
            let eig = HermitianEigen::new(block)?;
            let top = eig.values.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
            if let Some(&low) = eig.values.first() {
                if low <= PIVOT_REL_TOL * top {
                    return Err(Error::NotPositiveDefinite(format!(
                        "block {idx} has eigenvalue {low:e} (largest {top:e})"
                    )));
                }
            }
            Ok(hermitian_part(&eig.apply_function(|l| c64(l.sqrt(), 0.0))))
        })
        .collect::<Result<Vec<_>>>()?;
    BlockDiagonalPD::new(blocks)
}

/// Block-wise inverse computed as `L^{-†} L^{-1}` from each block's
/// Cholesky factor.
pub fn invert_block_diagonal(s: &BlockDiagonalPD) -> Result<BlockDiagonalPD> {
    let blocks = s
        .blocks
        .iter()
        .map(|block| {
            if block.nrows() == 1 {
                return Ok(DMat::from_element(1, 1, c64(1.0 / block[(0, 0)].re, 0.0)));
            }
            let l = cholesky_dense(block)?;
            let n = block.nrows();
            let l_inv = forward_substitute(&l, &DMat::identity(n, n));
            Ok(hermitian_part(&(l_inv.adjoint() * l_inv)))
        })
        .collect::<Result<Vec<_>>>()?;
    BlockDiagonalPD::new(blocks)
}

/// Applies `L^{-1}` to a vector without forming the inverse.
pub fn solve_block_lower(l: &BlockLowerTriangular, x: &[C64]) -> Result<Vec<C64>> {
    l.solve_vec(x)
}

/// Scale used in relative tolerances: the largest entry over all blocks.
pub fn block_max_abs(blocks: &[DMat]) -> f64 {
    blocks.iter().map(max_abs).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::super::dense::rel_frobenius_diff;
    use super::*;

    fn m2(a: f64, b: f64, c: f64, d: f64) -> DMat {
        DMat::from_row_slice(2, 2, &[c64(a, 0.0), c64(b, 0.0), c64(c, 0.0), c64(d, 0.0)])
    }

    #[test]
    fn cholesky_of_identity_is_identity() {
        let l = cholesky_block_diagonal(&BlockDiagonalPD::identity(5).unwrap()).unwrap();
        assert_eq!(l.to_dense(), DMat::identity(5, 5));
    }

    #[test]
    fn cholesky_of_diagonal() {
        let l =
            cholesky_block_diagonal(&BlockDiagonalPD::from_diagonal(&[4.0, 9.0]).unwrap()).unwrap();
        assert_eq!(l.to_dense(), m2(2.0, 0.0, 0.0, 3.0));
    }

    #[test]
    fn cholesky_two_by_two_by_hand() {
        // l11 = √2, l21 = 1/√2, l22 = √(2 − 1/2) = √(3/2)
        let b = BlockDiagonalPD::single_block(m2(2.0, 1.0, 1.0, 2.0)).unwrap();
        let l = cholesky_block_diagonal(&b).unwrap().to_dense();
        let expected = m2(2f64.sqrt(), 0.0, 1.0 / 2f64.sqrt(), 1.5f64.sqrt());
        assert!(rel_frobenius_diff(&l, &expected) < 1e-15);
        assert!(rel_frobenius_diff(&(&l * l.adjoint()), &b.to_dense()) < 1e-15);
    }

    #[test]
    fn indefinite_block_rejected() {
        let err = BlockDiagonalPD::single_block(m2(1.0, 2.0, 2.0, 1.0)).unwrap_err();
        assert_eq!(err.name(), "NotPositiveDefinite");
        let err = BlockDiagonalPD::from_diagonal(&[1.0, 0.0]).unwrap_err();
        assert_eq!(err.name(), "NotPositiveDefinite");
        let err = BlockDiagonalPD::from_diagonal(&[1.0, -1e-20]).unwrap_err();
        assert_eq!(err.name(), "NotPositiveDefinite");
    }

    #[test]
    fn non_hermitian_block_rejected() {
        let err = BlockDiagonalPD::single_block(m2(2.0, 1.0, 0.5, 2.0)).unwrap_err();
        assert_eq!(err.name(), "NotHermitian");
    }

    #[test]
    fn sqrt_of_diagonal_and_identity() {
        let s = sqrt_block_diagonal(&BlockDiagonalPD::from_diagonal(&[4.0, 2.0, 9.0]).unwrap())
            .unwrap();
        let d: Vec<f64> = s.blocks().iter().map(|b| b[(0, 0)].re).collect();
        assert_eq!(d, vec![2.0, 2f64.sqrt(), 3.0]);
        let s = sqrt_block_diagonal(&BlockDiagonalPD::identity(3).unwrap()).unwrap();
        assert_eq!(s.to_dense(), DMat::identity(3, 3));
    }

    #[test]
    fn sqrt_two_by_two_from_eigendecomposition() {
        // eigenvalues 1 (on (1,-1)/√2) and 3 (on (1,1)/√2):
        // S = ½[[1+√3, √3−1], [√3−1, 1+√3]]
        let b = BlockDiagonalPD::single_block(m2(2.0, 1.0, 1.0, 2.0)).unwrap();
        let s = sqrt_block_diagonal(&b).unwrap().to_dense();
        let r3 = 3f64.sqrt();
        let expected = m2(
            (1.0 + r3) / 2.0,
            (r3 - 1.0) / 2.0,
            (r3 - 1.0) / 2.0,
            (1.0 + r3) / 2.0,
        );
        assert!(rel_frobenius_diff(&s, &expected) < 1e-15);
        assert!(rel_frobenius_diff(&(&s * &s), &b.to_dense()) < 1e-11);
    }

    #[test]
    fn inverse_examples() {
        let inv =
            invert_block_diagonal(&BlockDiagonalPD::from_diagonal(&[2.0, 4.0]).unwrap()).unwrap();
        assert_eq!(inv.to_dense(), m2(0.5, 0.0, 0.0, 0.25));
        let inv = invert_block_diagonal(&BlockDiagonalPD::identity(2).unwrap()).unwrap();
        assert_eq!(inv.to_dense(), DMat::identity(2, 2));
        let inv =
            invert_block_diagonal(&BlockDiagonalPD::single_block(m2(2.0, 1.0, 1.0, 2.0)).unwrap())
                .unwrap();
        let expected = m2(2.0, -1.0, -1.0, 2.0) / c64(3.0, 0.0);
        assert!(rel_frobenius_diff(&inv.to_dense(), &expected) < 1e-15);
    }

    #[test]
    fn solve_lower_examples() {
        let l = cholesky_block_diagonal(&BlockDiagonalPD::identity(3).unwrap()).unwrap();
        let x = vec![c64(1.0, 2.0), c64(-3.0, 0.0), c64(0.0, 1.0)];
        assert_eq!(solve_block_lower(&l, &x).unwrap(), x);

        let l =
            cholesky_block_diagonal(&BlockDiagonalPD::from_diagonal(&[4.0, 9.0]).unwrap()).unwrap();
        let y = solve_block_lower(&l, &[c64(2.0, 0.0), c64(3.0, 0.0)]).unwrap();
        assert_eq!(y, vec![c64(1.0, 0.0), c64(1.0, 0.0)]);

        let err = solve_block_lower(&l, &[c64(1.0, 0.0)]).unwrap_err();
        assert_eq!(err.name(), "DimensionMismatch");
    }

    #[test]
    fn solve_recovers_unit_vector_from_forward_product() {
        let blocks = vec![
            m2(3.0, 1.0, 1.0, 2.0),
            DMat::from_element(1, 1, c64(5.0, 0.0)),
            DMat::from_row_slice(
                3,
                3,
                &[
                    c64(4.0, 0.0),
                    c64(1.0, 1.0),
                    c64(0.0, 0.5),
                    c64(1.0, -1.0),
                    c64(3.0, 0.0),
                    c64(0.2, 0.0),
                    c64(0.0, -0.5),
                    c64(0.2, 0.0),
                    c64(2.0, 0.0),
                ],
            ),
        ];
        let b = BlockDiagonalPD::new(blocks).unwrap();
        let l = cholesky_block_diagonal(&b).unwrap();
        let mut e1 = vec![C64::new(0.0, 0.0); 6];
        e1[0] = c64(1.0, 0.0);
        let x = l.mul_vec(&e1).unwrap();
        let y = solve_block_lower(&l, &x).unwrap();
        for (a, b) in y.iter().zip(&e1) {
            assert!((a - b).norm() < 1e-15);
        }
        // adjoint solve round trip
        let w = l.mul_adjoint_vec(&e1).unwrap();
        let back = l.solve_adjoint_vec(&w).unwrap();
        for (a, b) in back.iter().zip(&e1) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
