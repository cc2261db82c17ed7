//! Reduction of the Hermitian-definite pencil `A v = λ B v` to a standard
//! Hermitian eigenproblem.
//!
//! Two congruences are available:
//!
//! * square root: `H̃ = B^{-1/2} A B^{-1/2}` with `u = B^{1/2} v`;
//! * Cholesky: `H̄ = L^{-1} A L^{-†}` with `B = L L†` and `w = L† v`.
//!
//! Both keep `B`'s block structure in the transform, so a banded `A` yields a
//! banded reduced Hamiltonian. With half-bandwidth `k` and blocks of size at
//! most `m`, the result has half-bandwidth at most `k + 2(m − 1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dim, Error, Result};
use crate::linalg::block::forward_substitute;
use crate::linalg::dense::{c64, vec_norm, DMat, C64};
use crate::linalg::{
    cholesky_block_diagonal, invert_block_diagonal, sqrt_block_diagonal, BandedHermitian,
    BlockDiagonalPD, BlockLowerTriangular, DEFAULT_NONZERO_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Sqrt,
    Cholesky,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Sqrt => "sqrt",
            Route::Cholesky => "cholesky",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(Route::Sqrt),
            "cholesky" => Ok(Route::Cholesky),
            other => Err(Error::ConfigInvalid(format!(
                "unknown reduction '{other}', expected sqrt or cholesky"
            ))),
        }
    }
}

/// The factor needed to map reduced eigenvectors back to `v`.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `B^{1/2}`.
    Sqrt(BlockDiagonalPD),
    /// `L` with `B = L L†`.
    Cholesky(BlockLowerTriangular),
}

impl Witness {
    pub fn route(&self) -> Route {
        match self {
            Witness::Sqrt(_) => Route::Sqrt,
            Witness::Cholesky(_) => Route::Cholesky,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Witness::Sqrt(s) => s.size(),
            Witness::Cholesky(l) => l.size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedProblem {
    pub hamiltonian: BandedHermitian,
    pub witness: Witness,
}

impl ReducedProblem {
    pub fn route(&self) -> Route {
        self.witness.route()
    }
}

pub fn reduce(a: &BandedHermitian, b: &BlockDiagonalPD, route: Route) -> Result<ReducedProblem> {
    match route {
        Route::Sqrt => reduce_sqrt(a, b),
        Route::Cholesky => reduce_cholesky(a, b),
    }
}

/// `H̃ = B^{-1/2} A B^{-1/2}`.
///
/// For diagonal `B` this is the entrywise scaling
/// `H̃_ij = b_i^{-1/2} A_ij b_j^{-1/2}`.
pub fn reduce_sqrt(a: &BandedHermitian, b: &BlockDiagonalPD) -> Result<ReducedProblem> {
    check_dim(a.size(), b.size())?;
    let sqrt = sqrt_block_diagonal(b)?;
    let hamiltonian = if b.is_diagonal() {
        let inv_sqrt: Vec<f64> = b
            .blocks()
            .iter()
            .map(|blk| 1.0 / blk[(0, 0)].re.sqrt())
            .collect();
        BandedHermitian::from_fn(a.size(), a.half_bandwidth(), |i, j| {
            a.get(i, j) * inv_sqrt[i] * inv_sqrt[j]
        })?
        .drop_small(DEFAULT_NONZERO_TOL)
    } else {
        let inv_sqrt = invert_block_diagonal(&sqrt)?;
        let blocks = inv_sqrt.blocks();
        block_congruence(a, b.offsets(), |blk, m| &blocks[blk] * m)?
    };
    Ok(ReducedProblem {
        hamiltonian,
        witness: Witness::Sqrt(sqrt),
    })
}

/// `H̄ = L^{-1} A L^{-†}` evaluated with block-triangular solves.
pub fn reduce_cholesky(a: &BandedHermitian, b: &BlockDiagonalPD) -> Result<ReducedProblem> {
    check_dim(a.size(), b.size())?;
    let l = cholesky_block_diagonal(b)?;
    let factors = l.blocks();
    let hamiltonian = block_congruence(a, b.offsets(), |blk, m| {
        forward_substitute(&factors[blk], m)
    })?;
    Ok(ReducedProblem {
        hamiltonian,
        witness: Witness::Cholesky(l),
    })
}

/// Computes `P A P†` for a block-diagonal `P`, where `apply(b, M)` returns
/// `P_b M` for block `b`. Only block pairs that `A`'s band couples are
/// visited.
fn block_congruence(
    a: &BandedHermitian,
    offsets: &[usize],
    apply: impl Fn(usize, &DMat) -> DMat,
) -> Result<BandedHermitian> {
    let n = a.size();
    let k = a.half_bandwidth();
    let nb = offsets.len() - 1;

    // (row start, col start, dense block) for every coupled pair bi <= bj
    let mut pieces = Vec::new();
    let mut out_k = 0;
    for bi in 0..nb {
        let (r0, r1) = (offsets[bi], offsets[bi + 1]);
        for bj in bi..nb {
            let (c0, c1) = (offsets[bj], offsets[bj + 1]);
            if c0 > r1 - 1 + k {
                break;
            }
            let sub = DMat::from_fn(r1 - r0, c1 - c0, |i, j| a.get(r0 + i, c0 + j));
            if sub.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                continue;
            }
            let right = apply(bj, &sub.adjoint()).adjoint();
            let h = apply(bi, &right);
            out_k = out_k.max(c1 - 1 - r0);
            pieces.push((r0, c0, h));
        }
    }

    let out_k = out_k.min(n - 1);
    let mut bands: Vec<Vec<C64>> = (0..=out_k)
        .map(|d| vec![C64::new(0.0, 0.0); n - d])
        .collect();
    for (r0, c0, h) in pieces {
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                let (gi, gj) = (r0 + i, c0 + j);
                if gj < gi {
                    continue;
                }
                let z = h[(i, j)];
                bands[gj - gi][gi] = if gi == gj { c64(z.re, 0.0) } else { z };
            }
        }
    }
    Ok(BandedHermitian::from_bands(n, bands)?.drop_small(DEFAULT_NONZERO_TOL))
}

/// `u = B^{1/2} v` (square-root route) or `w = L† v` (Cholesky route).
pub fn forward_transform(v: &[C64], witness: &Witness) -> Result<Vec<C64>> {
    match witness {
        Witness::Sqrt(s) => s.matvec(v),
        Witness::Cholesky(l) => l.mul_adjoint_vec(v),
    }
}

/// Inverts the change of variables and normalizes so that `v† B v = 1`.
pub fn recover_eigenvector(reduced: &[C64], witness: &Witness) -> Result<Vec<C64>> {
    check_dim(witness.size(), reduced.len())?;
    let scale = vec_norm(reduced);
    if scale == 0.0 {
        return Err(Error::OutOfRange(
            "cannot recover from the zero vector".into(),
        ));
    }
    let raw = match witness {
        Witness::Sqrt(s) => s.solve(reduced)?,
        Witness::Cholesky(l) => l.solve_adjoint_vec(reduced)?,
    };
    // ‖forward(raw)‖ = ‖reduced‖ and v†Bv = ‖forward(v)‖²
    Ok(raw.into_iter().map(|z| z / scale).collect())
}

/// `|v₁† B v₂| / (‖v₁‖_B ‖v₂‖_B)`.
pub fn check_b_orthogonality(v1: &[C64], v2: &[C64], b: &BlockDiagonalPD) -> Result<f64> {
    check_dim(v1.len(), v2.len())?;
    let cross = b.inner(v1, v2)?.norm();
    let n1 = b.inner(v1, v1)?.re.sqrt();
    let n2 = b.inner(v2, v2)?.re.sqrt();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::OutOfRange("B-norm of a zero vector".into()));
    }
    Ok(cross / (n1 * n2))
}

/// Dense `L^{-1} X L^{-†}` reference, used by tests of the banded path.
#[doc(hidden)]
pub fn dense_cholesky_congruence(l: &BlockLowerTriangular, x: &DMat) -> DMat {
    let ld = l.to_dense();
    let y = forward_substitute(&ld, x);
    forward_substitute(&ld, &y.adjoint()).adjoint()
}
