//! Weighted mass matrices `B_ij = ∫ r φ_i φ_j dx` for two finite-element
//! bases on `[0, 1]`.

use super::coeff::Coefficient;
use super::quadrature::gauss_legendre_unit;
use super::sturm::{positive, GridSpec};
use crate::error::{Error, Result};
use crate::linalg::{c64, BandedHermitian, BlockDiagonalPD, DMat};

/// Continuous piecewise-linear "tent" basis on the interior nodes of `grid`.
///
/// Neighbouring tents overlap, so the mass matrix is tridiagonal. When `r` is
/// affine on every grid interval the element integrals are evaluated in closed
/// form; otherwise each interval uses two-point Gauss quadrature.
pub fn build_fem_mass_tent(r: &Coefficient, grid: &GridSpec) -> Result<BandedHermitian> {
    let n = grid.n;
    let h = grid.dx();
    let exact = r.is_piecewise_linear_on(n + 1);
    let gauss = gauss_legendre_unit(2);

    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    // element e spans [x_e, x_{e+1}]; its left hat belongs to node e and its
    // right hat to node e + 1 (nodes 1..=n are interior)
    for e in 0..=n {
        let (m00, m01, m11) = if exact {
            let r0 = positive("r", r, grid.x(e))?;
            let r1 = positive("r", r, grid.x(e + 1))?;
            (
                h * (3.0 * r0 + r1) / 12.0,
                h * (r0 + r1) / 12.0,
                h * (r0 + 3.0 * r1) / 12.0,
            )
        } else {
            let mut m = (0.0, 0.0, 0.0);
            for &(s, w) in &gauss {
                let rv = positive("r", r, grid.x(e) + s * h)?;
                let (l, rt) = (1.0 - s, s);
                m.0 += h * w * rv * l * l;
                m.1 += h * w * rv * l * rt;
                m.2 += h * w * rv * rt * rt;
            }
            m
        };
        if e >= 1 {
            diag[e - 1] += m00;
        }
        if e < n {
            diag[e] += m11;
        }
        if e >= 1 && e < n {
            off[e - 1] += m01;
        }
    }
    BandedHermitian::tridiagonal(&diag, &off)
}

/// Discontinuous basis: on each of `n_cells` equal cells `[a, a + h]`, the
/// monomials `((x − a)/h)^i` for `i = 0..=order`. The mass matrix is block
/// diagonal with one dense Gram block per cell.
pub fn build_fem_mass_dg(r: &Coefficient, n_cells: usize, order: usize) -> Result<BlockDiagonalPD> {
    if n_cells == 0 {
        return Err(Error::OutOfRange("need at least one cell".into()));
    }
    let h = 1.0 / n_cells as f64;
    let nb = order + 1;
    let breaks = r.breakpoints();
    let points = (r.piece_degree() + 2 * order + 2).div_ceil(2);
    let rule = gauss_legendre_unit(points);

    let mut blocks = Vec::with_capacity(n_cells);
    for cell in 0..n_cells {
        let a = cell as f64 * h;
        positive("r", r, a)?;
        positive("r", r, a + h)?;
        // moments[k] = ∫_0^1 r(a + h s) s^k ds
        let mut moments = vec![0.0; 2 * order + 1];
        if let Coefficient::Constant(c) = r {
            for (k, m) in moments.iter_mut().enumerate() {
                *m = c / (k as f64 + 1.0);
            }
        } else {
            let mut cuts = vec![0.0];
            cuts.extend(
                breaks
                    .iter()
                    .map(|&x| (x - a) / h)
                    .filter(|&s| s > 0.0 && s < 1.0),
            );
            cuts.push(1.0);
            for piece in cuts.windows(2) {
                let (s0, len) = (piece[0], piece[1] - piece[0]);
                for &(t, w) in &rule {
                    let s = s0 + t * len;
                    let rv = positive("r", r, a + h * s)?;
                    let mut sk = 1.0;
                    for m in moments.iter_mut() {
                        *m += len * w * rv * sk;
                        sk *= s;
                    }
                }
            }
        }
        blocks.push(DMat::from_fn(nb, nb, |i, j| c64(h * moments[i + j], 0.0)));
    }
    BlockDiagonalPD::new(blocks)
}
