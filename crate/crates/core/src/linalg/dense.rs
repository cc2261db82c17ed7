//! Dense complex helpers and a cyclic Jacobi eigensolver for Hermitian
//! matrices.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type DMat = DMatrix<C64>;

/// Relative off-diagonal Frobenius norm at which Jacobi stops.
pub const JACOBI_TOL: f64 = 1e-13;
/// Upper bound on full Jacobi sweeps before reporting `ConvergenceFailure`.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entry modulus, zero for an empty matrix.
pub fn max_abs(m: &DMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &DMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖a − b‖_F / ‖b‖_F`, or the absolute difference when `b` vanishes.
pub fn rel_frobenius_diff(a: &DMat, b: &DMat) -> f64 {
    let diff = frobenius(&(a - b));
    let scale = frobenius(b);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Largest `|m_ij − conj(m_ji)|` relative to the largest entry.
pub fn hermitian_defect(m: &DMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    let scale = max_abs(m);
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

/// `(m + m†) / 2` with an exactly real diagonal.
pub fn hermitian_part(m: &DMat) -> DMat {
    let n = m.nrows();
    DMat::from_fn(n, n, |i, j| {
        if i == j {
            c64(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    })
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `a† b`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn mat_vec(m: &DMat, v: &[C64]) -> Vec<C64> {
    let (rows, cols) = m.shape();
    let mut out = vec![C64::new(0.0, 0.0); rows];
    for j in 0..cols {
        let vj = v[j];
        if vj == C64::new(0.0, 0.0) {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += m[(i, j)] * vj;
        }
    }
    out
}

/// `m† v`.
pub fn adjoint_mat_vec(m: &DMat, v: &[C64]) -> Vec<C64> {
    let (rows, cols) = m.shape();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)].conj() * v[i]).sum())
        .collect()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending and
/// eigenvectors stored as the matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMat,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn new(m: &DMat) -> Result<Self> {
        Self::with_tolerance(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    }

    /// Cyclic Jacobi with complex 2×2 rotations.
    ///
    /// Each rotation first removes the phase of `a_pq` with a diagonal unitary
    /// and then applies the classical real rotation that annihilates the
    /// (now real) off-diagonal pair. Only the Hermitian part of `m` is used.
    pub fn with_tolerance(m: &DMat, tol: f64, max_sweeps: usize) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.ncols(),
            });
        }
        let mut a = hermitian_part(m);
        let mut v = DMat::identity(n, n);
        let scale = frobenius(&a);
        let mut sweeps = 0;

        if scale > 0.0 {
            loop {
                let off = off_diagonal_norm(&a);
                if off <= tol * scale {
                    break;
                }
                if sweeps == max_sweeps {
                    return Err(Error::ConvergenceFailure {
                        sweeps,
                        off_norm: off,
                    });
                }
                for p in 0..n {
                    for q in (p + 1)..n {
                        rotate(&mut a, &mut v, p, q);
                    }
                }
                sweeps += 1;
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = DMat::from_fn(n, n, |r, c| v[(r, order[c])]);
        Ok(Self {
            values,
            vectors,
            sweeps,
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j).iter().copied().collect()
    }

    /// `V f(Λ) V†` for a complex-valued spectral function.
    pub fn apply_function(&self, f: impl Fn(f64) -> C64) -> DMat {
        let n = self.dim();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        DMat::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * fv[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }

    /// `V diag(phases) V† x` without forming the dense product.
    pub fn apply_diagonal_in_eigenbasis(&self, phases: &[C64], x: &[C64]) -> Vec<C64> {
        let mut coeffs = adjoint_mat_vec(&self.vectors, x);
        for (c, p) in coeffs.iter_mut().zip(phases) {
            *c *= p;
        }
        mat_vec(&self.vectors, &coeffs)
    }
}

fn off_diagonal_norm(a: &DMat) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut DMat, v: &mut DMat, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;
    let phase_c = phase.conj();

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // R = [[c, s], [-s e^{-iα}, c e^{-iα}]],  A <- R† A R,  V <- V R
    let n = a.nrows();
    let r_qp = -phase_c * s;
    let r_qq = phase_c * c;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * r_qp;
        a[(k, q)] = akp * s + akq * r_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * r_qp.conj();
        a[(q, k)] = apk * s + aqk * r_qq.conj();
    }
    a[(p, p)] = c64(app - t * r, 0.0);
    a[(q, q)] = c64(aqq + t * r, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * r_qp;
        v[(k, q)] = vkp * s + vkq * r_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &HermitianEigen) -> DMat {
        e.apply_function(|l| c64(l, 0.0))
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = DMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c64(3.0, 0.0),
            c64(1.0, 0.0),
            c64(2.0, 0.0),
        ]));
        let e = HermitianEigen::new(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn two_by_two_complex() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = DMat::from_row_slice(
            2,
            2,
            &[c64(2.0, 0.0), c64(0.0, 1.0), c64(0.0, -1.0), c64(2.0, 0.0)],
        );
        let e = HermitianEigen::new(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
        assert!(rel_frobenius_diff(&reconstruct(&e), &m) < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let e = HermitianEigen::new(&DMat::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }

    #[test]
    fn random_hermitian_reconstructs_and_is_unitary() {
        let n = 12;
        let m = hermitian_part(&DMat::from_fn(n, n, |i, j| {
            c64(
                ((i * 7 + j * 3) % 11) as f64 - 5.0,
                ((i * 5 + j) % 7) as f64 - 3.0,
            )
        }));
        let e = HermitianEigen::new(&m).unwrap();
        assert!(rel_frobenius_diff(&reconstruct(&e), &m) < 1e-13);
        let gram = e.vectors.adjoint() * &e.vectors;
        assert!(rel_frobenius_diff(&gram, &DMat::identity(n, n)) < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sweep_cap_reports_failure() {
        let m = DMat::from_row_slice(
            2,
            2,
            &[c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
        );
        let err = HermitianEigen::with_tolerance(&m, 1e-13, 0).unwrap_err();
        assert_eq!(err.name(), "ConvergenceFailure");
    }
}
