//! Second-order finite differences for `−(p y′)′ + q y = λ r y` on `[0, 1]`
//! with `y(0) = y(1) = 0`.

use serde::{Deserialize, Serialize};

use super::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::linalg::{BandedHermitian, BlockDiagonalPD};

/// Coefficients of a regular Sturm–Liouville problem (`p > 0`, `r > 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SturmLiouvilleSpec {
    pub p: Coefficient,
    pub q: Coefficient,
    pub r: Coefficient,
}

impl SturmLiouvilleSpec {
    pub fn new(p: Coefficient, q: Coefficient, r: Coefficient) -> Self {
        Self { p, q, r }
    }

    /// `p = 1`, `q = 0`, `r = 1`: the Dirichlet Laplacian.
    pub fn laplacian() -> Self {
        Self::new(
            Coefficient::Constant(1.0),
            Coefficient::Constant(0.0),
            Coefficient::Constant(1.0),
        )
    }

    /// Checks `p > 0` on the half-grid and `r > 0` on the grid.
    pub fn validate_on(&self, grid: &GridSpec) -> Result<()> {
        for j in 0..=grid.n {
            positive("p", &self.p, grid.half_point(j))?;
        }
        for j in 1..=grid.n {
            positive("r", &self.r, grid.x(j))?;
            let x = grid.x(j);
            let q = self.q.eval(x);
            if !q.is_finite() {
                return Err(Error::OutOfRange(format!("q({x}) = {q} is not finite")));
            }
        }
        Ok(())
    }
}

/// Uniform grid `x_j = j Δx`, `Δx = 1/(n+1)`, with `n` interior points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange(
                "grid needs at least one interior point".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn dx(&self) -> f64 {
        1.0 / (self.n as f64 + 1.0)
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }

    /// `x_{j + 1/2}`.
    pub fn half_point(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dx()
    }
}

pub(crate) fn positive(name: &str, c: &Coefficient, x: f64) -> Result<f64> {
    let value = c.eval(x);
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveCoefficient {
            name: name.to_string(),
            x,
            value,
        })
    }
}

/// Stencil values shared by both builders: `p` at `x_{1/2} … x_{n+1/2}`,
/// `q` and `r` at `x_1 … x_n`.
struct Samples {
    p_half: Vec<f64>,
    q: Vec<f64>,
    r: Vec<f64>,
}

fn sample(spec: &SturmLiouvilleSpec, grid: &GridSpec) -> Result<Samples> {
    spec.validate_on(grid)?;
    let p_half = (0..=grid.n)
        .map(|j| spec.p.eval(grid.half_point(j)))
        .collect();
    let q = (1..=grid.n).map(|j| spec.q.eval(grid.x(j))).collect();
    let r = (1..=grid.n).map(|j| spec.r.eval(grid.x(j))).collect();
    Ok(Samples { p_half, q, r })
}

/// Generalized form `(A, B)`:
/// `A_jj = (p_{j−1/2} + p_{j+1/2} + q_j Δx²)/Δx²`,
/// `A_{j,j+1} = −p_{j+1/2}/Δx²`, `B = diag(r_j)`.
pub fn build_sl_generalized(
    spec: &SturmLiouvilleSpec,
    grid: &GridSpec,
) -> Result<(BandedHermitian, BlockDiagonalPD)> {
    let s = sample(spec, grid)?;
    let dx2 = grid.dx() * grid.dx();
    let n = grid.n;
    let diag: Vec<f64> = (0..n)
        .map(|i| (s.p_half[i] + s.p_half[i + 1] + s.q[i] * dx2) / dx2)
        .collect();
    let off: Vec<f64> = (0..n - 1).map(|i| -s.p_half[i + 1] / dx2).collect();
    let a = BandedHermitian::tridiagonal(&diag, &off)?;
    let b = BlockDiagonalPD::from_diagonal(&s.r)?;
    Ok((a, b))
}

/// Directly reduced form in the variable `u = r^{1/2} y`:
/// `H̃_jj = r_j⁻¹ (p_{j−1/2} + p_{j+1/2} + q_j Δx²)/Δx²`,
/// `H̃_{j,j+1} = −r_j^{−1/2} p_{j+1/2} r_{j+1}^{−1/2} / Δx²`.
pub fn build_sl_reduced(spec: &SturmLiouvilleSpec, grid: &GridSpec) -> Result<BandedHermitian> {
    let s = sample(spec, grid)?;
    let dx2 = grid.dx() * grid.dx();
    let n = grid.n;
    let diag: Vec<f64> = (0..n)
        .map(|i| (s.p_half[i] + s.p_half[i + 1] + s.q[i] * dx2) / dx2 / s.r[i])
        .collect();
    let off: Vec<f64> = (0..n - 1)
        .map(|i| -(s.p_half[i + 1] / (s.r[i].sqrt() * s.r[i + 1].sqrt())) / dx2)
        .collect();
    BandedHermitian::tridiagonal(&diag, &off)
}

/// Discrete Dirichlet Laplacian eigenvalues `(4/Δx²) sin²(jπΔx/2)`,
/// `j = 1..=n`, in ascending order.
pub fn laplacian_eigenvalues(grid: &GridSpec) -> Vec<f64> {
    let dx = grid.dx();
    (1..=grid.n)
        .map(|j| {
            let s = (j as f64 * std::f64::consts::PI * dx / 2.0).sin();
            4.0 / (dx * dx) * s * s
        })
        .collect()
}
