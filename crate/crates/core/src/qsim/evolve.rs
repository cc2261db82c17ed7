//! Time evolution `e^{−iHt}`: exact (spectral) and first-order Trotter.

use super::statevector::Statevector;
use crate::error::{check_dim, Error, Result};
use crate::linalg::dense::{mat_vec, DMat, C64};
use crate::linalg::{BandedHermitian, HermitianEigen};

/// `e^{−i λ t}` for every eigenvalue.
pub(crate) fn evolution_phases(values: &[f64], time: f64) -> Vec<C64> {
    values
        .iter()
        .map(|&l| C64::from_polar(1.0, -l * time))
        .collect()
}

/// Spectral propagator for repeated exact evolution under one Hamiltonian.
#[derive(Debug, Clone)]
pub struct ExactPropagator {
    eig: HermitianEigen,
}

impl ExactPropagator {
    pub fn new(h: &BandedHermitian) -> Result<Self> {
        Ok(Self {
            eig: HermitianEigen::new(&h.to_dense())?,
        })
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eig
    }

    /// `e^{−iHt} x`.
    pub fn apply(&self, time: f64, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.eig.dim(), x.len())?;
        let phases = evolution_phases(&self.eig.values, time);
        Ok(self.eig.apply_diagonal_in_eigenbasis(&phases, x))
    }
}

/// `e^{−iHt} ψ` through a Hermitian eigendecomposition of `H`.
pub fn evolve_exact(h: &BandedHermitian, time: f64, psi: &Statevector) -> Result<Statevector> {
    check_dim(h.size(), psi.dim())?;
    let out = ExactPropagator::new(h)?.apply(time, psi.amplitudes())?;
    Statevector::new(out)
}

/// Splits a tridiagonal `H` into its diagonal `H1` and its zero-diagonal
/// off-diagonal part `H2`, with `H1 + H2 = H` exactly.
pub fn split_tridiagonal(h: &BandedHermitian) -> Result<(BandedHermitian, BandedHermitian)> {
    if h.half_bandwidth() > 1 {
        return Err(Error::BandwidthTooLarge {
            max: 1,
            found: h.half_bandwidth(),
        });
    }
    let n = h.size();
    let h1 = BandedHermitian::from_bands(n, vec![h.band(0).to_vec()])?;
    let mut bands = vec![vec![C64::new(0.0, 0.0); n]];
    if h.half_bandwidth() == 1 {
        bands.push(h.band(1).to_vec());
    }
    let h2 = BandedHermitian::from_bands(n, bands)?;
    Ok((h1, h2))
}

/// First-order product formula `(e^{−iH1 Δt} e^{−iH2 Δt})^s` for a diagonal
/// `H1` and a tridiagonal `H2`.
///
/// Both factors are applied exactly: `H1` as pointwise phases and `H2`
/// through its eigendecomposition, so the only error is the splitting error.
#[derive(Debug, Clone)]
pub struct TrotterPropagator {
    h1: Vec<f64>,
    h2: HermitianEigen,
}

/// One cached product-formula step for a fixed `Δt`.
#[derive(Debug, Clone)]
pub struct TrotterStep {
    h1_phases: Vec<C64>,
    u2: DMat,
}

impl TrotterStep {
    /// `x ← e^{−iH1 Δt} e^{−iH2 Δt} x`.
    pub fn apply_in_place(&self, x: &mut [C64]) {
        let y = mat_vec(&self.u2, x);
        for ((xi, yi), p) in x.iter_mut().zip(y).zip(&self.h1_phases) {
            *xi = yi * p;
        }
    }
}

impl TrotterPropagator {
    pub fn new(h1: &BandedHermitian, h2: &BandedHermitian) -> Result<Self> {
        check_dim(h1.size(), h2.size())?;
        if h1.half_bandwidth() > 0 {
            return Err(Error::BandwidthTooLarge {
                max: 0,
                found: h1.half_bandwidth(),
            });
        }
        if h2.half_bandwidth() > 1 {
            return Err(Error::BandwidthTooLarge {
                max: 1,
                found: h2.half_bandwidth(),
            });
        }
        Ok(Self {
            h1: h1.diagonal(),
            h2: HermitianEigen::new(&h2.to_dense())?,
        })
    }

    pub fn dim(&self) -> usize {
        self.h1.len()
    }

    /// Step operator for `Δt`, with `H1` shifted by `−shift`.
    pub fn step(&self, dt: f64, shift: f64) -> TrotterStep {
        let h1_phases = self
            .h1
            .iter()
            .map(|&d| C64::from_polar(1.0, -(d - shift) * dt))
            .collect();
        let u2 = self.h2.apply_function(|l| C64::from_polar(1.0, -l * dt));
        TrotterStep { h1_phases, u2 }
    }

    pub fn apply(&self, time: f64, steps: usize, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.dim(), x.len())?;
        if steps == 0 {
            return Err(Error::OutOfRange("Trotter steps must be at least 1".into()));
        }
        let step = self.step(time / steps as f64, 0.0);
        let mut y = x.to_vec();
        for _ in 0..steps {
            step.apply_in_place(&mut y);
        }
        Ok(y)
    }
}

pub fn evolve_trotter(
    h1: &BandedHermitian,
    h2: &BandedHermitian,
    time: f64,
    steps: usize,
    psi: &Statevector,
) -> Result<Statevector> {
    check_dim(h1.size(), psi.dim())?;
    let out = TrotterPropagator::new(h1, h2)?.apply(time, steps, psi.amplitudes())?;
    Statevector::new(out)
}
