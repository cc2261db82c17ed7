//! Parameter scans that measure the scaling laws of the reduced problem.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random::{random_banded, random_block_pd};
use crate::discretize::{build_sl_generalized, Coefficient, GridSpec, SturmLiouvilleSpec};
use crate::error::{check_dim, Error, Result};
use crate::linalg::dense::{c64, vec_norm, C64};
use crate::linalg::{
    i_commutator, predicted_nnz, BandedHermitian, CountNonzeros, HermitianEigen,
    DEFAULT_NONZERO_TOL,
};
use crate::qsim::{ExactPropagator, TrotterPropagator};
use crate::reduction::{reduce_cholesky, reduce_sqrt, Route};

/// Largest grid accepted by the scans.
pub const MAX_SCAN_SIZE: usize = 1024;
/// Above this size spectral norms come from power iteration.
pub const DENSE_NORM_LIMIT: usize = 256;
const POWER_ITERATIONS: usize = 200;
const POWER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub parameter: f64,
    pub observable: f64,
    pub label: String,
}

impl ScanRecord {
    fn new(parameter: f64, observable: f64, label: impl Into<String>) -> Self {
        debug_assert!(observable.is_finite() && observable >= 0.0);
        Self {
            parameter,
            observable,
            label: label.into(),
        }
    }
}

/// `‖H‖₂` of a Hermitian band matrix: exact diagonalization up to
/// [`DENSE_NORM_LIMIT`], power iteration above.
pub fn spectral_norm(h: &BandedHermitian) -> Result<f64> {
    if h.max_abs() == 0.0 {
        return Ok(0.0);
    }
    if h.size() <= DENSE_NORM_LIMIT {
        let eig = HermitianEigen::new(&h.to_dense())?;
        return Ok(eig.values.iter().fold(0.0f64, |m, l| m.max(l.abs())));
    }
    // iterate on H² so that ±λ_max cannot stall the estimate
    let n = h.size();
    let mut x: Vec<C64> = (0..n)
        .map(|i| c64(1.0 + (i % 7) as f64 * 0.1, 0.0))
        .collect();
    let mut estimate = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let nx = vec_norm(&x);
        x.iter_mut().for_each(|z| *z /= nx);
        let y = h.matvec(&h.matvec(&x)?)?;
        let next = vec_norm(&y).sqrt();
        x = y;
        if (next - estimate).abs() <= POWER_TOL * next {
            return Ok(next);
        }
        estimate = next;
    }
    Ok(estimate)
}

/// `‖[H₁, H₂]‖₂` for the discrete Dirichlet Laplacian `H₁` and the potential
/// `H₂ = diag(V(x_j))`, one record per grid size `N` (interior points).
pub fn scan_commutator_norm(potential: &Coefficient, sizes: &[usize]) -> Result<Vec<ScanRecord>> {
    check_ascending(sizes)?;
    sizes
        .iter()
        .map(|&n| {
            if n > MAX_SCAN_SIZE {
                return Err(Error::OutOfRange(format!(
                    "N = {n} exceeds the scan limit {MAX_SCAN_SIZE}"
                )));
            }
            let grid = GridSpec::new(n)?;
            let (h1, _) = build_sl_generalized(&SturmLiouvilleSpec::laplacian(), &grid)?;
            let v: Vec<f64> = (1..=n).map(|j| potential.eval(grid.x(j))).collect();
            let h2 = BandedHermitian::from_diagonal(&v)?;
            let norm = spectral_norm(&i_commutator(&h1, &h2)?)?;
            Ok(ScanRecord::new(n as f64, norm, "commutator_norm"))
        })
        .collect()
}

/// Trial states: the first eight computational basis states and the uniform
/// superposition.
fn trial_states(n: usize) -> Vec<Vec<C64>> {
    let mut states: Vec<Vec<C64>> = (0..n.min(8))
        .map(|i| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[i] = c64(1.0, 0.0);
            e
        })
        .collect();
    states.push(vec![c64(1.0 / (n as f64).sqrt(), 0.0); n]);
    states
}

/// Largest `‖ψ_trotter(t) − ψ_exact(t)‖₂` over the trial states, one record
/// per number of steps.
pub fn scan_trotter_error(
    h1: &BandedHermitian,
    h2: &BandedHermitian,
    time: f64,
    steps_list: &[usize],
) -> Result<Vec<ScanRecord>> {
    check_ascending(steps_list)?;
    check_dim(h1.size(), h2.size())?;
    let trotter = TrotterPropagator::new(h1, h2)?;
    let full = add(h1, h2)?;
    let exact = ExactPropagator::new(&full)?;
    let states = trial_states(h1.size());
    let references = states
        .iter()
        .map(|s| exact.apply(time, s))
        .collect::<Result<Vec<_>>>()?;
    steps_list
        .iter()
        .map(|&steps| {
            let mut worst = 0.0f64;
            for (s, r) in states.iter().zip(&references) {
                let y = trotter.apply(time, steps, s)?;
                let d: Vec<C64> = y.iter().zip(r).map(|(a, b)| a - b).collect();
                worst = worst.max(vec_norm(&d));
            }
            Ok(ScanRecord::new(steps as f64, worst, "trotter_error"))
        })
        .collect()
}

fn add(h1: &BandedHermitian, h2: &BandedHermitian) -> Result<BandedHermitian> {
    let k = h1.half_bandwidth().max(h2.half_bandwidth());
    BandedHermitian::from_fn(h1.size(), k, |i, j| h1.get(i, j) + h2.get(i, j))
}

/// Measured and predicted nonzero counts of both reduced Hamiltonians for
/// one random pencil.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsityRow {
    pub n: usize,
    pub nnz_cholesky: usize,
    pub nnz_sqrt: usize,
    pub predicted_cholesky: usize,
    pub predicted_sqrt: usize,
}

impl SparsityRow {
    /// `nnz(H̄) / nnz(H̃)`.
    pub fn ratio(&self) -> f64 {
        self.nnz_cholesky as f64 / self.nnz_sqrt as f64
    }

    pub fn deviation(&self, route: Route) -> f64 {
        let (measured, predicted) = match route {
            Route::Cholesky => (self.nnz_cholesky, self.predicted_cholesky),
            Route::Sqrt => (self.nnz_sqrt, self.predicted_sqrt),
        };
        (measured as f64 - predicted as f64).abs() / predicted as f64
    }

    pub fn records(&self) -> Vec<ScanRecord> {
        let n = self.n as f64;
        vec![
            ScanRecord::new(n, self.nnz_cholesky as f64, "nnz_cholesky"),
            ScanRecord::new(n, self.nnz_sqrt as f64, "nnz_sqrt"),
            ScanRecord::new(n, self.predicted_cholesky as f64, "predicted_cholesky"),
            ScanRecord::new(n, self.predicted_sqrt as f64, "predicted_sqrt"),
        ]
    }
}

/// Random pencils with half-bandwidth `k` and `m × m` mass blocks, reduced
/// both ways. Each size draws from its own ChaCha stream of `seed`, so a row
/// does not depend on the other sizes in the list.
pub fn scan_sparsity(k: usize, m: usize, sizes: &[usize], seed: u64) -> Result<Vec<SparsityRow>> {
    check_ascending(sizes)?;
    sizes
        .iter()
        .map(|&n| {
            if m == 0 || n % m != 0 {
                return Err(Error::OutOfRange(format!(
                    "N = {n} is not divisible by m = {m}"
                )));
            }
            let predicted_sqrt = predicted_nnz(Route::Sqrt, k, m, n)?;
            let predicted_cholesky = predicted_nnz(Route::Cholesky, k, m, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            let a = random_banded(n, k, &mut rng)?;
            let b = random_block_pd(n, m, &mut rng)?;
            let h_bar = reduce_cholesky(&a, &b)?.hamiltonian;
            let h_tilde = reduce_sqrt(&a, &b)?.hamiltonian;
            Ok(SparsityRow {
                n,
                nnz_cholesky: h_bar.count_nonzeros(DEFAULT_NONZERO_TOL),
                nnz_sqrt: h_tilde.count_nonzeros(DEFAULT_NONZERO_TOL),
                predicted_cholesky,
                predicted_sqrt,
            })
        })
        .collect()
}

fn check_ascending(values: &[usize]) -> Result<()> {
    if values.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "scan values {values:?} must be strictly ascending"
        )))
    }
}
