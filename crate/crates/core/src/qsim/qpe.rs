//! Textbook phase estimation with an inverse QFT readout.
//!
//! Register layout: the `n_sys` system qubits are least significant and the
//! `t` ancilla qubits most significant, so basis index `y · 2^n_sys + s`
//! pairs ancilla value `y` with system state `s`. Ancilla bit `j` controls
//! `U^{2^j}` with `U = e^{−2πiτ(H − σI)}`.
//!
//! An eigenvector with mapped phase `φ = τ(λ − σ)` satisfies
//! `U v = e^{−2πiφ} v`. The controls fire on ancilla `|0⟩` rather than `|1⟩`,
//! which leaves branch `y` with `U^{(2^t − 1) − y}` and, up to a global phase,
//! the kickback `e^{+2πiφy}`. The inverse QFT then reads `y ≈ 2^t φ` directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::evolve::{evolution_phases, ExactPropagator, TrotterPropagator};
use super::shift::ShiftScale;
use super::statevector::Statevector;
use crate::error::{check_dim, Error, Result};
use crate::linalg::dense::C64;
use crate::linalg::{BandedHermitian, HermitianEigen};

/// Largest simulated register (system plus ancilla qubits).
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Evolution {
    Exact,
    Trotter { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub seed: u64,
    pub outcomes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QpeResult {
    pub t_bits: usize,
    /// Probability of each ancilla outcome `y = 0 .. 2^t_bits`.
    pub distribution: Vec<f64>,
    pub shift_scale: ShiftScale,
    pub samples: Option<SampleSet>,
}

impl QpeResult {
    /// Most probable outcome (lowest index on ties).
    pub fn dominant_outcome(&self) -> usize {
        let mut best = 0;
        for (y, &p) in self.distribution.iter().enumerate() {
            if p > self.distribution[best] {
                best = y;
            }
        }
        best
    }

    pub fn estimate(&self, y: usize) -> Result<f64> {
        outcome_to_eigenvalue(y, self.t_bits, &self.shift_scale)
    }

    /// Draws `shots` outcomes and records them on the result.
    pub fn with_samples(mut self, shots: usize, seed: u64) -> Self {
        let outcomes = sample_outcomes(&self, shots, seed);
        self.samples = Some(SampleSet { seed, outcomes });
        self
    }
}

/// Embeds `h` into the next power-of-two dimension. Padding entries get the
/// eigenvalue whose phase is `1 − guard/2`, keeping them apart from every
/// in-range eigenphase.
pub fn embed_power_of_two(
    h: &BandedHermitian,
    shift_scale: &ShiftScale,
) -> Result<BandedHermitian> {
    let n = h.size();
    if n.is_power_of_two() {
        return Ok(h.clone());
    }
    h.padded(n.next_power_of_two(), shift_scale.padding_value())
}

enum Controlled {
    Exact {
        eig: HermitianEigen,
    },
    Trotter {
        prop: TrotterPropagator,
        steps: usize,
    },
}

pub fn run_qpe(
    h: &BandedHermitian,
    psi0: &Statevector,
    t_bits: usize,
    shift_scale: &ShiftScale,
    evolution: Evolution,
) -> Result<QpeResult> {
    check_dim(h.size(), psi0.dim())?;
    if t_bits == 0 {
        return Err(Error::OutOfRange(
            "at least one ancilla qubit is required".into(),
        ));
    }
    let n_sys = psi0.n_qubits();
    let total = n_sys + t_bits;
    if total > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: total,
            limit: MAX_QUBITS,
        });
    }
    let dim = psi0.dim();
    let tau2pi = 2.0 * std::f64::consts::PI * shift_scale.scale;

    let controlled = match evolution {
        Evolution::Exact => Controlled::Exact {
            eig: ExactPropagator::new(h)?.eigen().clone(),
        },
        Evolution::Trotter { steps } => {
            if steps == 0 {
                return Err(Error::OutOfRange("Trotter steps must be at least 1".into()));
            }
            let (h1, h2) = super::evolve::split_tridiagonal(h)?;
            Controlled::Trotter {
                prop: TrotterPropagator::new(&h1, &h2)?,
                steps,
            }
        }
    };

    let mut amps = vec![C64::new(0.0, 0.0); dim << t_bits];
    amps[..dim].copy_from_slice(psi0.amplitudes());
    let mut state = Statevector::new(amps)?;
    for j in 0..t_bits {
        state.apply_h(n_sys + j)?;
    }

    for j in 0..t_bits {
        let power = 1usize << j;
        let amps = state.amplitudes_mut();
        match &controlled {
            Controlled::Exact { eig } => {
                let shifted: Vec<f64> = eig.values.iter().map(|l| l - shift_scale.shift).collect();
                let phases = evolution_phases(&shifted, tau2pi * power as f64);
                for y in (0..1usize << t_bits).filter(|y| y & power == 0) {
                    let block = &mut amps[y * dim..(y + 1) * dim];
                    let out = eig.apply_diagonal_in_eigenbasis(&phases, block);
                    block.copy_from_slice(&out);
                }
            }
            Controlled::Trotter { prop, steps } => {
                let step = prop.step(tau2pi / *steps as f64, shift_scale.shift);
                for y in (0..1usize << t_bits).filter(|y| y & power == 0) {
                    let block = &mut amps[y * dim..(y + 1) * dim];
                    for _ in 0..power * steps {
                        step.apply_in_place(block);
                    }
                }
            }
        }
    }

    state.apply_inverse_qft(n_sys, t_bits)?;

    let distribution = state
        .amplitudes()
        .chunks(dim)
        .map(|block| block.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    Ok(QpeResult {
        t_bits,
        distribution,
        shift_scale: *shift_scale,
        samples: None,
    })
}

/// I.i.d. draws by inverse-CDF sampling with a ChaCha8 stream seeded from
/// `seed`; one uniform `f64` is consumed per shot.
pub fn sample_outcomes(result: &QpeResult, shots: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cdf = Vec::with_capacity(result.distribution.len());
    let mut acc = 0.0;
    for &p in &result.distribution {
        acc += p.max(0.0);
        cdf.push(acc);
    }
    let last_support = result
        .distribution
        .iter()
        .rposition(|&p| p > 0.0)
        .unwrap_or(0);
    (0..shots)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * acc;
            cdf.iter()
                .position(|&c| c > u)
                .unwrap_or(last_support)
                .min(last_support)
        })
        .collect()
}

/// `λ̂ = σ + (y / 2^t) / τ`.
pub fn outcome_to_eigenvalue(y: usize, t_bits: usize, shift_scale: &ShiftScale) -> Result<f64> {
    let m = 1usize << t_bits;
    if y >= m {
        return Err(Error::OutOfRange(format!(
            "outcome {y} not below 2^{t_bits}"
        )));
    }
    Ok(shift_scale.eigenvalue(y as f64 / m as f64))
}

/// Eigenvalues of `h` with the overlap probabilities `|⟨ψ0|v_j⟩|²`.
pub fn overlap_probabilities(psi0: &Statevector, h: &BandedHermitian) -> Result<Vec<(f64, f64)>> {
    check_dim(h.size(), psi0.dim())?;
    let eig = HermitianEigen::new(&h.to_dense())?;
    Ok((0..eig.dim())
        .map(|j| {
            let v = eig.vector(j);
            let p = crate::linalg::dense::inner(&v, psi0.amplitudes()).norm_sqr();
            (eig.values[j], p)
        })
        .collect())
}
