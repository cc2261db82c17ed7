use crate::error::{Error, Result};
use crate::linalg::dense::{c64, vec_norm, C64};

/// Allowed deviation of `Σ|a|²` from one.
pub const NORM_TOL: f64 = 1e-10;

/// Normalized amplitudes of an `n`-qubit register.
///
/// Qubit `q` corresponds to bit `q` of the basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<C64>,
}

fn qubits_for(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: len.max(1).next_power_of_two(),
            found: len,
        });
    }
    Ok(len.trailing_zeros() as usize)
}

impl Statevector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for(amps.len())?;
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::OutOfRange(format!(
                "statevector norm² is {norm2}, expected 1"
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for(amps.len())?;
        let norm = vec_norm(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::OutOfRange("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            n_qubits,
            amps: amps.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Zero-pads `v` to `2^n_qubits` entries and normalizes.
    pub fn from_system_vector(v: &[C64], n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if v.len() > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let mut amps = v.to_vec();
        amps.resize(dim, C64::new(0.0, 0.0));
        Self::normalized(amps)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::OutOfRange(format!(
                "basis index {index} outside a {dim}-dimensional register"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = c64(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn uniform(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = c64(1.0 / (dim as f64).sqrt(), 0.0);
        Self {
            n_qubits,
            amps: vec![a; dim],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.n_qubits {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "qubit {q} on a {}-qubit register",
                self.n_qubits
            )))
        }
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = (a + b) * s;
                self.amps[i | bit] = (a - b) * s;
            }
        }
        Ok(())
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
        Ok(())
    }

    /// Multiplies by `e^{iθ}` every amplitude whose `control` and `target`
    /// bits are both set.
    pub fn apply_controlled_phase(
        &mut self,
        control: usize,
        target: usize,
        theta: f64,
    ) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        let mask = (1usize << control) | (1usize << target);
        let phase = C64::from_polar(1.0, theta);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
        Ok(())
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Ok(());
        }
        let (ba, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ba != 0 && i & bb == 0 {
                self.amps.swap(i, (i & !ba) | bb);
            }
        }
        Ok(())
    }

    /// Inverse quantum Fourier transform on the `width` qubits starting at
    /// `first`, which hold the integer `y = Σ_j b_{first+j} 2^j`.
    ///
    /// Maps `Σ_y e^{2πi x y / 2^width} |y⟩ / √2^width` to `|x⟩`.
    pub fn apply_inverse_qft(&mut self, first: usize, width: usize) -> Result<()> {
        if width == 0 {
            return Ok(());
        }
        self.check_qubit(first + width - 1)?;
        for j in 0..width / 2 {
            self.apply_swap(first + j, first + width - 1 - j)?;
        }
        for q in 0..width {
            for l in (0..q).rev() {
                let angle = -std::f64::consts::PI / (1u64 << (q - l)) as f64;
                self.apply_controlled_phase(first + l, first + q, angle)?;
            }
            self.apply_h(first + q)?;
        }
        Ok(())
    }
}
