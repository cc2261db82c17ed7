//! Seeded random pencils: `A` dense within its band, `B` built from
//! `G G† + 0.1 I` blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::dense::{c64, DMat};
use crate::linalg::{BandedHermitian, BlockDiagonalPD};

/// Parameters of a random generalized problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RandomPencil {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
}

impl RandomPencil {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::ConfigInvalid(
                "random pencil needs n ≥ 1 and m ≥ 1".into(),
            ));
        }
        if !self.n.is_multiple_of(self.m) {
            return Err(Error::ConfigInvalid(format!(
                "n = {} is not divisible by the block size m = {}",
                self.n, self.m
            )));
        }
        if self.k >= self.n {
            return Err(Error::ConfigInvalid(format!(
                "half-bandwidth {} too large for n = {}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<(BandedHermitian, BlockDiagonalPD)> {
        random_pencil(self.k, self.m, self.n, self.seed)
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

/// Hermitian band of half-bandwidth `k`: real diagonal and complex
/// off-diagonals with components uniform on `[−1, 1]`.
pub fn random_banded(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<BandedHermitian> {
    BandedHermitian::from_fn(n, k, |i, j| {
        if i == j {
            c64(uniform(rng), 0.0)
        } else {
            c64(uniform(rng), uniform(rng))
        }
    })
}

/// `n/m` blocks `G G† + 0.1 I` with `G` complex uniform on `[−1, 1]²`.
pub fn random_block_pd(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<BlockDiagonalPD> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::OutOfRange(format!(
            "block size {m} does not divide {n}"
        )));
    }
    let blocks = (0..n / m)
        .map(|_| {
            let g = DMat::from_fn(m, m, |_, _| c64(uniform(rng), uniform(rng)));
            &g * g.adjoint() + DMat::identity(m, m) * c64(0.1, 0.0)
        })
        .collect();
    BlockDiagonalPD::new(blocks)
}

pub fn random_pencil(
    k: usize,
    m: usize,
    n: usize,
    seed: u64,
) -> Result<(BandedHermitian, BlockDiagonalPD)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_banded(n, k, &mut rng)?;
    let b = random_block_pd(n, m, &mut rng)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_shaped() {
        let (a1, b1) = random_pencil(2, 4, 16, 11).unwrap();
        let (a2, b2) = random_pencil(2, 4, 16, 11).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1.to_dense(), b2.to_dense());
        assert_eq!(a1.half_bandwidth(), 2);
        assert_eq!(b1.block_sizes(), vec![4; 4]);
        let (a3, _) = random_pencil(2, 4, 16, 12).unwrap();
        assert_ne!(a1, a3);
    }

    #[test]
    fn validation() {
        assert!(RandomPencil {
            k: 1,
            m: 3,
            n: 16,
            seed: 0
        }
        .validate()
        .is_err());
        assert!(RandomPencil {
            k: 1,
            m: 4,
            n: 16,
            seed: 0
        }
        .validate()
        .is_ok());
    }
}
