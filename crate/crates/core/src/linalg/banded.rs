use super::dense::{c64, max_abs, DMat, C64};
use crate::error::{check_dim, Error, Result};

/// Relative tolerance used when accepting dense input as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Hermitian matrix stored by its upper diagonals.
///
/// `bands[d][i]` holds `M[i][i + d]` for `d = 0..=k`; the lower triangle is
/// implied by conjugate symmetry and produced on read. The main diagonal is
/// kept exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHermitian {
    size: usize,
    bands: Vec<Vec<C64>>,
}

impl BandedHermitian {
    /// Builds from explicit upper bands. `bands[0]` must have length `size`,
    /// `bands[d]` length `size - d`.
    pub fn from_bands(size: usize, mut bands: Vec<Vec<C64>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::OutOfRange("matrix size must be positive".into()));
        }
        if bands.is_empty() {
            bands.push(vec![C64::new(0.0, 0.0); size]);
        }
        if bands.len() > size {
            return Err(Error::BandwidthTooLarge {
                max: size - 1,
                found: bands.len() - 1,
            });
        }
        for (d, band) in bands.iter().enumerate() {
            check_dim(size - d, band.len())?;
        }
        let scale = bands
            .iter()
            .flatten()
            .fold(0.0f64, |acc, z| acc.max(z.norm()));
        for z in bands[0].iter_mut() {
            if z.im.abs() > HERMITIAN_TOL * scale {
                return Err(Error::NotHermitian(format!(
                    "diagonal entry has imaginary part {}",
                    z.im
                )));
            }
            z.im = 0.0;
        }
        Ok(Self { size, bands })
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let band = diag.iter().map(|&x| c64(x, 0.0)).collect();
        Self::from_bands(diag.len(), vec![band])
    }

    /// Real symmetric tridiagonal matrix from its diagonal and first
    /// off-diagonal.
    pub fn tridiagonal(diag: &[f64], off: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::OutOfRange("matrix size must be positive".into()));
        }
        check_dim(n - 1, off.len())?;
        let d0 = diag.iter().map(|&x| c64(x, 0.0)).collect();
        if n == 1 {
            return Self::from_bands(1, vec![d0]);
        }
        let d1 = off.iter().map(|&x| c64(x, 0.0)).collect();
        Self::from_bands(n, vec![d0, d1])
    }

    pub fn zeros(size: usize) -> Result<Self> {
        Self::from_bands(size, vec![vec![C64::new(0.0, 0.0); size]])
    }

    pub fn identity(size: usize) -> Result<Self> {
        Self::from_diagonal(&vec![1.0; size])
    }

    /// Fills the upper band `0 <= j - i <= k` from `f(i, j)`.
    pub fn from_fn(size: usize, k: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let k = k.min(size.saturating_sub(1));
        let bands = (0..=k)
            .map(|d| (0..size - d).map(|i| f(i, i + d)).collect())
            .collect();
        Self::from_bands(size, bands)
    }

    /// Accepts a dense matrix that is Hermitian within `HERMITIAN_TOL`
    /// (relative to its largest entry). Bands that are identically zero beyond
    /// the outermost nonzero diagonal are not stored.
    pub fn from_dense(m: &DMat) -> Result<Self> {
        let n = m.nrows();
        check_dim(n, m.ncols())?;
        let scale = max_abs(m);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let z = m[(i, j)];
                if (z - m[(j, i)].conj()).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::NotHermitian(format!(
                        "entry ({i}, {j}) differs from the conjugate of ({j}, {i})"
                    )));
                }
                if z != C64::new(0.0, 0.0) {
                    k = k.max(j - i);
                }
            }
        }
        Self::from_fn(n, k, |i, j| {
            if i == j {
                c64(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn half_bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    /// Stored upper band at offset `d` (`M[i][i + d]`).
    pub fn band(&self, d: usize) -> &[C64] {
        &self.bands[d]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.bands[0].iter().map(|z| z.re).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        if i <= j {
            let d = j - i;
            if d < self.bands.len() {
                return self.bands[d][i];
            }
        } else {
            let d = i - j;
            if d < self.bands.len() {
                return self.bands[d][j].conj();
            }
        }
        C64::new(0.0, 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.bands
            .iter()
            .flatten()
            .fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn to_dense(&self) -> DMat {
        DMat::from_fn(self.size, self.size, |i, j| self.get(i, j))
    }

    pub fn matvec(&self, x: &[C64]) -> Result<Vec<C64>> {
        check_dim(self.size, x.len())?;
        let mut y: Vec<C64> = self.bands[0].iter().zip(x).map(|(a, b)| a * b).collect();
        for (d, band) in self.bands.iter().enumerate().skip(1) {
            for (i, a) in band.iter().enumerate() {
                y[i] += a * x[i + d];
                y[i + d] += a.conj() * x[i];
            }
        }
        Ok(y)
    }

    /// Gershgorin enclosure `[min_i (a_ii - R_i), max_i (a_ii + R_i)]` of the
    /// spectrum.
    pub fn gershgorin_interval(&self) -> (f64, f64) {
        let mut radius = vec![0.0f64; self.size];
        for band in self.bands.iter().skip(1) {
            let d = self.size - band.len();
            for (i, a) in band.iter().enumerate() {
                let r = a.norm();
                radius[i] += r;
                radius[i + d] += r;
            }
        }
        let diag = &self.bands[0];
        let lo = (0..self.size)
            .map(|i| diag[i].re - radius[i])
            .fold(f64::INFINITY, f64::min);
        let hi = (0..self.size)
            .map(|i| diag[i].re + radius[i])
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Zeroes entries with `|M_ij| <= rel_tol * max|M|` and drops trailing
    /// bands that become empty.
    pub fn drop_small(mut self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.max_abs();
        for band in self.bands.iter_mut() {
            for z in band.iter_mut() {
                if z.norm() <= cut {
                    *z = C64::new(0.0, 0.0);
                }
            }
        }
        while self.bands.len() > 1
            && self
                .bands
                .last()
                .is_some_and(|b| b.iter().all(|z| *z == C64::new(0.0, 0.0)))
        {
            self.bands.pop();
        }
        self
    }

    /// `self + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for z in out.bands[0].iter_mut() {
            z.re += shift;
        }
        out
    }

    /// Embeds into a larger matrix, appending real diagonal entries
    /// `pad_value` with no coupling to the original block.
    pub fn padded(&self, new_size: usize, pad_value: f64) -> Result<Self> {
        if new_size < self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: new_size,
            });
        }
        let extra = new_size - self.size;
        let bands = self
            .bands
            .iter()
            .enumerate()
            .map(|(d, band)| {
                let mut b = band.clone();
                let fill = if d == 0 {
                    c64(pad_value, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                b.extend(std::iter::repeat_n(fill, extra));
                b
            })
            .collect();
        Self::from_bands(new_size, bands)
    }
}

/// `i [H1, H2]`, which is Hermitian whenever `H1` and `H2` are.
pub fn i_commutator(h1: &BandedHermitian, h2: &BandedHermitian) -> Result<BandedHermitian> {
    check_dim(h1.size(), h2.size())?;
    let n = h1.size();
    let k1 = h1.half_bandwidth();
    let k2 = h2.half_bandwidth();
    let k = (k1 + k2).min(n - 1);
    let i_unit = c64(0.0, 1.0);
    BandedHermitian::from_fn(n, k, |i, j| {
        let lo = i.saturating_sub(k1.max(k2));
        let hi = (i + k1.max(k2)).min(n - 1);
        let mut acc = C64::new(0.0, 0.0);
        for l in lo..=hi {
            acc += h1.get(i, l) * h2.get(l, j) - h2.get(i, l) * h1.get(l, j);
        }
        i_unit * acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BandedHermitian {
        BandedHermitian::from_bands(
            4,
            vec![
                vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0), c64(4.0, 0.0)],
                vec![c64(0.5, 1.0), c64(-1.0, 0.0), c64(0.0, -2.0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn mirrored_read_is_conjugate() {
        let h = sample();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h.get(i, j), h.get(j, i).conj());
                if i.abs_diff(j) > 1 {
                    assert_eq!(h.get(i, j), C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn matvec_matches_dense() {
        let h = sample();
        let x = vec![
            c64(1.0, -1.0),
            c64(0.5, 0.0),
            c64(0.0, 2.0),
            c64(-1.0, 0.25),
        ];
        let y = h.matvec(&x).unwrap();
        let yd = super::super::dense::mat_vec(&h.to_dense(), &x);
        for (a, b) in y.iter().zip(&yd) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn dense_round_trip() {
        let h = sample();
        assert_eq!(BandedHermitian::from_dense(&h.to_dense()).unwrap(), h);
    }

    #[test]
    fn rejects_complex_diagonal_and_bad_lengths() {
        let err =
            BandedHermitian::from_bands(2, vec![vec![c64(1.0, 0.5), c64(1.0, 0.0)]]).unwrap_err();
        assert_eq!(err.name(), "NotHermitian");
        let err = BandedHermitian::from_bands(3, vec![vec![c64(1.0, 0.0); 2]]).unwrap_err();
        assert_eq!(err.name(), "DimensionMismatch");
    }

    #[test]
    fn non_hermitian_dense_rejected() {
        let m = DMat::from_row_slice(
            2,
            2,
            &[c64(1.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(1.0, 0.0)],
        );
        assert!(BandedHermitian::from_dense(&m).is_err());
    }

    #[test]
    fn drop_small_trims_bands() {
        let h = BandedHermitian::from_bands(
            3,
            vec![
                vec![c64(1.0, 0.0); 3],
                vec![c64(1.0, 0.0); 2],
                vec![c64(1e-15, 0.0)],
            ],
        )
        .unwrap()
        .drop_small(1e-12);
        assert_eq!(h.half_bandwidth(), 1);
    }

    #[test]
    fn commutator_of_diagonals_vanishes() {
        let a = BandedHermitian::from_diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let b = BandedHermitian::from_diagonal(&[4.0, -1.0, 0.5]).unwrap();
        assert_eq!(i_commutator(&a, &b).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn commutator_matches_dense() {
        let a = sample();
        let b = BandedHermitian::from_diagonal(&[0.0, 1.0, 4.0, 9.0]).unwrap();
        let c = i_commutator(&a, &b).unwrap().to_dense();
        let (ad, bd) = (a.to_dense(), b.to_dense());
        let expected = (&ad * &bd - &bd * &ad) * c64(0.0, 1.0);
        assert!(super::super::dense::rel_frobenius_diff(&c, &expected) < 1e-15);
    }

    #[test]
    fn gershgorin_encloses_spectrum() {
        let h = sample();
        let (lo, hi) = h.gershgorin_interval();
        let e = super::super::dense::HermitianEigen::new(&h.to_dense()).unwrap();
        assert!(e.values.iter().all(|&l| l >= lo && l <= hi));
    }
}
