use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::BandedHermitian;

/// Phase headroom kept free at the top of `[0, 1)`.
pub const DEFAULT_GUARD: f64 = 0.125;

/// Affine map `λ ↦ φ = τ (λ − σ)` from eigenvalues to phases.
///
/// A valid map sends every eigenvalue of interest into `[0, 1 − guard)`;
/// the guard band hosts the padding eigenvalues of non-power-of-two problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftScale {
    pub shift: f64,
    pub scale: f64,
    pub guard: f64,
}

impl ShiftScale {
    pub fn new(shift: f64, scale: f64, guard: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && shift.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "shift-and-scale needs finite shift and positive scale (got σ = {shift}, τ = {scale})"
            )));
        }
        if !(0.0..1.0).contains(&guard) {
            return Err(Error::OutOfRange(format!(
                "guard {guard} must lie in [0, 1)"
            )));
        }
        Ok(Self {
            shift,
            scale,
            guard,
        })
    }

    pub fn phase(&self, lambda: f64) -> f64 {
        self.scale * (lambda - self.shift)
    }

    pub fn eigenvalue(&self, phase: f64) -> f64 {
        self.shift + phase / self.scale
    }

    /// Eigenvalue whose phase sits in the middle of the guard band.
    pub fn padding_value(&self) -> f64 {
        self.eigenvalue(1.0 - self.guard / 2.0)
    }

    pub fn in_range(&self, lambda: f64) -> bool {
        let phi = self.phase(lambda);
        (0.0..1.0 - self.guard).contains(&phi)
    }
}

/// Shift-and-scale built from the Gershgorin enclosure `[lo, hi]` of `h`.
///
/// The enclosure is widened by its own width `w` on both sides, giving
/// `σ = lo − w` and `τ = (1 − guard)/(3w)`, so all eigenvalues land strictly
/// inside `[0, 1 − guard)` and away from the wrap-around point. A matrix whose
/// discs collapse to a single point (a multiple of the identity) gets
/// `σ = lo`, `τ = 1`.
pub fn gershgorin_shift_scale(h: &BandedHermitian, guard: f64) -> Result<ShiftScale> {
    let (lo, hi) = h.gershgorin_interval();
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::DegenerateRange(format!(
            "Gershgorin interval [{lo}, {hi}] is not finite"
        )));
    }
    let width = hi - lo;
    if width < 1e-300 {
        return ShiftScale::new(lo, 1.0, guard);
    }
    ShiftScale::new(lo - width, (1.0 - guard) / (3.0 * width), guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_diagonal() {
        let h = BandedHermitian::from_diagonal(&[0.0, 0.5]).unwrap();
        let ss = gershgorin_shift_scale(&h, DEFAULT_GUARD).unwrap();
        assert_eq!(ss.shift, -0.5);
        assert!(((1.0 - DEFAULT_GUARD) / ss.scale - 1.5).abs() < 1e-15);
        assert!(ss.in_range(0.0) && ss.in_range(0.5));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let ss =
            gershgorin_shift_scale(&BandedHermitian::zeros(4).unwrap(), DEFAULT_GUARD).unwrap();
        assert_eq!((ss.shift, ss.scale), (0.0, 1.0));
        assert_eq!(ss.phase(0.0), 0.0);
        let h = BandedHermitian::from_diagonal(&[2.5; 3]).unwrap();
        let ss = gershgorin_shift_scale(&h, DEFAULT_GUARD).unwrap();
        assert_eq!(ss.phase(2.5), 0.0);
        assert!(ss.in_range(2.5));
    }

    #[test]
    fn padding_sits_in_guard_band() {
        let ss = ShiftScale::new(1.0, 0.25, 0.125).unwrap();
        assert!((ss.phase(ss.padding_value()) - 0.9375).abs() < 1e-15);
        assert!(!ss.in_range(ss.padding_value()));
    }

    #[test]
    fn invalid_parameters() {
        assert!(ShiftScale::new(0.0, 0.0, 0.1).is_err());
        assert!(ShiftScale::new(0.0, 1.0, 1.0).is_err());
        let h = BandedHermitian::from_diagonal(&[f64::INFINITY, 0.0]).unwrap();
        assert_eq!(
            gershgorin_shift_scale(&h, 0.1).unwrap_err().name(),
            "DegenerateRange"
        );
    }
}
