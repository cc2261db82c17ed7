use std::f64::consts::PI;

use pencil_qpe::analysis::random_pencil;
use pencil_qpe::linalg::{c64, BandedHermitian, DMat, C64};
use pencil_qpe::qsim::{
    embed_power_of_two, gershgorin_shift_scale, overlap_probabilities, run_qpe, sample_outcomes,
    Evolution, ShiftScale, Statevector, DEFAULT_GUARD,
};

/// Probability of reading `y` from a `t`-bit register for a single eigenphase `phi`.
fn fejer_kernel(phi: f64, y: usize, t: usize) -> f64 {
    let m = (1usize << t) as f64;
    let d = phi - y as f64 / m;
    let s = (PI * d).sin();
    if s.abs() < 1e-14 {
        return 1.0;
    }
    ((PI * m * d).sin() / (m * s)).powi(2)
}

/// `U diag(values) U†` with a fixed 2×2 rotation mixing the basis states.
fn rotated(values: [f64; 2], angle: f64) -> BandedHermitian {
    let (c, s) = (angle.cos(), angle.sin());
    let u = DMat::from_row_slice(
        2,
        2,
        &[c64(c, 0.0), c64(0.0, -s), c64(0.0, -s), c64(c, 0.0)],
    );
    let d = DMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
        c64(values[0], 0.0),
        c64(values[1], 0.0),
    ]));
    BandedHermitian::from_dense(&(&u * d * u.adjoint())).unwrap()
}

fn unit() -> ShiftScale {
    ShiftScale::new(0.0, 1.0, DEFAULT_GUARD).unwrap()
}

#[test]
fn off_grid_phase_follows_the_kernel() {
    for phi in [0.1, 0.3337, 0.62] {
        let h = BandedHermitian::from_diagonal(&[phi, 0.0]).unwrap();
        let psi = Statevector::basis(1, 0).unwrap();
        let t = 5;
        let r = run_qpe(&h, &psi, t, &unit(), Evolution::Exact).unwrap();
        for (y, p) in r.distribution.iter().enumerate() {
            assert!(
                (p - fejer_kernel(phi, y, t)).abs() < 1e-12,
                "phi={phi} y={y}"
            );
        }
        // the two nearest grid points carry at least 8/π² between them
        let mut sorted = r.distribution.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        assert!(sorted[0] + sorted[1] > 8.0 / (PI * PI) - 1e-12);
    }
}

#[test]
fn distribution_is_overlap_weighted_sum() {
    let h = rotated([0.25, 0.5], 0.4);
    let psi = Statevector::normalized(vec![c64(0.3, 0.1), c64(-0.2, 0.9)]).unwrap();
    let r = run_qpe(&h, &psi, 3, &unit(), Evolution::Exact).unwrap();
    let overlaps = overlap_probabilities(&psi, &h).unwrap();
    for (lambda, w) in &overlaps {
        let y = (lambda * 8.0).round() as usize;
        assert!((r.distribution[y] - w).abs() < 1e-10);
    }
    assert!((overlaps.iter().map(|(_, w)| w).sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn padding_states_read_out_in_the_guard_band() {
    let h = BandedHermitian::from_diagonal(&[0.1, 0.2, 0.3]).unwrap();
    let ss = unit();
    let padded = embed_power_of_two(&h, &ss).unwrap();
    assert_eq!(padded.size(), 4);
    // index 3 is the padding slot
    let r = run_qpe(
        &padded,
        &Statevector::basis(2, 3).unwrap(),
        4,
        &ss,
        Evolution::Exact,
    )
    .unwrap();
    assert_eq!(r.dominant_outcome(), 15);
    assert!((r.distribution[15] - 1.0).abs() < 1e-12);
    assert!((r.estimate(15).unwrap() - ss.padding_value()).abs() < 1e-12);
    // a physical state never leaks into the guard band beyond the kernel tail
    let r = run_qpe(
        &padded,
        &Statevector::basis(2, 2).unwrap(),
        4,
        &ss,
        Evolution::Exact,
    )
    .unwrap();
    let guard_mass: f64 = r.distribution[14..].iter().sum();
    let tail: f64 = (14..16).map(|y| fejer_kernel(0.3, y, 4)).sum();
    assert!((guard_mass - tail).abs() < 1e-12);
}

#[test]
fn equal_superposition_splits_shots_evenly() {
    let h = BandedHermitian::from_diagonal(&[0.25, 0.75]).unwrap();
    let r = run_qpe(&h, &Statevector::uniform(1), 2, &unit(), Evolution::Exact).unwrap();
    let shots = sample_outcomes(&r, 100_000, 2024);
    let ones = shots.iter().filter(|&&y| y == 1).count();
    let threes = shots.iter().filter(|&&y| y == 3).count();
    assert_eq!(ones + threes, shots.len());
    assert!((ones as f64 / shots.len() as f64 - 0.5).abs() < 0.01);
}

#[test]
fn trotterized_distribution_converges_to_exact() {
    let (a, _) = random_pencil(1, 1, 8, 31).unwrap();
    let ss = gershgorin_shift_scale(&a, DEFAULT_GUARD).unwrap();
    let psi = Statevector::uniform(3);
    let exact = run_qpe(&a, &psi, 5, &ss, Evolution::Exact).unwrap();
    let tv = |steps: usize| -> f64 {
        let r = run_qpe(&a, &psi, 5, &ss, Evolution::Trotter { steps }).unwrap();
        0.5 * r
            .distribution
            .iter()
            .zip(&exact.distribution)
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
    };
    let errs: Vec<f64> = [2, 8, 32, 128].into_iter().map(tv).collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
    assert!(errs[3] < 1e-3, "{errs:?}");
}

#[test]
fn lowest_eigenvalue_is_recovered_from_its_eigenvector() {
    let (a, _) = random_pencil(2, 1, 8, 5).unwrap();
    let ss = gershgorin_shift_scale(&a, DEFAULT_GUARD).unwrap();
    let overlaps = overlap_probabilities(&Statevector::uniform(3), &a).unwrap();
    let lowest = overlaps[0].0;
    let eig = pencil_qpe::linalg::HermitianEigen::new(&a.to_dense()).unwrap();
    let v: Vec<C64> = eig.vector(0);
    let psi = Statevector::from_system_vector(&v, 3).unwrap();
    let t = 8;
    let r = run_qpe(&a, &psi, t, &ss, Evolution::Exact).unwrap();
    let est = r.estimate(r.dominant_outcome()).unwrap();
    // half a bin of resolution in eigenvalue units
    let resolution = 0.5 / ((1usize << t) as f64 * ss.scale);
    assert!((est - lowest).abs() <= resolution + 1e-12);
}
