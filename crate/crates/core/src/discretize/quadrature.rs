/// Gauss–Legendre nodes and weights on `[0, 1]`, exact for polynomials of
/// degree `2 * points - 1`.
pub fn gauss_legendre_unit(points: usize) -> Vec<(f64, f64)> {
    assert!(points >= 1);
    let n = points;
    let mut rule = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule[i] = ((1.0 - z) / 2.0, w / 2.0);
        rule[n - 1 - i] = ((1.0 + z) / 2.0, w / 2.0);
    }
    rule
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_monomials_exactly() {
        for points in 1..8 {
            let rule = gauss_legendre_unit(points);
            let wsum: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((wsum - 1.0).abs() < 1e-14);
            for deg in 0..(2 * points) {
                let got: f64 = rule.iter().map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!(
                    (got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14,
                    "points {points} deg {deg}"
                );
            }
        }
    }

    #[test]
    fn two_point_rule() {
        let rule = gauss_legendre_unit(2);
        let off = 0.5 / 3f64.sqrt();
        assert!((rule[0].0 - (0.5 - off)).abs() < 1e-15);
        assert!((rule[1].0 - (0.5 + off)).abs() < 1e-15);
    }
}
