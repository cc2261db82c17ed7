use serde::{Deserialize, Serialize};

/// A coefficient function on `[0, 1]`.
///
/// Serialized as `{"constant": c}`, `{"poly": [c0, c1, …]}` or
/// `{"samples": [v0, …, vM]}`. Samples sit on the uniform nodes
/// `x_i = i / M` and are linearly interpolated in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficient {
    Constant(f64),
    Poly(Vec<f64>),
    Samples(Vec<f64>),
}

impl Coefficient {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Poly(cs) => cs.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            Coefficient::Samples(vs) => match vs.len() {
                0 => 0.0,
                1 => vs[0],
                len => {
                    let intervals = (len - 1) as f64;
                    let t = (x.clamp(0.0, 1.0)) * intervals;
                    let i = (t.floor() as usize).min(len - 2);
                    let frac = t - i as f64;
                    vs[i] * (1.0 - frac) + vs[i + 1] * frac
                }
            },
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Coefficient::Constant(_) => true,
            Coefficient::Poly(cs) => cs.iter().skip(1).all(|&c| c == 0.0),
            Coefficient::Samples(vs) => vs.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// True when the coefficient is affine on every interval between the
    /// uniform nodes `j / intervals`.
    pub fn is_piecewise_linear_on(&self, intervals: usize) -> bool {
        match self {
            Coefficient::Constant(_) => true,
            Coefficient::Poly(cs) => cs.iter().skip(2).all(|&c| c == 0.0),
            Coefficient::Samples(vs) => {
                let m = vs.len().saturating_sub(1);
                m <= 1 || intervals.is_multiple_of(m)
            }
        }
    }

    /// Interior breakpoints of a sampled coefficient (empty otherwise).
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Coefficient::Samples(vs) if vs.len() > 2 => {
                let m = vs.len() - 1;
                (1..m).map(|i| i as f64 / m as f64).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Largest polynomial degree on any smooth piece.
    pub fn piece_degree(&self) -> usize {
        match self {
            Coefficient::Constant(_) => 0,
            Coefficient::Poly(cs) => cs.iter().rposition(|&c| c != 0.0).unwrap_or(0),
            Coefficient::Samples(_) => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        assert_eq!(Coefficient::Constant(2.5).eval(0.3), 2.5);
        // 1 + 2x + 3x²
        assert_eq!(Coefficient::Poly(vec![1.0, 2.0, 3.0]).eval(0.5), 2.75);
        let s = Coefficient::Samples(vec![0.0, 2.0, 1.0]);
        assert_eq!(s.eval(0.25), 1.0);
        assert_eq!(s.eval(0.5), 2.0);
        assert_eq!(s.eval(1.0), 1.0);
        assert_eq!(s.eval(0.75), 1.5);
    }

    #[test]
    fn json_forms() {
        let c: Coefficient = serde_json::from_str(r#"{"constant": 1}"#).unwrap();
        assert_eq!(c, Coefficient::Constant(1.0));
        let c: Coefficient = serde_json::from_str(r#"{"poly": [1, 0.5]}"#).unwrap();
        assert_eq!(c, Coefficient::Poly(vec![1.0, 0.5]));
        let c: Coefficient = serde_json::from_str(r#"{"samples": [1, 2, 3]}"#).unwrap();
        assert_eq!(c, Coefficient::Samples(vec![1.0, 2.0, 3.0]));
    }

    #[test]
    fn piecewise_linearity() {
        assert!(Coefficient::Poly(vec![1.0, 1.0]).is_piecewise_linear_on(7));
        assert!(!Coefficient::Poly(vec![1.0, 0.0, 1.0]).is_piecewise_linear_on(7));
        assert!(Coefficient::Samples(vec![1.0; 9]).is_piecewise_linear_on(8));
        assert!(Coefficient::Samples(vec![1.0; 5]).is_piecewise_linear_on(8));
        assert!(!Coefficient::Samples(vec![1.0; 4]).is_piecewise_linear_on(8));
    }
}
