//! Problem-spec files.
//!
//! Accepted shapes:
//!
//! ```json
//! {"p": {"constant": 1}, "q": {"constant": 0}, "r": {"constant": 1}, "n": 15}
//! {"n": 15, "coefficients": {"p": {"poly": [1, 0.5]}, "r": {"samples": [...]}}}
//! {"random": {"k": 1, "m": 4, "n": 256, "seed": 7}}
//! ```
//!
//! A missing `q` defaults to zero. Sampled coefficients need exactly `n + 2`
//! values, one per grid node including both boundary points.

use std::path::Path;

use serde::Deserialize;

use crate::analysis::RandomPencil;
use crate::discretize::{build_sl_generalized, Coefficient, GridSpec, SturmLiouvilleSpec};
use crate::error::{Error, Result};
use crate::linalg::{BandedHermitian, BlockDiagonalPD};

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    SturmLiouville {
        spec: SturmLiouvilleSpec,
        grid: GridSpec,
    },
    Random(RandomPencil),
}

impl Problem {
    pub fn laplacian(n: usize) -> Result<Self> {
        Ok(Problem::SturmLiouville {
            spec: SturmLiouvilleSpec::laplacian(),
            grid: GridSpec::new(n)?,
        })
    }

    pub fn size(&self) -> usize {
        match self {
            Problem::SturmLiouville { grid, .. } => grid.n,
            Problem::Random(r) => r.n,
        }
    }

    /// Replaces the problem size, re-validating sampled coefficients.
    pub fn with_size(self, n: usize) -> Result<Self> {
        match self {
            Problem::SturmLiouville { spec, .. } => sturm_liouville(spec, n),
            Problem::Random(r) => {
                let r = RandomPencil { n, ..r };
                r.validate()?;
                Ok(Problem::Random(r))
            }
        }
    }

    pub fn pencil(&self) -> Result<(BandedHermitian, BlockDiagonalPD)> {
        match self {
            Problem::SturmLiouville { spec, grid } => build_sl_generalized(spec, grid),
            Problem::Random(r) => r.build(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Coefficients {
    p: Coefficient,
    #[serde(default = "zero")]
    q: Coefficient,
    r: Coefficient,
}

fn zero() -> Coefficient {
    Coefficient::Constant(0.0)
}

fn sturm_liouville(spec: SturmLiouvilleSpec, n: usize) -> Result<Problem> {
    for (name, c) in [("p", &spec.p), ("q", &spec.q), ("r", &spec.r)] {
        if let Coefficient::Samples(v) = c {
            if v.len() != n + 2 {
                return Err(Error::ParseError(format!(
                    "field `{name}.samples`: expected n + 2 = {} values, found {}",
                    n + 2,
                    v.len()
                )));
            }
        }
    }
    let grid = GridSpec::new(n).map_err(|_| {
        Error::ParseError(format!(
            "field `n`: need at least one interior point, got {n}"
        ))
    })?;
    spec.validate_on(&grid)?;
    Ok(Problem::SturmLiouville { spec, grid })
}

/// Parses a problem document. Coefficient positivity is checked on the grid
/// points the discretization will use.
pub fn parse_problem(text: &str) -> Result<Problem> {
    // a first pass through `Value` keeps line/column context for syntax
    // errors, the typed pass reports the offending field
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    let typed_err = |e: serde_json::Error| Error::ParseError(format!("problem: {e}"));
    if value.get("random").is_some() {
        let r: RandomProblem = serde_json::from_value(value).map_err(typed_err)?;
        r.random.validate()?;
        Ok(Problem::Random(r.random))
    } else if value.get("coefficients").is_some() {
        let r: NestedProblem = serde_json::from_value(value).map_err(typed_err)?;
        let c = r.coefficients;
        sturm_liouville(SturmLiouvilleSpec::new(c.p, c.q, c.r), r.n)
    } else {
        let r: FlatProblem = serde_json::from_value(value).map_err(typed_err)?;
        sturm_liouville(SturmLiouvilleSpec::new(r.p, r.q, r.r), r.n)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomProblem {
    random: RandomPencil,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NestedProblem {
    n: usize,
    coefficients: Coefficients,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatProblem {
    n: usize,
    p: Coefficient,
    #[serde(default = "zero")]
    q: Coefficient,
    r: Coefficient,
}

pub fn load_problem_spec(path: &Path) -> Result<Problem> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| match e {
        Error::ParseError(msg) => Error::ParseError(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_nested_forms() {
        let flat =
            parse_problem(r#"{"p":{"constant":1},"q":{"constant":0},"r":{"constant":1},"n":15}"#)
                .unwrap();
        let nested = parse_problem(
            r#"{"n":15,"coefficients":{"p":{"constant":1},"q":{"constant":0},"r":{"constant":1}}}"#,
        )
        .unwrap();
        assert_eq!(flat, nested);
        assert_eq!(flat, Problem::laplacian(15).unwrap());
    }

    #[test]
    fn negative_weight_rejected() {
        let err =
            parse_problem(r#"{"p":{"constant":1},"q":{"constant":0},"r":{"constant":-1},"n":4}"#)
                .unwrap_err();
        assert_eq!(err.name(), "NonPositiveCoefficient");
    }

    #[test]
    fn sample_arity() {
        let doc = |len: usize| {
            let v: Vec<String> = (0..len).map(|_| "1.0".to_string()).collect();
            format!(
                r#"{{"n":3,"p":{{"samples":[{}]}},"r":{{"constant":1}}}}"#,
                v.join(",")
            )
        };
        assert!(parse_problem(&doc(5)).is_ok());
        let err = parse_problem(&doc(4)).unwrap_err();
        assert_eq!(err.name(), "ParseError");
        assert!(err.to_string().contains("p.samples"));
    }

    #[test]
    fn syntax_and_field_errors() {
        let err = parse_problem("{\n\"n\": 3,\n\"p\": }").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_problem(r#"{"n":3,"coefficients":{"p":{"constant":1}}}"#).unwrap_err();
        assert!(err.to_string().contains("`r`"), "{err}");
    }

    #[test]
    fn random_problem() {
        let p = parse_problem(r#"{"random":{"k":1,"m":4,"n":16,"seed":3}}"#).unwrap();
        assert_eq!(p.size(), 16);
        let (a, b) = p.pencil().unwrap();
        assert_eq!((a.size(), b.num_blocks()), (16, 4));
        assert!(parse_problem(r#"{"random":{"k":1,"m":3,"n":16,"seed":3}}"#).is_err());
    }
}
