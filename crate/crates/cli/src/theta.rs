//! Text grammar for the boundary parameter `Θ`.
//!
//! ```text
//! zero | friedrichs | degenerate:z0=<v> | matrix:<a>,<b_re>,<b_im>,<d>
//! relation:<8 reals for A>,<8 reals for B>
//! ```
//!
//! A relation matrix is given row by row as `re,im` pairs: `a11 a12 a21 a22`.

use std::fmt;
use std::str::FromStr;

use jacobi_spectra::spectrum::make_degenerate;
use jacobi_spectra::{Complex64, Hermitian2, JacobiParams, Matrix2, ThetaParam};

use crate::error::CliError;

/// Parsed but not yet resolved `Θ`; `degenerate` needs the parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaSpec {
    Zero,
    Friedrichs,
    Degenerate { z0: f64 },
    Matrix(Hermitian2),
    Relation { a: Matrix2, b: Matrix2 },
}

fn reals(body: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = body
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{what}: expected {n} numbers, got {}", v.len())));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("{what}: entries must be finite")));
    }
    Ok(v)
}

fn matrix_of(v: &[f64]) -> Matrix2 {
    let c = |i: usize| Complex64::new(v[2 * i], v[2 * i + 1]);
    Matrix2::new(c(0), c(1), c(2), c(3))
}

impl FromStr for ThetaSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "zero" if body.is_empty() => Ok(Self::Zero),
            "friedrichs" if body.is_empty() => Ok(Self::Friedrichs),
            "degenerate" => {
                let v = body
                    .strip_prefix("z0=")
                    .ok_or_else(|| CliError::Usage("degenerate: expected z0=<value>".into()))?;
                let z0 = reals(v, 1, "degenerate")?[0];
                Ok(Self::Degenerate { z0 })
            }
            "matrix" => {
                let v = reals(body, 4, "matrix")?;
                Ok(Self::Matrix(Hermitian2::new(v[0], Complex64::new(v[1], v[2]), v[3])))
            }
            "relation" => {
                let v = reals(body, 16, "relation")?;
                Ok(Self::Relation { a: matrix_of(&v[..8]), b: matrix_of(&v[8..]) })
            }
            _ => Err(CliError::Usage(format!(
                "unknown theta '{s}' (expected zero, friedrichs, degenerate:z0=v, matrix:a,b_re,b_im,d or relation:16 reals)"
            ))),
        }
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |m: &Matrix2| {
            m.entries().iter().map(|c| format!("{},{}", c.re, c.im)).collect::<Vec<_>>().join(",")
        };
        match self {
            Self::Zero => write!(f, "zero"),
            Self::Friedrichs => write!(f, "friedrichs"),
            Self::Degenerate { z0 } => write!(f, "degenerate:z0={z0}"),
            Self::Matrix(h) => write!(f, "matrix:{},{},{},{}", h.a11(), h.a12().re, h.a12().im, h.a22()),
            Self::Relation { a, b } => write!(f, "relation:{},{}", pairs(a), pairs(b)),
        }
    }
}

impl ThetaSpec {
    /// The validated `ThetaParam` for these parameters.
    pub fn resolve(&self, p: &JacobiParams) -> Result<ThetaParam, CliError> {
        Ok(match self {
            Self::Zero => ThetaParam::Matrix(Hermitian2::zero()),
            Self::Friedrichs => ThetaParam::Friedrichs,
            Self::Degenerate { z0 } => ThetaParam::Matrix(make_degenerate(*z0, p)?),
            Self::Matrix(h) => ThetaParam::Matrix(*h),
            Self::Relation { a, b } => ThetaParam::relation(*a, *b)?,
        })
    }

    /// A Hermitian matrix, for commands that have no meaning for relations.
    pub fn resolve_matrix(&self, p: &JacobiParams) -> Result<Hermitian2, CliError> {
        self.resolve(p)?
            .as_matrix()
            .ok_or_else(|| CliError::Usage(format!("theta '{self}' is not a matrix")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        assert_eq!("zero".parse::<ThetaSpec>().unwrap(), ThetaSpec::Zero);
        assert_eq!("friedrichs".parse::<ThetaSpec>().unwrap(), ThetaSpec::Friedrichs);
        assert_eq!("degenerate:z0=0.7".parse::<ThetaSpec>().unwrap(), ThetaSpec::Degenerate { z0: 0.7 });
        let m = "matrix:1,0.5,-0.25,2".parse::<ThetaSpec>().unwrap();
        assert_eq!(m, ThetaSpec::Matrix(Hermitian2::new(1.0, Complex64::new(0.5, -0.25), 2.0)));
        let r = "relation:1,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0".parse::<ThetaSpec>().unwrap();
        assert_eq!(r, ThetaSpec::Relation { a: Matrix2::identity(), b: Matrix2::zero() });
    }

    #[test]
    fn display_round_trips() {
        for s in ["zero", "friedrichs", "degenerate:z0=0.7", "matrix:1,0.5,-0.25,2"] {
            let t: ThetaSpec = s.parse().unwrap();
            assert_eq!(t.to_string().parse::<ThetaSpec>().unwrap(), t);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "zero:1", "matrix:1,2,3", "matrix:1,2,3,x", "degenerate:0.7", "relation:1,2", "matrix:1,nan,0,1"] {
            assert!(s.parse::<ThetaSpec>().is_err(), "{s}");
        }
    }
}
