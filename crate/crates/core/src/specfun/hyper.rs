//! Gauss hypergeometric function on real arguments in `[0, 1)`.

#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::{gamma_real, rgamma_real};
use super::SpecFunError;

const MAX_TERMS: usize = 200_000;
// Below this distance of c-a-b from an integer the 1-x connection formula
// loses too many digits to cancellation, and the direct series is used.
const NEAR_INTEGER: f64 = 1e-4;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// Partial sums of `Σ (a)_k (b)_k / ((c)_k k!) x^k` until the terms stall.
fn series(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecFunError> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(SpecFunError::NoConverge)
}

/// `₂F₁(a, b; c; x)` for `x ∈ [0, 1)`.
///
/// For `x > 1/2` the series is continued through the `1-x` connection
/// formula unless the series terminates or `c-a-b` sits next to an integer.
///
/// # Errors
/// [`SpecFunError::ParameterPole`] when `c` is a non-positive integer,
/// [`SpecFunError::DomainError`] for `x` outside `[0, 1)`,
/// [`SpecFunError::NoConverge`] when the iteration cap is reached.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecFunError> {
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::ParameterPole);
    }
    if !(0.0..1.0).contains(&x) || !x.is_finite() {
        return Err(SpecFunError::DomainError);
    }
    if x == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let d = c - a - b;
    if x <= 0.5 || terminating || (d - d.round()).abs() < NEAR_INTEGER {
        return series(a, b, c, x);
    }
    // F(a,b;c;x) = A F(a,b;a+b-c+1;1-x) + B (1-x)^{c-a-b} F(c-a,c-b;c-a-b+1;1-x)
    let y = 1.0 - x;
    let gc = gamma_real(c)?;
    let coef_a = gc * gamma_real(d)? * rgamma_real(c - a) * rgamma_real(c - b);
    let coef_b = gc * gamma_real(-d)? * rgamma_real(a) * rgamma_real(b);
    let mut out = 0.0;
    if coef_a != 0.0 {
        out += coef_a * series(a, b, 1.0 - d, y)?;
    }
    if coef_b != 0.0 {
        out += coef_b * y.powf(d) * series(c - a, c - b, d + 1.0, y)?;
    }
    Ok(out)
}
