//! Complex Gamma function: Stirling series on `|z| ≥ 15` with upward
//! recurrence below, reflection for `Re z < 1/2`.

use core::f64::consts::{LN_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use super::SpecFunError;
use crate::Complex64;

/// Default distance from a non-positive integer inside which [`gamma`] reports a pole.
pub const POLE_RADIUS: f64 = 1e-12;

// B_{2k} / (2k(2k-1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];
const STIRLING_MIN: f64 = 15.0;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `sin(πx)`, exact zero at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (PI * r).sin()
}

/// `cos(πx)`, exact zero at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    (PI * (0.5 - r.abs())).sin()
}

/// `sin(πz)` for complex `z`.
pub fn sin_pi_c(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    Complex64::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// `ln sin(πz)`, stable for large `|Im z|`. `None` at the zeros.
fn ln_sin_pi(z: Complex64) -> Option<Complex64> {
    if z.im.abs() < 20.0 {
        let s = sin_pi_c(z);
        return if s == Complex64::new(0.0, 0.0) { None } else { Some(s.ln()) };
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).map(|w| w.conj());
    }
    // sin(πz) = e^{-iπz} · i(1 - e^{2iπz})/2 with |e^{2iπz}| = e^{-2π Im z} tiny
    let x = z.re - 2.0 * (0.5 * z.re).round();
    let zr = Complex64::new(x, z.im);
    let q = (Complex64::new(0.0, 2.0 * PI) * zr).exp();
    let tail = (Complex64::new(0.0, 0.5) * (Complex64::new(1.0, 0.0) - q)).ln();
    Some(Complex64::new(0.0, -PI) * zr + tail)
}

fn stirling_series(w: Complex64) -> Complex64 {
    let r = w.inv();
    let r2 = r * r;
    let mut acc = Complex64::from(STIRLING[7]);
    for &c in STIRLING[..7].iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

// ln Γ(z) for Re z ≥ 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut prod = Complex64::from(1.0);
    while w.norm() < STIRLING_MIN {
        prod *= w;
        w += 1.0;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + stirling_series(w) - prod.ln()
}

// Γ(x) for real x ≥ 1/2 with the power evaluated by powf.
fn gamma_right_real(x: f64) -> f64 {
    let mut w = x;
    let mut prod = 1.0;
    while w < STIRLING_MIN {
        prod *= w;
        w += 1.0;
    }
    let series = stirling_series(Complex64::from(w)).re;
    let h = 0.5 * (w - 0.5);
    // w^{w-1/2} e^{-w}, split to delay overflow
    let p = w.powf(h);
    p * (-w).exp() * p * (LN_SQRT_2PI + series).exp() / prod
}

fn pole_index(z: Complex64, radius: f64) -> Option<i64> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if (z - n).norm() <= radius {
        Some(n as i64)
    } else {
        None
    }
}

/// `Γ(z)`.
///
/// # Errors
/// [`SpecFunError::PoleAt`] within [`POLE_RADIUS`] of a non-positive integer.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    gamma_with_radius(z, POLE_RADIUS)
}

/// `Γ(z)` with a caller-chosen pole-exclusion radius.
pub fn gamma_with_radius(z: Complex64, radius: f64) -> Result<Complex64, SpecFunError> {
    if let Some(n) = pole_index(z, radius) {
        return Err(SpecFunError::PoleAt(n));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z).exp())
    } else {
        Ok(PI / (sin_pi_c(z) * ln_gamma_right(1.0 - z).exp()))
    }
}

/// Principal-sheet-free `ln Γ(z)`: the imaginary part is continuous along
/// rays but not normalized to `(-π, π]`. Only `exp` of the result is meaningful.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if let Some(n) = pole_index(z, POLE_RADIUS) {
        return Err(SpecFunError::PoleAt(n));
    }
    ln_rgamma(z).map(|w| -w).ok_or(SpecFunError::PoleAt(z.re.round() as i64))
}

/// `ln(1/Γ(z))`, or `None` exactly at the poles of `Γ` where `1/Γ` vanishes.
pub fn ln_rgamma(z: Complex64) -> Option<Complex64> {
    if z.re >= 0.5 {
        Some(-ln_gamma_right(z))
    } else {
        ln_sin_pi(z).map(|ls| ls + ln_gamma_right(1.0 - z) - LN_PI)
    }
}

/// `1/Γ(z)`, an entire function. Exactly zero at the non-positive integers.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        (-ln_gamma_right(z)).exp()
    } else {
        sin_pi_c(z) * ln_gamma_right(1.0 - z).exp() / PI
    }
}

/// Real `Γ(x)`.
pub fn gamma_real(x: f64) -> Result<f64, SpecFunError> {
    if let Some(n) = pole_index(Complex64::from(x), POLE_RADIUS) {
        return Err(SpecFunError::PoleAt(n));
    }
    if x >= 0.5 {
        Ok(gamma_right_real(x))
    } else {
        Ok(PI / (sin_pi(x) * gamma_right_real(1.0 - x)))
    }
}

/// Real `1/Γ(x)`.
pub fn rgamma_real(x: f64) -> f64 {
    if x >= 0.5 {
        1.0 / gamma_right_real(x)
    } else {
        sin_pi(x) * gamma_right_real(1.0 - x) / PI
    }
}

/// `Res(Γ, -n) = (-1)ⁿ / n!`.
pub fn gamma_residue(n: u32) -> f64 {
    let mut f = 1.0;
    for k in 1..=n {
        f /= -(k as f64);
    }
    f
}

/// `2^x` for real `x` through `exp`, used by the coefficient constants.
pub(crate) fn pow2(x: f64) -> f64 {
    (x * LN_2).exp()
}
