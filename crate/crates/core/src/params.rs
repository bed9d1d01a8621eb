//! Operator parameters, the `λ ↔ z` parameterization and the coefficients `c₁…c₄`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::specfun::{gamma_real, hyp2f1, ln_rgamma, pow2, rgamma};
use crate::Complex64;

/// Invalid operator parameters or arguments.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("parameters must satisfy 0 < alpha, beta < 1 (got alpha = {alpha}, beta = {beta})")]
    OutOfRange { alpha: f64, beta: f64 },
    #[error("x = {0} is outside (-1, 1)")]
    OutsideInterval(f64),
}

/// The pair `(α, β) ∈ (0,1)²` together with the Gamma constants of `c₁…c₄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
    k: [f64; 4],
    ln_k: [Complex64; 4],
}

/// `|α+β-1|` below which the two `z`-roots of the lowest `A₀` eigenvalue nearly coincide.
pub const NEAR_DOUBLE_ROOT: f64 = 1e-6;

impl JacobiParams {
    /// # Errors
    /// [`ParamError::OutOfRange`] unless `0 < α < 1` and `0 < β < 1`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ParamError> {
        let inside = |v: f64| v > 0.0 && v < 1.0;
        if !inside(alpha) || !inside(beta) {
            return Err(ParamError::OutOfRange { alpha, beta });
        }
        let g = |x: f64| gamma_real(x).map_err(|_| ParamError::OutOfRange { alpha, beta });
        let (ga1, gmb, gb, g1ma) = (g(alpha + 1.0)?, g(-beta)?, g(beta)?, g(1.0 - alpha)?);
        let two = pow2(alpha + beta + 1.0);
        let k = [
            -ga1 * gmb,
            beta * two * ga1 * gb,
            g1ma * gmb / (alpha * two),
            beta * g1ma * gb / alpha,
        ];
        let ln_k = k.map(|v| Complex64::from(v).ln());
        Ok(Self { alpha, beta, k, ln_k })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `α + β`.
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta
    }

    /// `(α+β-1)/2`, the fixed point of `z ↦ α+β-1-z`.
    pub fn vertex_z(&self) -> f64 {
        0.5 * (self.sum() - 1.0)
    }

    /// `-((α+β+1)/2)²`, the smallest `λ` with real `z`-roots.
    pub fn vertex_lambda(&self) -> f64 {
        let h = 0.5 * (self.sum() + 1.0);
        -h * h
    }

    /// True when `|α+β-1| < 1e-6`.
    pub fn near_double_root(&self) -> bool {
        (self.sum() - 1.0).abs() < NEAR_DOUBLE_ROOT
    }

    /// Positive constants `|K_j|` with `c_j = K_j/(Γ·Γ)`; `K₃` is negative.
    pub fn coefficient_constants(&self) -> [f64; 4] {
        self.k
    }
}

/// `λ = (-z-1)(-z+α+β)`.
pub fn lambda_of_z(z: Complex64, p: &JacobiParams) -> Complex64 {
    (-z - 1.0) * (-z + p.sum())
}

/// Both roots of `z² + (1-α-β)z - (α+β+λ) = 0`, ordered by real then imaginary part.
pub fn z_of_lambda(lam: Complex64, p: &JacobiParams) -> [Complex64; 2] {
    let b = Complex64::from(1.0 - p.sum());
    let c = lam + p.sum();
    let disc = (1.0 + p.sum()) * (1.0 + p.sum()) + lam * 4.0;
    let sq = disc.sqrt();
    let sq = if (b.conj() * sq).re >= 0.0 { sq } else { -sq };
    let q = -(b + sq) * 0.5;
    let (r1, r2) = if q == Complex64::from(0.0) { (q, q) } else { (q, -c / q) };
    let key = |z: &Complex64| (z.re, z.im);
    if key(&r1).partial_cmp(&key(&r2)) == Some(core::cmp::Ordering::Greater) {
        [r2, r1]
    } else {
        [r1, r2]
    }
}

/// Root of `λ` on the principal branch `Re z ≥ (α+β-1)/2`.
pub fn principal_z(lam: Complex64, p: &JacobiParams) -> Complex64 {
    z_of_lambda(lam, p)[1]
}

/// The four coefficient values at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffQuad {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
}

impl CoeffQuad {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }
}

fn gamma_args(z: Complex64, p: &JacobiParams) -> [[Complex64; 2]; 4] {
    let (a, b, s) = (p.alpha, p.beta, p.sum());
    [
        [-z + a, z - b + 1.0],
        [z + 1.0, -z + s],
        [-z, z - s + 1.0],
        [z - a + 1.0, -z + b],
    ]
}

/// `c₁…c₄` at `z`. Each is entire in `z`: the Gammas appear only in
/// denominators, so a pole there gives an exact zero.
pub fn coeffs(z: Complex64, p: &JacobiParams) -> CoeffQuad {
    let args = gamma_args(z, p);
    let c = |j: usize| p.k[j] * rgamma(args[j][0]) * rgamma(args[j][1]);
    CoeffQuad { c1: c(0), c2: c(1), c3: c(2), c4: c(3) }
}

/// `ln c_j`, with `None` for an exact zero.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogCoeffs {
    ln: [Option<Complex64>; 4],
}

impl LogCoeffs {
    pub(crate) fn new(z: Complex64, p: &JacobiParams) -> Self {
        let args = gamma_args(z, p);
        let ln = core::array::from_fn(|j| {
            Some(p.ln_k[j] + ln_rgamma(args[j][0])? + ln_rgamma(args[j][1])?)
        });
        Self { ln }
    }

    /// `c_num / c_den`, `None` when `c_den = 0`. Indices are 1-based.
    pub(crate) fn ratio(&self, num: usize, den: usize) -> Option<Complex64> {
        let d = self.ln[den - 1]?;
        Some(match self.ln[num - 1] {
            Some(n) => (n - d).exp(),
            None => Complex64::from(0.0),
        })
    }

    /// `1 / c_j`.
    pub(crate) fn recip(&self, j: usize) -> Option<Complex64> {
        self.ln[j - 1].map(|l| (-l).exp())
    }
}

/// `(c₁(n), c₄(n))` at a non-negative integer by the finite products
/// `c₁(n) = (-1)ⁿ ∏_{k=0}^{n} (k-α)/(k-β)` and `c₄(n) = 1/c₁(n)`.
pub fn coeffs_int(n: u32, p: &JacobiParams) -> (f64, f64) {
    let mut c1 = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut c4 = c1;
    for k in 0..=n {
        let k = k as f64;
        c1 *= (k - p.alpha) / (k - p.beta);
        c4 *= (k - p.beta) / (k - p.alpha);
    }
    (c1, c4)
}

/// The `λ = 0` solutions `(w̃₁, w̃₂)` on the branch of the nearer endpoint
/// (`x ≥ 0` uses the expansion at `+1`, `x < 0` the one at `-1`).
pub fn w_solutions(x: f64, p: &JacobiParams) -> Result<(f64, f64), ParamError> {
    if !(x > -1.0 && x < 1.0) {
        return Err(ParamError::OutsideInterval(x));
    }
    let (a, b) = (p.alpha, p.beta);
    let two = pow2(a + b + 1.0);
    let hyp = |a: f64, b: f64, c: f64, y: f64| {
        hyp2f1(a, b, c, y).map_err(|_| ParamError::OutsideInterval(x))
    };
    if x >= 0.0 {
        let y = 0.5 * (1.0 - x);
        Ok((1.0, y.powf(-a) / (a * two) * hyp(-a, b + 1.0, 1.0 - a, y)?))
    } else {
        let y = 0.5 * (1.0 + x);
        Ok((-1.0, y.powf(-b) / (b * two) * hyp(-b, a + 1.0, 1.0 - b, y)?))
    }
}
