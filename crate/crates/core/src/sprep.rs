//! The `L²(μ)` inner product and the spectral representation `V_Θ: L²(μ) → L²(μ^Θ)`:
//!
//! ```text
//! (V_Θ h e)(t) = h(t) e - Θ ∫ (h(x) - h(t))/(x - t) [dμ(x)] e
//! ```
//!
//! for compactly supported `h ∈ C¹` and `μ` the matrix measure of `A₀`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{dot, vnorm, Hermitian2, Vec2};
use crate::params::JacobiParams;
use crate::spectrum::{Atom, AtomicMatrixMeasure};
use crate::specfun::{gamma_real, pow2};
use crate::Complex64;

/// `|λₙ - t|` below which the difference quotient is replaced by `h'(t)`.
pub const MEAN_VALUE_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SprepError {
    #[error("support and values must have equal length with strictly increasing support")]
    InvalidSample,
    #[error("discarded tail {bound:e} exceeds tolerance {tol:e}")]
    TailTooFat { bound: f64, tol: f64 },
    #[error("t = -(alpha + beta) is a pole of the trace")]
    PoleAtT,
    #[error("atom is degenerate; coefficients along both directions: {0:?}")]
    DegenerateAtom([Complex64; 2]),
}

/// A `ℂ²`-valued function sampled on a finite, strictly increasing support.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunctionSample {
    support: Vec<f64>,
    values: Vec<Vec2>,
}

impl VectorFunctionSample {
    pub fn new(support: Vec<f64>, values: Vec<Vec2>) -> Result<Self, SprepError> {
        if support.len() != values.len() || support.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SprepError::InvalidSample);
        }
        Ok(Self { support, values })
    }

    /// Samples `f` at the atoms of `mu`.
    pub fn on_atoms(mu: &AtomicMatrixMeasure, f: impl Fn(&Atom) -> Vec2) -> Self {
        Self {
            support: mu.atoms.iter().map(|a| a.lambda).collect(),
            values: mu.atoms.iter().map(f).collect(),
        }
    }

    /// `χ_{λ} v`: supported at a single point.
    pub fn point(lambda: f64, v: Vec2) -> Self {
        Self { support: alloc::vec![lambda], values: alloc::vec![v] }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn values(&self) -> &[Vec2] {
        &self.values
    }

    /// Value at `t` (matched within `1e-12·max(1,|t|)`), zero off the support.
    pub fn at(&self, t: f64) -> Vec2 {
        let tol = 1e-12 * t.abs().max(1.0);
        let i = self.support.partition_point(|&s| s < t - tol);
        match self.support.get(i) {
            Some(&s) if (s - t).abs() <= tol => self.values[i],
            _ => [Complex64::from(0.0); 2],
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            support: self.support.clone(),
            values: self.values.iter().map(|v| [v[0] * c, v[1] * c]).collect(),
        }
    }
}

/// `⟨φ, ψ⟩_μ = Σₙ ⟨μ{λₙ} φ(λₙ), ψ(λₙ)⟩_{ℂ²}`, summed in atom order.
pub fn mu_inner(phi: &VectorFunctionSample, psi: &VectorFunctionSample, mu: &AtomicMatrixMeasure) -> Complex64 {
    mu.atoms
        .iter()
        .map(|a| dot(&a.weight.matrix().apply(&phi.at(a.lambda)), &psi.at(a.lambda)))
        .sum()
}

/// Compactly supported `C¹` profile `h`.
pub trait ScalarProfile {
    fn eval(&self, x: f64) -> f64;
    fn deriv(&self, x: f64) -> f64;
    /// Closed interval outside of which `h ≡ 0`.
    fn support(&self) -> (f64, f64);
    /// Upper bound for `|h'|`.
    fn derivative_bound(&self) -> f64;
}

/// `h(x) = 1 - (3u² - 2u³)` with `u = |x - c|/r` on `|x - c| < r`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicBump {
    pub center: f64,
    pub radius: f64,
}

impl CubicBump {
    pub fn new(center: f64, radius: f64) -> Self {
        Self { center, radius }
    }

    /// Bump at `center` whose radius is shrunk to half the distance to the
    /// nearest point of `avoid`, so `h` vanishes at every other atom.
    pub fn isolating(center: f64, radius: f64, avoid: &[f64]) -> Self {
        let gap = avoid
            .iter()
            .map(|&x| (x - center).abs())
            .filter(|&d| d > 1e-12 * center.abs().max(1.0))
            .fold(f64::INFINITY, f64::min);
        Self { center, radius: radius.min(0.5 * gap) }
    }
}

impl ScalarProfile for CubicBump {
    fn eval(&self, x: f64) -> f64 {
        let u = (x - self.center).abs() / self.radius;
        if u >= 1.0 {
            0.0
        } else {
            1.0 - u * u * (3.0 - 2.0 * u)
        }
    }

    fn deriv(&self, x: f64) -> f64 {
        let d = x - self.center;
        let u = d.abs() / self.radius;
        if u >= 1.0 {
            0.0
        } else {
            -6.0 * u * (1.0 - u) / self.radius * d.signum()
        }
    }

    fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }

    fn derivative_bound(&self) -> f64 {
        1.5 / self.radius
    }
}

/// Bound for `Σ_{n>N} ‖μₙ‖/(λₙ - t)` from a power-law fit `‖μₙ‖ ≈ C n^γ` over the
/// last atoms and `λₙ ≈ n²`. Infinite when the fit does not decay fast enough.
fn tail_bound(mu: &AtomicMatrixMeasure, t: f64) -> f64 {
    let atoms = &mu.atoms;
    let n = atoms.len();
    if n < 4 {
        return f64::INFINITY;
    }
    let pts: Vec<(f64, f64)> = (n - 4..n)
        .map(|i| ((i as f64 + 1.0).ln(), atoms[i].weight.norm2().max(f64::MIN_POSITIVE).ln()))
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / 4.0;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / 4.0;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let gamma = (sxy / sxx).max(0.0);
    let c = pts.iter().map(|p| (p.1 - gamma * p.0).exp()).fold(0.0, f64::max);
    if gamma >= 1.0 {
        return f64::INFINITY;
    }
    let last = atoms[n - 1].lambda;
    let nf = n as f64;
    // λ_m - t ≥ (last - t)·(m/N)² for m > N
    let gap = last - t;
    if gap <= 0.0 {
        return f64::INFINITY;
    }
    // Σ_{m>N} C m^γ N²/(gap m²) ≤ C N² / (gap (1-γ) N^{1-γ})
    c * nf * nf / (gap * (1.0 - gamma) * nf.powf(1.0 - gamma))
}

/// `(V_Θ h e)(t)` over the truncated `A₀` measure `mu`.
///
/// # Errors
/// [`SprepError::TailTooFat`] if the discarded tail, estimated from the
/// growth of the weights, exceeds `tail_tol`. The tail vanishes exactly when
/// `h(t) = 0` and the support of `h` ends before the last atom.
pub fn v_theta_apply(
    h: &dyn ScalarProfile,
    e: &Vec2,
    theta: &Hermitian2,
    mu: &AtomicMatrixMeasure,
    t: f64,
    tail_tol: f64,
) -> Result<Vec2, SprepError> {
    let ht = h.eval(t);
    let last = mu.atoms.last().map(|a| a.lambda).unwrap_or(f64::NEG_INFINITY);
    let (_, sup_hi) = h.support();
    let mut tail = 0.0;
    if sup_hi >= last {
        tail = f64::INFINITY;
    } else if ht != 0.0 {
        tail = ht.abs() * tail_bound(mu, t) * theta.norm2() * vnorm(e);
    }
    if tail > tail_tol {
        return Err(SprepError::TailTooFat { bound: tail, tol: tail_tol });
    }
    let mut acc = [Complex64::from(0.0); 2];
    for a in &mu.atoms {
        let d = a.lambda - t;
        let q = if d.abs() < MEAN_VALUE_GUARD { h.deriv(t) } else { (h.eval(a.lambda) - ht) / d };
        if q == 0.0 {
            continue;
        }
        let we = a.weight.matrix().apply(e);
        acc[0] += we[0] * q;
        acc[1] += we[1] * q;
    }
    let corr = theta.matrix().apply(&acc);
    Ok([e[0] * ht - corr[0], e[1] * ht - corr[1]])
}

/// Closed form of `(V_Θ f₀)(t)` for the ground state `f₀ = χ_{λ₀}(1, β/α)`:
///
/// ```text
/// -2^{α+β+1}(α²+β²)Γ(2-α-β) / ((α+β+t)Γ(1-α)Γ(-β)) · (Θ₁₂/α + Θ₁₁/β, Θ₂₂/α + Θ₂₁/β)
/// ```
///
/// # Errors
/// [`SprepError::PoleAtT`] at `t = -(α+β)`.
pub fn trace_f0(theta: &Hermitian2, p: &JacobiParams, t: f64) -> Result<Vec2, SprepError> {
    let (a, b) = (p.alpha(), p.beta());
    let s = a + b;
    if (s + t).abs() <= 1e-14 * s.max(t.abs()) {
        return Err(SprepError::PoleAtT);
    }
    let g = |x: f64| gamma_real(x).unwrap_or(f64::NAN);
    let pref = -pow2(s + 1.0) * (a * a + b * b) * g(2.0 - s) / ((s + t) * g(1.0 - a) * g(-b));
    let m = theta.matrix();
    Ok([
        (m.a12 / a + m.a11 / b) * pref,
        (m.a22 / a + m.a21 / b) * pref,
    ])
}

/// Result of projecting onto an atom's eigenvector directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projection {
    Single(Complex64),
    Pair([Complex64; 2]),
}

/// Coefficient `⟨v, d⟩` of `v` along the atom's unit direction `d`.
///
/// # Errors
/// [`SprepError::DegenerateAtom`] when the atom has two directions; the error carries both coefficients.
pub fn project_eigvec(v: &Vec2, atom: &Atom) -> Result<Complex64, SprepError> {
    match project_all(v, atom) {
        Projection::Single(c) => Ok(c),
        Projection::Pair(cs) => Err(SprepError::DegenerateAtom(cs)),
    }
}

/// Coefficients of `v` along every direction of the atom.
pub fn project_all(v: &Vec2, atom: &Atom) -> Projection {
    match atom.eigvec_dirs.as_slice() {
        [d] => Projection::Single(dot(v, d)),
        [d1, d2, ..] => Projection::Pair([dot(v, d1), dot(v, d2)]),
        [] => Projection::Single(Complex64::from(0.0)),
    }
}
