//! Weyl functions `M∞`, `M₀`, `M_Θ` and the characteristic determinant.
//!
//! With `c_j = c_j(z)`:
//!
//! ```text
//! M∞ = (1/c₂) [[-c₄, 1], [1, -c₁]]      M₀ = -M∞⁻¹ = -(1/c₃) [[c₁, 1], [1, c₄]]
//! ```
//!
//! using `c₁c₄ + c₂c₃ = 1`. Entries are evaluated as single Gamma ratios in
//! log space, so large `|Im z|` (where each `c_j` grows exponentially) is safe.

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{Hermitian2, Matrix2};
use crate::params::{coeffs, lambda_of_z, principal_z, JacobiParams, LogCoeffs};
use crate::Complex64;

/// Relative `|det| / ‖X‖²` below which a matrix counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;
/// Hermiticity tolerance for matrix `Θ`.
pub const HERMITIAN_TOL: f64 = 1e-14;
/// Tolerance on the self-adjoint relation identities.
pub const RELATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum WeylError {
    #[error("Weyl function has a pole at lambda = {lambda}")]
    PoleOfM { lambda: Complex64 },
    #[error("Theta - M is singular at lambda = {lambda}")]
    SingularAt { lambda: Complex64 },
    #[error("invalid Theta: {0}")]
    InvalidTheta(&'static str),
}

/// Selector of a self-adjoint extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaParam {
    /// Hermitian matrix `Θ`: boundary condition `ΘΓ₀f = Γ₁f`.
    Matrix(Hermitian2),
    /// Self-adjoint relation `{(𝒜h, ℬh)}`: boundary condition `𝒜*Γ₁f = ℬ*Γ₀f`.
    Relation { a: Matrix2, b: Matrix2 },
    /// `Θ = {0} × ℂ²`, the Friedrichs extension `A∞`.
    Friedrichs,
}

impl ThetaParam {
    /// Matrix `Θ` from a general matrix that must be Hermitian to `1e-14`.
    pub fn from_matrix(m: &Matrix2) -> Result<Self, WeylError> {
        Hermitian2::try_from_matrix(m, HERMITIAN_TOL)
            .map(Self::Matrix)
            .ok_or(WeylError::InvalidTheta("matrix is not Hermitian"))
    }

    /// Relation `(𝒜, ℬ)`; checks `𝒜*ℬ = ℬ*𝒜`, `𝒜ℬ* = ℬ𝒜*` and
    /// `𝒜*𝒜 + ℬ*ℬ = I = 𝒜𝒜* + ℬℬ*` to `1e-12`.
    pub fn relation(a: Matrix2, b: Matrix2) -> Result<Self, WeylError> {
        let tol = RELATION_TOL;
        let id = Matrix2::identity();
        if (a.adjoint() * b - b.adjoint() * a).max_abs() > tol
            || (a * b.adjoint() - b * a.adjoint()).max_abs() > tol
        {
            return Err(WeylError::InvalidTheta("relation is not symmetric"));
        }
        if (a.adjoint() * a + b.adjoint() * b - id).max_abs() > tol
            || (a * a.adjoint() + b * b.adjoint() - id).max_abs() > tol
        {
            return Err(WeylError::InvalidTheta("relation is not normalized"));
        }
        Ok(Self::Relation { a, b })
    }

    /// Normalized relation pair of a Hermitian matrix: `𝒜 = (I+Θ²)^{-1/2}`, `ℬ = Θ𝒜`.
    pub fn relation_of(theta: &Hermitian2) -> Self {
        let a = theta.map_spectrum(|x| 1.0 / (1.0 + x * x).sqrt());
        let b = theta.map_spectrum(|x| x / (1.0 + x * x).sqrt());
        Self::Relation { a: a.matrix(), b: b.matrix() }
    }

    /// `(𝒜, ℬ)` for every variant.
    pub fn relation_parts(&self) -> (Matrix2, Matrix2) {
        match self {
            Self::Matrix(h) => match Self::relation_of(h) {
                Self::Relation { a, b } => (a, b),
                _ => unreachable!(),
            },
            Self::Relation { a, b } => (*a, *b),
            Self::Friedrichs => (Matrix2::zero(), Matrix2::identity()),
        }
    }

    /// The operator part `Θ = ℬ𝒜⁻¹` when the relation is the graph of a matrix.
    pub fn as_matrix(&self) -> Option<Hermitian2> {
        match self {
            Self::Matrix(h) => Some(*h),
            Self::Relation { a, b } => {
                let inv = a.inverse(SINGULAR_TOL)?;
                Hermitian2::try_from_matrix(&(*b * inv), 1e-10)
            }
            Self::Friedrichs => None,
        }
    }
}

/// `M∞` at a point `z` of the `z`-plane.
pub fn m_infinity_z(z: Complex64, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    let lc = LogCoeffs::new(z, p);
    let pole = || WeylError::PoleOfM { lambda: lambda_of_z(z, p) };
    let r = lc.recip(2).ok_or_else(pole)?;
    let d1 = -lc.ratio(4, 2).ok_or_else(pole)?;
    let d2 = -lc.ratio(1, 2).ok_or_else(pole)?;
    Ok(Matrix2::new(d1, r, r, d2))
}

/// `M₀` at a point `z`.
pub fn m_zero_z(z: Complex64, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    let lc = LogCoeffs::new(z, p);
    let pole = || WeylError::PoleOfM { lambda: lambda_of_z(z, p) };
    let r = -lc.recip(3).ok_or_else(pole)?;
    let d1 = -lc.ratio(1, 3).ok_or_else(pole)?;
    let d2 = -lc.ratio(4, 3).ok_or_else(pole)?;
    Ok(Matrix2::new(d1, r, r, d2))
}

/// Weyl function of the Friedrichs extension `A∞`.
///
/// # Errors
/// [`WeylError::PoleOfM`] at `λ = n(n+α+β+1)`.
pub fn m_infinity(lam: Complex64, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    m_infinity_z(principal_z(lam, p), p)
}

/// Weyl function of `A₀`, equal to `-M∞⁻¹`.
///
/// # Errors
/// [`WeylError::PoleOfM`] at `λ = (n+1)(n-α-β)`.
pub fn m_zero(lam: Complex64, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    m_zero_z(principal_z(lam, p), p)
}

/// `M_Θ(λ)`: `(Θ - M∞)⁻¹` for a matrix, `(𝒜* + ℬ*M∞)(ℬ* - 𝒜*M∞)⁻¹` for a relation.
///
/// # Errors
/// [`WeylError::SingularAt`] at eigenvalues of `A_Θ`; [`WeylError::PoleOfM`]
/// for relations evaluated at eigenvalues of `A∞`.
pub fn m_theta(lam: Complex64, theta: &ThetaParam, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    let z = principal_z(lam, p);
    match theta {
        ThetaParam::Matrix(h) => match m_infinity_z(z, p) {
            Ok(minf) => (h.matrix() - minf)
                .inverse(SINGULAR_TOL)
                .ok_or(WeylError::SingularAt { lambda: lam }),
            Err(_) => m_theta_kl(z, h, p),
        },
        ThetaParam::Relation { a, b } => {
            let minf = m_infinity_z(z, p)?;
            let num = a.adjoint() + b.adjoint() * minf;
            let den = b.adjoint() - a.adjoint() * minf;
            let inv = den.inverse(SINGULAR_TOL).ok_or(WeylError::SingularAt { lambda: lam })?;
            Ok(num * inv)
        }
        ThetaParam::Friedrichs => m_infinity_z(z, p),
    }
}

/// `L(z)` with `(Θ - M∞)⁻¹ = L(z) / D̃(z)`.
pub fn l_matrix(z: Complex64, theta: &Hermitian2, p: &JacobiParams) -> Matrix2 {
    let c = coeffs(z, p);
    let t = theta.matrix();
    let one = Complex64::from(1.0);
    Matrix2::new(t.a22 * c.c2 + c.c1, one - t.a12 * c.c2, one - t.a21 * c.c2, t.a11 * c.c2 + c.c4)
}

/// `M_Θ = K(z)L(z)` with `K = c₂/D`, evaluated as `L/D̃`; finite at the poles of `M∞`.
pub fn m_theta_kl(z: Complex64, theta: &Hermitian2, p: &JacobiParams) -> Result<Matrix2, WeylError> {
    let d = char_det_reduced(z, theta, p);
    if d == Complex64::from(0.0) {
        return Err(WeylError::SingularAt { lambda: lambda_of_z(z, p) });
    }
    Ok(l_matrix(z, theta, p).scale(d.inv()))
}

/// `D(z) = (Θ₁₁c₂+c₄)(Θ₂₂c₂+c₁) - (Θ₁₂c₂-1)(Θ₂₁c₂-1)`.
///
/// `D = c₂·D̃`, so `D` also vanishes wherever `c₂` does (at the eigenvalues of
/// `A∞`); root searches use [`char_det_reduced`].
pub fn char_det(z: Complex64, theta: &Hermitian2, p: &JacobiParams) -> Complex64 {
    let c = coeffs(z, p);
    let t = theta.matrix();
    let one = Complex64::from(1.0);
    (t.a11 * c.c2 + c.c4) * (t.a22 * c.c2 + c.c1) - (t.a12 * c.c2 - one) * (t.a21 * c.c2 - one)
}

/// `D̃(z) = Θ₁₁c₁ + Θ₂₂c₄ + Θ₁₂ + Θ₂₁ + c₂ det Θ - c₃`, entire, real for real `z`.
/// Its zeros in `z ≥ (α+β-1)/2` are the eigenvalues of `A_Θ` above the parabola vertex.
pub fn char_det_reduced(z: Complex64, theta: &Hermitian2, p: &JacobiParams) -> Complex64 {
    let c = coeffs(z, p);
    let t = theta.matrix();
    t.a11 * c.c1 + t.a22 * c.c4 + t.a12 + t.a21 + c.c2 * theta.det() - c.c3
}
