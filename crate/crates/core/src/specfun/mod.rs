//! Special functions: complex Gamma, real `₂F₁`, Jacobi polynomials.

mod gamma;
mod hyper;
mod jacobi;

pub use gamma::{
    cos_pi, gamma, gamma_real, gamma_residue, gamma_with_radius, ln_gamma, ln_rgamma, rgamma,
    rgamma_real, sin_pi, sin_pi_c, POLE_RADIUS,
};
pub(crate) use gamma::pow2;
pub use hyper::hyp2f1;
pub use jacobi::{jacobi_p, jacobi_p_deriv, jacobi_poly, jacobi_poly_deriv};

/// Failures of the special-function routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SpecFunError {
    #[error("Gamma pole at z = {0}")]
    PoleAt(i64),
    #[error("hypergeometric parameter c is a non-positive integer")]
    ParameterPole,
    #[error("hypergeometric series did not converge")]
    NoConverge,
    #[error("argument outside [0, 1)")]
    DomainError,
}
