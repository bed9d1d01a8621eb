//! Spectral data of the self-adjoint extensions of the Jacobi operator
//!
//! ```text
//! ℓ[f](x) = -(1-x)^{-α}(1+x)^{-β} ((1-x)^{α+1}(1+x)^{β+1} f'(x))',   0 < α, β < 1
//! ```
//!
//! on `L²((-1,1), (1-x)^α(1+x)^β dx)`. Both endpoints are limit-circle, so every
//! self-adjoint extension `A_Θ` is selected by a 2×2 Hermitian matrix `Θ` or a
//! self-adjoint relation. Eigenvalues, matrix-valued point masses, eigenvector
//! directions and multiplicities are computed in closed form through the Weyl
//! functions `M∞`, `M₀` and `M_Θ = (Θ - M∞)⁻¹`. The [`oracle`] module shoots the
//! ODE directly and serves as an independent check.
//!
//! The spectral parameter is written `λ = (z+1)(z-α-β)`; every coefficient is
//! invariant under `z ↦ α+β-1-z`, so either root may be used.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod linalg;
pub mod oracle;
pub mod params;
pub mod specfun;
pub mod spectrum;
pub mod sprep;
pub mod weyl;

mod ode;
mod roots;

pub use num_complex::Complex64;

pub use linalg::{Hermitian2, Matrix2, Vec2};
pub use params::{CoeffQuad, JacobiParams, ParamError};
pub use spectrum::{Atom, AtomicMatrixMeasure, SpectrumError, Warning};
pub use weyl::{ThetaParam, WeylError};

/// Complex number used for the spectral variables `z` and `λ`.
pub type ComplexPoint = Complex64;
