//! Eigenvalues, matrix-valued point masses, multiplicities and the
//! mutual-singularity sampling experiment.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{Hermitian2, Vec2};
use crate::params::{lambda_of_z, JacobiParams};
use crate::weyl::{ThetaParam, WeylError};
use crate::Complex64;

mod disjoint;
mod locate;
mod mass;

pub use disjoint::{disjointness_at, disjointness_experiment, spectral_distance, DisjointReport, DisjointSample};
pub use locate::{count_below, eigenvalues_a0, eigenvalues_ainf, eigenvalues_theta, eigenvalues_theta_with, ScanOptions};
pub use mass::{
    a0_measure, ainf_measure, make_degenerate, measure, multiplicity, point_mass, point_mass_a0,
    point_mass_theta, residue, theta_measure,
};

/// Weight PSD tolerance: `min eig ≥ -1e-10·trace`.
pub const PSD_TOL: f64 = 1e-10;
/// Relative eigenvalue threshold for the rank of a weight.
pub const RANK_TOL: f64 = 1e-8;
/// `|λ(z_roots) - λ|` tolerance, relative to `max(1, |λ|)`.
pub const ROOT_LAMBDA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("lambda = {lambda} lies on the spectrum of A_inf")]
    OnAInfSpectrum { lambda: f64 },
    #[error("lambda = {lambda} lies on the spectrum of A_0 or A_inf")]
    Excluded { lambda: f64 },
    #[error("lambda = {lambda} is not above the lowest A_0 eigenvalue")]
    BelowGroundState { lambda: f64 },
    #[error("residue extrapolation at lambda = {lambda} did not converge (relative change {rel_change:e})")]
    ResidueNoConverge { lambda: f64, rel_change: f64 },
    #[error("the eigenvalue count did not vanish down to lambda = {lambda}")]
    NoLowerBound { lambda: f64 },
    #[error("Theta must be positive definite")]
    NotPositiveDefinite,
    #[error("relations with a singular, nonzero A are outside the spectral pipeline")]
    UnsupportedRelation,
    #[error("invalid atom: {0}")]
    InvalidAtom(&'static str),
}

/// Non-fatal diagnostics attached to results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Several roots shared a grid cell; the window was resolved by refinement.
    GridTooCoarse { lambda_lo: f64, lambda_hi: f64 },
    /// `|α+β-1| < 1e-6`: the two `z`-roots of `λ₀` nearly coincide.
    NearDoubleRoot,
}

/// A value plus the warnings raised while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Outcome<T> {
    pub fn new(value: T) -> Self {
        Self { value, warnings: Vec::new() }
    }
}

/// One spectral atom.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub lambda: f64,
    /// Both `z` with `λ(z) = lambda`; complex conjugates below the parabola vertex.
    pub z_roots: [Complex64; 2],
    pub weight: Hermitian2,
    /// Unit eigenvector directions in `ℂ²`, one per unit of multiplicity.
    pub eigvec_dirs: Vec<Vec2>,
    pub multiplicity: u8,
}

impl Atom {
    /// Rank of the weight: eigenvalues above `RANK_TOL` times the largest count.
    pub fn weight_rank(&self) -> u8 {
        weight_rank(&self.weight)
    }

    /// Checks weight PSD, `multiplicity = rank(weight)`, and `λ(z_roots) = lambda`.
    pub fn validate(&self, p: &JacobiParams) -> Result<(), SpectrumError> {
        if !self.lambda.is_finite() || !self.weight.is_finite() {
            return Err(SpectrumError::InvalidAtom("non-finite entries"));
        }
        let [lo, _] = self.weight.eigenvalues();
        if lo < -PSD_TOL * self.weight.trace().abs() {
            return Err(SpectrumError::InvalidAtom("weight is not positive semidefinite"));
        }
        if !(1..=2).contains(&self.multiplicity) || self.multiplicity != self.weight_rank() {
            return Err(SpectrumError::InvalidAtom("multiplicity differs from the weight rank"));
        }
        if self.eigvec_dirs.len() != self.multiplicity as usize {
            return Err(SpectrumError::InvalidAtom("one direction per unit of multiplicity"));
        }
        let scale = self.lambda.abs().max(1.0);
        for z in &self.z_roots {
            if (lambda_of_z(*z, p) - self.lambda).norm() > ROOT_LAMBDA_TOL * scale {
                return Err(SpectrumError::InvalidAtom("z_roots do not map to lambda"));
            }
        }
        Ok(())
    }
}

pub(crate) fn weight_rank(w: &Hermitian2) -> u8 {
    let [lo, hi] = w.eigenvalues();
    if hi <= 0.0 {
        0
    } else if lo > RANK_TOL * hi {
        2
    } else {
        1
    }
}

/// Where a measure was cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub count: usize,
    pub lam_max: f64,
}

/// Finite truncation of `μ^Θ`, atoms strictly increasing in `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMatrixMeasure {
    pub params: JacobiParams,
    pub theta: ThetaParam,
    pub atoms: Vec<Atom>,
    pub truncation: Truncation,
    pub warnings: Vec<Warning>,
}

impl AtomicMatrixMeasure {
    pub fn lambdas(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.lambda).collect()
    }

    /// Validates every atom and the strict ordering.
    pub fn validate(&self) -> Result<(), SpectrumError> {
        for a in &self.atoms {
            a.validate(&self.params)?;
        }
        if self.atoms.windows(2).any(|w| w[1].lambda <= w[0].lambda) {
            return Err(SpectrumError::InvalidAtom("atoms are not strictly increasing"));
        }
        Ok(())
    }
}
