//! Sampling check that `σ(A_{Θ₀+tΘ})` and `σ(A_Θ̃)` are disjoint for almost every `t`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::locate::eigenvalues_theta;
use super::SpectrumError;
use crate::linalg::Hermitian2;
use crate::params::JacobiParams;

/// Distance at or below which two eigenvalues collide.
pub const COLLISION_TOL: f64 = 1e-6;

/// One sampled `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjointSample {
    pub t: f64,
    pub eigenvalue_count: usize,
    pub min_distance: f64,
    pub collisions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisjointReport {
    pub samples: Vec<DisjointSample>,
    /// Eigenvalues of `A_Θ̃` up to the cutoff.
    pub reference: Vec<f64>,
    pub collisions: usize,
    pub min_distance: f64,
    pub tolerance: f64,
}

/// Smallest `|a_i - b_j|` and the number of pairs within `tol`. Symmetric in its arguments.
/// Both slices must be sorted.
pub fn spectral_distance(a: &[f64], b: &[f64], tol: f64) -> (f64, usize) {
    let mut min = f64::INFINITY;
    let mut hits = 0;
    let mut j0 = 0;
    for &x in a {
        while j0 < b.len() && b[j0] < x - tol {
            if x - b[j0] < min {
                min = x - b[j0];
            }
            j0 += 1;
        }
        if j0 > 0 {
            min = min.min(x - b[j0 - 1]);
        }
        let mut j = j0;
        while j < b.len() && b[j] <= x + tol {
            hits += 1;
            min = min.min((b[j] - x).abs());
            j += 1;
        }
        if j < b.len() {
            min = min.min(b[j] - x);
        }
    }
    (min, hits)
}

fn lambdas(p: &JacobiParams, theta: &Hermitian2, lam_max: f64) -> Result<Vec<f64>, SpectrumError> {
    Ok(eigenvalues_theta(p, theta, lam_max)?.value.iter().map(|a| a.lambda).collect())
}

/// Runs the comparison at the given `t` values.
///
/// # Errors
/// [`SpectrumError::NotPositiveDefinite`] unless `Θ ≻ 0`.
pub fn disjointness_at(
    theta0: &Hermitian2,
    theta: &Hermitian2,
    theta_tilde: &Hermitian2,
    p: &JacobiParams,
    ts: &[f64],
    lam_max: f64,
) -> Result<DisjointReport, SpectrumError> {
    if !theta.is_positive_definite() {
        return Err(SpectrumError::NotPositiveDefinite);
    }
    let reference = lambdas(p, theta_tilde, lam_max)?;
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        let spec = lambdas(p, &theta0.add(&theta.scale(t)), lam_max)?;
        let (min_distance, collisions) = spectral_distance(&spec, &reference, COLLISION_TOL);
        samples.push(DisjointSample { t, eigenvalue_count: spec.len(), min_distance, collisions });
    }
    let collisions = samples.iter().map(|s| s.collisions).sum();
    let min_distance = samples.iter().map(|s| s.min_distance).fold(f64::INFINITY, f64::min);
    Ok(DisjointReport { samples, reference, collisions, min_distance, tolerance: COLLISION_TOL })
}

/// Draws `t_samples` values of `t` uniformly from `[-10, 10]` (ChaCha8, `seed`)
/// and runs [`disjointness_at`].
pub fn disjointness_experiment(
    theta0: &Hermitian2,
    theta: &Hermitian2,
    theta_tilde: &Hermitian2,
    p: &JacobiParams,
    t_samples: usize,
    lam_max: f64,
    seed: u64,
) -> Result<DisjointReport, SpectrumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<f64> = (0..t_samples).map(|_| rng.random_range(-10.0..10.0)).collect();
    disjointness_at(theta0, theta, theta_tilde, p, &ts, lam_max)
}
