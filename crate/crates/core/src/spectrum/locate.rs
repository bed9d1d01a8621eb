//! Eigenvalue location for `A₀`, `A∞` and matrix `A_Θ`.
//!
//! Above the parabola vertex `λ_v = -((α+β+1)/2)²` the reduced determinant
//! `D̃(z)` is real on real `z` and is scanned on a uniform grid. Below it the
//! `z`-roots are complex and eigenvalues are isolated with the counting function
//!
//! ```text
//! N(λ) = #{negative eigenvalues of Θ - M∞(λ)} + #{n : n(n+α+β+1) < λ}
//! ```
//!
//! which equals the number of eigenvalues of `A_Θ` below `λ ∉ σ(A∞)`. The same
//! count certifies that the scan missed nothing.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{Atom, Outcome, SpectrumError, Warning};
use crate::linalg::Hermitian2;
use crate::params::{lambda_of_z, z_of_lambda, JacobiParams};
use crate::roots::{brent, golden_min};
use crate::weyl::{char_det_reduced, l_matrix, m_infinity, WeylError};
use crate::Complex64;

/// Entrywise `|L(z₀)| / |c₂(z₀)|` below which a dip is a degenerate root.
pub const DEGENERATE_TOL: f64 = 1e-9;

/// Controls for [`eigenvalues_theta_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Grid step in `z`.
    pub dz: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { dz: 0.05 }
    }
}

/// `λₙ = (n+1)(n-α-β)` for `n = 0..=n_max`.
pub fn eigenvalues_a0(p: &JacobiParams, n_max: u32) -> Vec<f64> {
    (0..=n_max).map(|n| (n as f64 + 1.0) * (n as f64 - p.sum())).collect()
}

/// `n(n+α+β+1)` for `n = 0..=n_max`.
pub fn eigenvalues_ainf(p: &JacobiParams, n_max: u32) -> Vec<f64> {
    (0..=n_max).map(|n| n as f64 * (n as f64 + p.sum() + 1.0)).collect()
}

fn ainf_below(lam: f64, p: &JacobiParams) -> usize {
    if lam <= 0.0 {
        return 0;
    }
    let s1 = p.sum() + 1.0;
    let mut n = ((-s1 + (s1 * s1 + 4.0 * lam).sqrt()) * 0.5).floor().max(0.0) as usize;
    while (n as f64) * (n as f64 + s1) < lam {
        n += 1;
    }
    while n > 0 && ((n - 1) as f64) * ((n - 1) as f64 + s1) >= lam {
        n -= 1;
    }
    n
}

/// Number of eigenvalues of `A_Θ` strictly below `lam`, for `lam ∉ σ(A∞)`.
pub fn count_below(lam: f64, theta: &Hermitian2, p: &JacobiParams) -> Result<usize, WeylError> {
    let minf = m_infinity(Complex64::from(lam), p)?.hermitian_part();
    let x = theta.add(&minf.scale(-1.0));
    let neg = x.eigenvalues().iter().filter(|&&e| e < 0.0).count();
    Ok(neg + ainf_below(lam, p))
}

// Count with a nudge off the poles of M∞.
fn count(lam: f64, theta: &Hermitian2, p: &JacobiParams) -> Result<usize, SpectrumError> {
    let mut l = lam;
    for _ in 0..8 {
        match count_below(l, theta, p) {
            Ok(n) => return Ok(n),
            Err(WeylError::PoleOfM { .. }) => l += 1e-9 * l.abs().max(1.0),
            Err(e) => return Err(e.into()),
        }
    }
    Err(SpectrumError::OnAInfSpectrum { lambda: lam })
}

fn atom_at(lambda: f64, z_roots: [Complex64; 2], multiplicity: u8) -> Atom {
    Atom {
        lambda,
        z_roots,
        weight: Hermitian2::zero(),
        eigvec_dirs: Vec::new(),
        multiplicity,
    }
}

fn real_roots(z: f64, p: &JacobiParams) -> [Complex64; 2] {
    let w = p.sum() - 1.0 - z;
    let (a, b) = if w <= z { (w, z) } else { (z, w) };
    [a.into(), b.into()]
}

/// Isolates the eigenvalues in `[a, b]` by bisection on the count; appends
/// `(λ, multiplicity)` pairs.
fn isolate(
    a: f64,
    na: usize,
    b: f64,
    nb: usize,
    theta: &Hermitian2,
    p: &JacobiParams,
    out: &mut Vec<(f64, usize)>,
) -> Result<(), SpectrumError> {
    if nb <= na {
        return Ok(());
    }
    let m = 0.5 * (a + b);
    if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) || m <= a || m >= b {
        out.push((m, nb - na));
        return Ok(());
    }
    let nm = count(m, theta, p)?.clamp(na, nb);
    isolate(a, na, m, nm, theta, p, out)?;
    isolate(m, nm, b, nb, theta, p, out)
}

/// Eigenvalues of `A_Θ` up to `lam_max`; see [`eigenvalues_theta_with`].
pub fn eigenvalues_theta(
    p: &JacobiParams,
    theta: &Hermitian2,
    lam_max: f64,
) -> Result<Outcome<Vec<Atom>>, SpectrumError> {
    eigenvalues_theta_with(p, theta, lam_max, &ScanOptions::default())
}

/// Eigenvalues `λ ≤ lam_max` of the matrix extension `A_Θ`, ascending.
///
/// Returned atoms carry `lambda`, `z_roots` and `multiplicity`; weights and
/// directions are filled by [`super::point_mass_theta`].
pub fn eigenvalues_theta_with(
    p: &JacobiParams,
    theta: &Hermitian2,
    lam_max: f64,
    opts: &ScanOptions,
) -> Result<Outcome<Vec<Atom>>, SpectrumError> {
    let mut out = Outcome::new(Vec::new());
    let lam_v = p.vertex_lambda();
    let top = lam_max.min(lam_v);

    // below the vertex: count bisection
    let n_top = count(top, theta, p)?;
    if n_top > 0 {
        let mut lo = lam_v - 1.0;
        let mut n_lo = count(lo, theta, p)?;
        let mut steps = 0;
        while n_lo > 0 {
            steps += 1;
            if steps > 200 || !lo.is_finite() {
                return Err(SpectrumError::NoLowerBound { lambda: lo });
            }
            lo = lam_v - 2.0 * (lam_v - lo);
            n_lo = count(lo, theta, p)?;
        }
        let mut found = Vec::new();
        isolate(lo, 0, top, n_top, theta, p, &mut found)?;
        for (lam, m) in found {
            out.value.push(atom_at(lam, z_of_lambda(lam.into(), p), m as u8));
        }
    }
    if lam_max <= lam_v {
        return Ok(out);
    }

    // above the vertex: grid scan of D̃ in z
    let z_v = p.vertex_z();
    let z_max = z_of_lambda(lam_max.into(), p)[1].re.max(z_v);
    let cells = ((z_max - z_v) / opts.dz).ceil().max(1.0) as usize;
    let zs: Vec<f64> = (0..=cells)
        .map(|k| if k == cells { z_max } else { z_v + k as f64 * opts.dz })
        .collect();
    let g = |z: f64| char_det_reduced(z.into(), theta, p).re;
    let gs: Vec<f64> = zs.iter().map(|&z| g(z)).collect();
    let xtol = |z: f64| 1e-15 * z.abs().max(1.0);
    let never = |z: f64| -> Result<f64, ()> { Ok(g(z)) };

    let mut roots: Vec<(f64, u8)> = Vec::new();
    let mut coarse = false;
    for k in 0..cells {
        let (z0, z1, g0, g1) = (zs[k], zs[k + 1], gs[k], gs[k + 1]);
        if g0 == 0.0 && k > 0 {
            roots.push((z0, 1));
        }
        if g0 * g1 < 0.0 {
            let r = brent(never, z0, z1, g0, g1, xtol(z1)).unwrap_or(0.5 * (z0 + z1));
            roots.push((r, 1));
        } else if k > 0 && g0 != 0.0 && g0.signum() == gs[k - 1].signum() && g0.signum() == g1.signum()
            && g0.abs() < gs[k - 1].abs() && g0.abs() <= g1.abs()
        {
            // local dip of |D̃| without a sign change
            let sg = g0.signum();
            let (zm, gm) = golden_min(|z| -> Result<f64, ()> { Ok(sg * g(z)) }, zs[k - 1], z1, 1e-12)
                .unwrap_or((z0, sg * g0));
            let degenerate = degenerate_root(zs[k - 1], z1, theta, p);
            if let Some(zd) = degenerate {
                // a double zero may dip a rounding error below the axis
                roots.push((zd, 2));
            } else if gm < 0.0 {
                coarse = true;
                let ga = g(zs[k - 1]);
                let r1 = brent(never, zs[k - 1], zm, ga, sg * gm, xtol(zm)).unwrap_or(zm);
                let r2 = brent(never, zm, z1, sg * gm, g1, xtol(z1)).unwrap_or(zm);
                roots.push((r1, 1));
                roots.push((r2, 1));
            }
        }
    }
    if gs[cells] == 0.0 {
        roots.push((z_max, 1));
    }
    // a double zero sitting near a grid point shows up as two sign changes
    for r in roots.iter_mut() {
        if r.1 == 1 && degenerate_size(r.0, theta, p) < DEGENERATE_TOL * theta.norm2().max(1.0) {
            let w = 1e-6 * r.0.abs().max(1.0);
            *r = (degenerate_root(r.0 - w, r.0 + w, theta, p).unwrap_or(r.0), 2);
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots.dedup_by(|b, a| {
        let tol = if a.1 == 2 && b.1 == 2 { 1e-6 } else { 1e-9 };
        let close = (b.0 - a.0).abs() <= tol * a.0.abs().max(1.0);
        if close {
            a.1 = a.1.max(b.1);
        }
        close
    });

    // certify with the count
    let n_v = count(lam_v, theta, p)?;
    let n_max = count(lam_max, theta, p)?;
    let scanned: usize = roots.iter().map(|r| r.1 as usize).sum();
    if coarse || scanned != n_max - n_v.min(n_max) {
        out.warnings.push(Warning::GridTooCoarse { lambda_lo: lam_v, lambda_hi: lam_max });
    }
    if scanned == n_max - n_v.min(n_max) {
        for (z, m) in roots {
            let lam = lambda_of_z(z.into(), p).re;
            out.value.push(atom_at(lam, real_roots(z, p), m));
        }
    } else {
        let mut found = Vec::new();
        isolate(lam_v, n_v, lam_max, n_max, theta, p, &mut found)?;
        for (lam, m) in found {
            let z = z_of_lambda(lam.into(), p)[1].re;
            out.value.push(atom_at(lam, real_roots(z, p), m as u8));
        }
    }
    Ok(out)
}

/// `max |L(z)| / |c₂(z)|`, zero exactly at degenerate eigenvalues.
fn degenerate_size(z: f64, theta: &Hermitian2, p: &JacobiParams) -> f64 {
    let c2 = crate::params::coeffs(z.into(), p).c2.norm();
    l_matrix(z.into(), theta, p).max_abs() / c2.max(f64::MIN_POSITIVE)
}

/// Minimizes the entrywise size of `L(z)/c₂(z)` on `[a, b]`; returns the
/// minimizer when `L` vanishes there to [`DEGENERATE_TOL`].
fn degenerate_root(a: f64, b: f64, theta: &Hermitian2, p: &JacobiParams) -> Option<f64> {
    let size = |z: f64| -> Result<f64, ()> { Ok(degenerate_size(z, theta, p)) };
    let (z, v) = golden_min(size, a, b, 1e-15).ok()?;
    (v < DEGENERATE_TOL * theta.norm2().max(1.0)).then_some(z)
}
