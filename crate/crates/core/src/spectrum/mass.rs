//! Point masses, multiplicities and degenerate extensions.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::locate::eigenvalues_theta;
use super::{weight_rank, Atom, AtomicMatrixMeasure, Outcome, SpectrumError, Truncation, Warning};
use crate::linalg::{normalize_phase, Hermitian2, Matrix2, Vec2};
use crate::params::{coeffs_int, lambda_of_z, z_of_lambda, JacobiParams};
use crate::specfun::{gamma_real, ln_gamma, pow2};
use crate::weyl::{m_infinity, m_theta, ThetaParam};
use crate::Complex64;

/// Relative singular-value threshold of the multiplicity test.
pub const NULLITY_TOL: f64 = 1e-8;
/// Relative agreement required between the last two extrapolation levels.
pub const RESIDUE_TOL: f64 = 1e-4;
/// Distance, relative to `max(1, |λ|)`, inside which `λ` counts as an `A∞` eigenvalue.
pub const AINF_TOL: f64 = 1e-9;

const EPS_LADDER: [f64; 3] = [1e-4, 1e-5, 1e-6];

/// `μ{λ} = -i lim_{ε↓0} ε M(λ+iε)` by Richardson extrapolation over
/// `ε ∈ {1e-4, 1e-5, 1e-6}·max(1, |λ|)`. Returns the Hermitian part.
///
/// # Errors
/// [`SpectrumError::ResidueNoConverge`] if the last two levels differ by more
/// than `1e-4` relative; evaluation errors of `m` propagate.
pub fn residue(
    lam: f64,
    mut m: impl FnMut(Complex64) -> Result<Matrix2, SpectrumError>,
) -> Result<Hermitian2, SpectrumError> {
    let scale = lam.abs().max(1.0);
    let mut f = [Matrix2::zero(); 3];
    for (fi, e) in f.iter_mut().zip(EPS_LADDER) {
        let eps = e * scale;
        *fi = m(Complex64::new(lam, eps))?.scale(Complex64::new(0.0, -eps));
    }
    // errors are a power series in ε with ratio 10 between levels
    let r1a = (f[1].scale(10.0.into()) - f[0]).scale((1.0 / 9.0).into());
    let r1b = (f[2].scale(10.0.into()) - f[1]).scale((1.0 / 9.0).into());
    let r2 = (r1b.scale(100.0.into()) - r1a).scale((1.0 / 99.0).into());
    let w = r2.hermitian_part();
    let norm = w.norm2();
    let change = (r2.hermitian_part().matrix() - r1b.hermitian_part().matrix()).norm2();
    let rel = if norm > 0.0 { change / norm } else { change };
    if rel.is_nan() || rel > RESIDUE_TOL {
        return Err(SpectrumError::ResidueNoConverge { lambda: lam, rel_change: rel });
    }
    Ok(w)
}

/// Closed-form atom of `A₀` at `λₙ = (n+1)(n-α-β)`:
///
/// ```text
/// μ{λₙ} = (2n+1-α-β) α 2^{α+β+1} (-1)^{n+1} Γ(n-α-β+1) / (n! Γ(1-α) Γ(-β)) · [[c₁(n), 1], [1, c₄(n)]]
/// ```
///
/// normalized as a residue in `λ`. The factor `(2n+1-α-β)Γ(n+1-α-β)` is
/// evaluated as `Γ(2-α-β)` at `n = 0`, which is regular at `α+β = 1`.
pub fn point_mass_a0(n: u32, p: &JacobiParams) -> Outcome<Atom> {
    let s = p.sum();
    let nf = n as f64;
    let (c1, c4) = coeffs_int(n, p);
    // (2n+1-s) Γ(n+1-s) / n!
    let gamma_part = if n == 0 {
        gamma_real(2.0 - s).unwrap_or(f64::NAN)
    } else {
        let lg = ln_gamma(Complex64::from(nf + 2.0 - s)).map(|v| v.re).unwrap_or(f64::NAN)
            - ln_gamma(Complex64::from(nf + 1.0)).map(|v| v.re).unwrap_or(f64::NAN);
        (2.0 * nf + 1.0 - s) / (nf + 1.0 - s) * lg.exp()
    };
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let denom = gamma_real(1.0 - p.alpha()).unwrap_or(f64::NAN) * gamma_real(-p.beta()).unwrap_or(f64::NAN);
    let pref = sign * p.alpha() * pow2(s + 1.0) * gamma_part / denom;
    let weight = Hermitian2::real(pref * c1, pref, pref * c4);
    let dir = normalize_phase(&[Complex64::from(1.0), Complex64::from(c4)]).unwrap_or([1.0.into(), 0.0.into()]);
    let w = s - 1.0 - nf;
    let z_roots = if w <= nf { [w.into(), nf.into()] } else { [nf.into(), w.into()] };
    let mut out = Outcome::new(Atom {
        lambda: (nf + 1.0) * (nf - s),
        z_roots,
        weight,
        eigvec_dirs: vec![dir],
        multiplicity: 1,
    });
    if n == 0 && p.near_double_root() {
        out.warnings.push(Warning::NearDoubleRoot);
    }
    out
}

fn ainf_index_near(lam: f64, p: &JacobiParams) -> Option<u32> {
    if lam < -0.5 {
        return None;
    }
    let s1 = p.sum() + 1.0;
    let n = (-s1 + (s1 * s1 + 4.0 * lam.max(0.0)).sqrt()) * 0.5;
    [n.floor(), n.ceil()]
        .into_iter()
        .filter(|&k| k >= 0.0)
        .find(|&k| (k * (k + s1) - lam).abs() < AINF_TOL * lam.abs().max(1.0))
        .map(|k| k as u32)
}

fn a0_index_near(lam: f64, p: &JacobiParams) -> Option<u32> {
    let s = p.sum();
    // (n+1)(n-s) = λ  →  n = ((s-1) + sqrt((s+1)² + 4λ))/2
    let d = (s + 1.0) * (s + 1.0) + 4.0 * lam;
    if d < 0.0 {
        return None;
    }
    let n = 0.5 * ((s - 1.0) + d.sqrt());
    [n.floor(), n.ceil()]
        .into_iter()
        .filter(|&k| k >= 0.0)
        .find(|&k| ((k + 1.0) * (k - s) - lam).abs() < AINF_TOL * lam.abs().max(1.0))
        .map(|k| k as u32)
}

/// `dim ker(Θ - M∞(λ))`: singular values below `1e-8·max(‖Θ‖, ‖M∞(λ)‖)`.
///
/// The scale includes `‖M∞‖` so that a degenerate eigenvalue, where
/// `Θ - M∞` vanishes entirely, still counts twice.
///
/// # Errors
/// [`SpectrumError::OnAInfSpectrum`] when `λ` is an eigenvalue of `A∞`.
pub fn multiplicity(lam: f64, theta: &Hermitian2, p: &JacobiParams) -> Result<u8, SpectrumError> {
    if ainf_index_near(lam, p).is_some() {
        return Err(SpectrumError::OnAInfSpectrum { lambda: lam });
    }
    let minf = m_infinity(lam.into(), p)?.hermitian_part();
    let x = theta.add(&minf.scale(-1.0));
    let scale = theta.norm2().max(minf.norm2());
    let [lo, hi] = x.eigenvalues();
    Ok([lo, hi].iter().filter(|e| e.abs() <= NULLITY_TOL * scale).count() as u8)
}

/// Kernel direction of the rank-one matrix `Θ - M∞(λ)`, taken from its larger row.
fn kernel_direction(lam: f64, theta: &Hermitian2, p: &JacobiParams) -> Result<Vec2, SpectrumError> {
    let minf = m_infinity(lam.into(), p)?.hermitian_part();
    let x = (theta.matrix() - minf.matrix()).entries();
    let r1 = x[0].norm_sqr() + x[1].norm_sqr();
    let r2 = x[2].norm_sqr() + x[3].norm_sqr();
    let v = if r1 >= r2 { [-x[1], x[0]] } else { [-x[3], x[2]] };
    normalize_phase(&v).ok_or(SpectrumError::InvalidAtom("no kernel direction"))
}

/// Fills weight, directions and multiplicity of an eigenvalue of the matrix extension.
///
/// # Errors
/// [`SpectrumError::ResidueNoConverge`], [`SpectrumError::OnAInfSpectrum`].
pub fn point_mass_theta(atom_in: &Atom, theta: &Hermitian2, p: &JacobiParams) -> Result<Atom, SpectrumError> {
    let lam = atom_in.lambda;
    let t = ThetaParam::Matrix(*theta);
    let weight = residue(lam, |l| m_theta(l, &t, p).map_err(Into::into))?;
    let mult = match multiplicity(lam, theta, p)? {
        0 => atom_in.multiplicity.max(1),
        m => m,
    };
    let eigvec_dirs = if mult >= 2 {
        vec![[1.0.into(), 0.0.into()], [0.0.into(), 1.0.into()]]
    } else {
        vec![kernel_direction(lam, theta, p)?]
    };
    Ok(Atom { lambda: lam, z_roots: atom_in.z_roots, weight, eigvec_dirs, multiplicity: mult })
}

/// Atom of any extension at a known eigenvalue `lam`, from the residue of `M_Θ`.
/// Directions are the weight's range; multiplicity is its rank.
pub fn point_mass(lam: f64, theta: &ThetaParam, p: &JacobiParams) -> Result<Atom, SpectrumError> {
    let z_roots = z_of_lambda(lam.into(), p);
    if let ThetaParam::Matrix(h) = theta {
        let seed = Atom { lambda: lam, z_roots, weight: Hermitian2::zero(), eigvec_dirs: Vec::new(), multiplicity: 1 };
        return point_mass_theta(&seed, h, p);
    }
    let weight = residue(lam, |l| m_theta(l, theta, p).map_err(Into::into))?;
    let rank = weight_rank(&weight);
    let (_, vs) = weight.eigen();
    let eigvec_dirs = match rank {
        2 => vec![vs[0], vs[1]],
        _ => vec![vs[1]],
    };
    Ok(Atom { lambda: lam, z_roots, weight, eigvec_dirs, multiplicity: rank.max(1) })
}

/// `Θ = M∞(λ(z₀))`, for which `λ(z₀)` is an eigenvalue of multiplicity two.
///
/// # Errors
/// [`SpectrumError::Excluded`] when `λ(z₀)` lies in `σ(A₀) ∪ σ(A∞)`,
/// [`SpectrumError::BelowGroundState`] when `λ(z₀) ≤ -(α+β)`.
pub fn make_degenerate(z0: f64, p: &JacobiParams) -> Result<Hermitian2, SpectrumError> {
    let lam = lambda_of_z(z0.into(), p).re;
    if a0_index_near(lam, p).is_some() || ainf_index_near(lam, p).is_some() {
        return Err(SpectrumError::Excluded { lambda: lam });
    }
    if lam <= -p.sum() {
        return Err(SpectrumError::BelowGroundState { lambda: lam });
    }
    let m = crate::weyl::m_infinity_z(z0.into(), p)?;
    Ok(Hermitian2::real(m.a11.re, m.a12.re, m.a22.re))
}

/// Closed-form truncation of the `A₀` measure, `n = 0..=n_max`.
pub fn a0_measure(p: &JacobiParams, n_max: u32) -> AtomicMatrixMeasure {
    let mut warnings = Vec::new();
    let atoms: Vec<Atom> = (0..=n_max)
        .map(|n| {
            let o = point_mass_a0(n, p);
            warnings.extend(o.warnings);
            o.value
        })
        .collect();
    let lam_max = atoms.last().map(|a| a.lambda).unwrap_or(f64::NEG_INFINITY);
    AtomicMatrixMeasure {
        params: *p,
        theta: ThetaParam::Matrix(Hermitian2::zero()),
        truncation: Truncation { count: atoms.len(), lam_max },
        atoms,
        warnings,
    }
}

/// The Friedrichs measure at `n(n+α+β+1) ≤ lam_max`, weights from residues of `M∞`.
pub fn ainf_measure(p: &JacobiParams, lam_max: f64) -> Result<AtomicMatrixMeasure, SpectrumError> {
    let theta = ThetaParam::Friedrichs;
    let mut atoms = Vec::new();
    let s1 = p.sum() + 1.0;
    let mut n = 0.0;
    while n * (n + s1) <= lam_max {
        let lam = n * (n + s1);
        let mut atom = point_mass(lam, &theta, p)?;
        let w = -1.0 - n;
        atom.z_roots = [w.into(), (n + p.sum()).into()];
        atoms.push(atom);
        n += 1.0;
    }
    Ok(AtomicMatrixMeasure {
        params: *p,
        theta,
        truncation: Truncation { count: atoms.len(), lam_max },
        atoms,
        warnings: Vec::new(),
    })
}

/// Atoms of the matrix extension `A_Θ` with `λ ≤ lam_max`.
pub fn theta_measure(p: &JacobiParams, theta: &Hermitian2, lam_max: f64) -> Result<AtomicMatrixMeasure, SpectrumError> {
    let located = eigenvalues_theta(p, theta, lam_max)?;
    let mut atoms = Vec::with_capacity(located.value.len());
    for a in &located.value {
        atoms.push(point_mass_theta(a, theta, p)?);
    }
    let mut warnings = located.warnings;
    if p.near_double_root() {
        warnings.push(Warning::NearDoubleRoot);
    }
    Ok(AtomicMatrixMeasure {
        params: *p,
        theta: ThetaParam::Matrix(*theta),
        truncation: Truncation { count: atoms.len(), lam_max },
        atoms,
        warnings,
    })
}

/// Spectral measure for any `ThetaParam` up to `lam_max`.
///
/// Relations with invertible `𝒜` are located through the matrix `ℬ𝒜⁻¹` and
/// weighted with the residues of the relation's own Weyl function.
pub fn measure(p: &JacobiParams, theta: &ThetaParam, lam_max: f64) -> Result<AtomicMatrixMeasure, SpectrumError> {
    match theta {
        ThetaParam::Matrix(h) => theta_measure(p, h, lam_max),
        ThetaParam::Friedrichs => ainf_measure(p, lam_max),
        ThetaParam::Relation { a, .. } => {
            if a.max_abs() == 0.0 {
                let mut m = ainf_measure(p, lam_max)?;
                m.theta = *theta;
                return Ok(m);
            }
            let h = theta.as_matrix().ok_or(SpectrumError::UnsupportedRelation)?;
            let located = eigenvalues_theta(p, &h, lam_max)?;
            let mut atoms = Vec::new();
            for a in &located.value {
                let mut atom = point_mass(a.lambda, theta, p)?;
                atom.z_roots = a.z_roots;
                atoms.push(atom);
            }
            Ok(AtomicMatrixMeasure {
                params: *p,
                theta: *theta,
                truncation: Truncation { count: atoms.len(), lam_max },
                atoms,
                warnings: located.warnings,
            })
        }
    }
}
