//! Independent check by direct integration of `ℓf = λf` and evaluation of
//! the boundary maps.
//!
//! The equation is integrated as a first-order system in `(f, pf')`,
//! `p = (1-x)^{α+1}(1+x)^{β+1}`, in the variable `s = atanh x`. Near the
//! endpoints the distance `δ = 1∓x` is then available without cancellation.
//! The quasi-derivatives
//!
//! ```text
//! f^[0](1)  = lim pf'                    f^[1](1)  = lim f - (1-x) f'/α
//! f^[0](-1) = lim -pf'                   f^[1](-1) = lim -f - (1+x) f'/β
//! ```
//!
//! are extrapolated from a geometric ladder of `δ` with the exact fractional
//! exponents of maximal-domain functions, and assembled as
//! `Γ₀f = (f^[0](1), f^[0](-1))`, `Γ₁f = (f^[1](1), -f^[1](-1))`. With this
//! ordering the Weyl function of the triple is `M∞`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{solve_dense, Hermitian2, Matrix2};
use crate::ode::{Dopri5, OdeFailure};
use crate::params::JacobiParams;
use crate::roots::{brent, golden_min};
use crate::spectrum::{Outcome, Warning};
use crate::weyl::ThetaParam;
use crate::Complex64;

/// Closest approach to each endpoint.
pub const EPS_END: f64 = 1e-6;
/// Ratio between consecutive ladder distances.
pub const LADDER_RATIO: f64 = 2.0;
/// Number of ladder points used by the extrapolation.
pub const LADDER_LEN: usize = 6;
/// Disagreement of orders `K` and `K-1` tolerated by the extrapolation.
pub const EXTRAPOLATION_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("integration step underflow at x = {x}")]
    StepUnderflow { x: f64 },
    #[error("integration exceeded the step budget at x = {x}")]
    TooManySteps { x: f64 },
    #[error("x = {0} is outside (-1, 1)")]
    OutsideInterval(f64),
    #[error("trace does not reach within {EPS_END:e} of both endpoints")]
    TraceTooShort,
    #[error("endpoint extrapolation at x = {endpoint} is unstable (relative disagreement {rel:e})")]
    ExtrapolationUnstable { endpoint: f64, rel: f64 },
    #[error("boundary matrices are degenerate at lambda = {lambda}")]
    Degenerate { lambda: f64 },
}

/// Integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Local relative and absolute tolerance of the Runge–Kutta steps.
    pub tol: f64,
    /// Step in `u` of the scan grid `λ = λ_v + u|u|`.
    pub du: f64,
    /// Lower end of the eigenvalue scan; `None` means `-(α+β) - 1`.
    pub lam_min: Option<f64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { tol: 1e-12, du: 0.05, lam_min: None }
    }
}

impl OracleOptions {
    fn solver(&self) -> Dopri5 {
        Dopri5 { rtol: self.tol, atol: self.tol, max_steps: 200_000 }
    }
}

/// Sampled solution of `ℓf = λf`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrace {
    pub lambda: f64,
    /// Strictly increasing points of `(-1, 1)`.
    pub grid: Vec<f64>,
    /// `atanh` of each grid point; carries the endpoint distance exactly.
    pub s: Vec<f64>,
    pub f: Vec<f64>,
    /// `p f'` with `p = (1-x)^{α+1}(1+x)^{β+1}`.
    pub pf: Vec<f64>,
}

/// `(1-x, 1+x)` at `x = tanh s`, each without cancellation.
pub fn endpoint_distances(s: f64) -> (f64, f64) {
    if s >= 0.0 {
        let e = (-2.0 * s).exp();
        (2.0 * e / (1.0 + e), 2.0 / (1.0 + e))
    } else {
        let e = (2.0 * s).exp();
        (2.0 / (1.0 + e), 2.0 * e / (1.0 + e))
    }
}

fn s_of_delta(delta: f64, plus: bool) -> f64 {
    let v = 0.5 * ((2.0 - delta) / delta).ln();
    if plus {
        v
    } else {
        -v
    }
}

fn ladder() -> [f64; LADDER_LEN] {
    core::array::from_fn(|k| EPS_END * LADDER_RATIO.powi(k as i32))
}

fn rhs(lam: f64, p: &JacobiParams) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] + '_ {
    move |s, y| {
        let (dm, dp) = endpoint_distances(s);
        let (a, b) = (p.alpha(), p.beta());
        let w = dm.powf(a) * dp.powf(b);
        [y[1] / w, -lam * w * dm * dp * y[0]]
    }
}

fn ode_err(e: OdeFailure) -> OracleError {
    match e {
        OdeFailure::StepUnderflow(s) => OracleError::StepUnderflow { x: s.tanh() },
        OdeFailure::TooManySteps(s) => OracleError::TooManySteps { x: s.tanh() },
    }
}

fn check_x(x: f64) -> Result<f64, OracleError> {
    if x > -1.0 && x < 1.0 {
        Ok(x.atanh())
    } else {
        Err(OracleError::OutsideInterval(x))
    }
}

struct Half {
    s: Vec<f64>,
    y: Vec<[f64; 2]>,
}

fn run_half(
    lam: f64,
    p: &JacobiParams,
    s0: f64,
    y0: [f64; 2],
    stops: &[f64],
    opts: &OracleOptions,
    every_step: bool,
) -> Result<Half, OracleError> {
    let mut h = Half { s: Vec::new(), y: Vec::new() };
    let mut k = 0;
    opts.solver()
        .run(rhs(lam, p), s0, y0, stops, |s, y| {
            while k < stops.len() && (stops[k] - s0).abs() < (s - s0).abs() {
                k += 1;
            }
            let is_stop = k < stops.len() && stops[k] == s;
            if every_step || is_stop || s == s0 {
                h.s.push(s);
                h.y.push(*y);
            }
        })
        .map_err(ode_err)?;
    Ok(h)
}

fn trace_from(lam: f64, halves: [Half; 2]) -> SolutionTrace {
    let [neg, pos] = halves;
    let mut t = SolutionTrace { lambda: lam, grid: Vec::new(), s: Vec::new(), f: Vec::new(), pf: Vec::new() };
    let mut push = |s: f64, y: &[f64; 2]| {
        if t.s.last().is_some_and(|&l| s <= l) {
            return;
        }
        t.s.push(s);
        t.grid.push(s.tanh());
        t.f.push(y[0]);
        t.pf.push(y[1]);
    };
    for (s, y) in neg.s.iter().zip(&neg.y).rev() {
        push(*s, y);
    }
    for (s, y) in pos.s.iter().zip(&pos.y) {
        push(*s, y);
    }
    t
}

/// Integrates from `from_x` with `(f, pf') = ics` to `to_x`, recording every accepted step.
pub fn integrate(
    lam: f64,
    p: &JacobiParams,
    from_x: f64,
    ics: (f64, f64),
    to_x: f64,
) -> Result<SolutionTrace, OracleError> {
    integrate_with(lam, p, from_x, ics, to_x, &OracleOptions::default())
}

pub fn integrate_with(
    lam: f64,
    p: &JacobiParams,
    from_x: f64,
    ics: (f64, f64),
    to_x: f64,
    opts: &OracleOptions,
) -> Result<SolutionTrace, OracleError> {
    let s0 = check_x(from_x)?;
    let s1 = check_x(to_x)?;
    let h = run_half(lam, p, s0, [ics.0, ics.1], &[s1], opts, true)?;
    let empty = Half { s: Vec::new(), y: Vec::new() };
    Ok(if s1 >= s0 { trace_from(lam, [empty, h]) } else { trace_from(lam, [h, empty]) })
}

/// Integrates from `x = 0` with `(f, pf') = ics` and returns the solution
/// exactly at the sorted points `xs`.
pub fn integrate_at(
    lam: f64,
    p: &JacobiParams,
    ics: (f64, f64),
    xs: &[f64],
    opts: &OracleOptions,
) -> Result<SolutionTrace, OracleError> {
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for &x in xs {
        let s = check_x(x)?;
        if s < 0.0 {
            neg.push(s);
        } else if s > 0.0 {
            pos.push(s);
        }
    }
    neg.reverse();
    let y0 = [ics.0, ics.1];
    let hn = run_half(lam, p, 0.0, y0, &neg, opts, false)?;
    let hp = run_half(lam, p, 0.0, y0, &pos, opts, false)?;
    let mut t = trace_from(lam, [hn, hp]);
    if !xs.contains(&0.0) {
        if let Some(i) = t.s.iter().position(|&s| s == 0.0) {
            t.grid.remove(i);
            t.s.remove(i);
            t.f.remove(i);
            t.pf.remove(i);
        }
    }
    Ok(t)
}

/// Solution from `x = 0` out to `1 - EPS_END` and `-1 + EPS_END`, with the
/// extrapolation ladder among its grid points.
pub fn endpoint_trace(lam: f64, p: &JacobiParams, ics: (f64, f64), opts: &OracleOptions) -> Result<SolutionTrace, OracleError> {
    let lad = ladder();
    let pos: Vec<f64> = lad.iter().rev().map(|&d| s_of_delta(d, true)).collect();
    let neg: Vec<f64> = lad.iter().rev().map(|&d| s_of_delta(d, false)).collect();
    let y0 = [ics.0, ics.1];
    let hn = run_half(lam, p, 0.0, y0, &neg, opts, false)?;
    let hp = run_half(lam, p, 0.0, y0, &pos, opts, false)?;
    Ok(trace_from(lam, [hn, hp]))
}

/// Modified Wronskian `[f, g](x) = pf'·g - f·pg'` of two traces on a common grid.
///
/// Constant in `x` when both solve the equation at the same `λ`.
pub fn bracket(f: &SolutionTrace, g: &SolutionTrace) -> Option<Vec<f64>> {
    (f.grid == g.grid).then(|| {
        (0..f.grid.len()).map(|i| f.pf[i] * g.f[i] - f.f[i] * g.pf[i]).collect()
    })
}

/// The four quasi-derivative limits of one solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiDerivatives {
    pub f0_plus: f64,
    pub f0_minus: f64,
    pub f1_plus: f64,
    pub f1_minus: f64,
}

/// Boundary values `Γ₀f = (f^[0](1), f^[0](-1))`, `Γ₁f = (f^[1](1), -f^[1](-1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub g0: [f64; 2],
    pub g1: [f64; 2],
    pub quasi: QuasiDerivatives,
}

/// First `K` exponents of `{0} ∪ {m + a : m ≥ 1} ∪ {m : m ≥ 1}` (`a` may be negative).
fn exponents(shift: f64) -> [f64; LADDER_LEN] {
    let mut v: Vec<f64> = Vec::with_capacity(2 * LADDER_LEN + 1);
    v.push(0.0);
    for m in 1..=LADDER_LEN {
        v.push(m as f64);
        v.push(m as f64 + shift);
    }
    v.retain(|&e| e >= 0.0);
    v.sort_by(f64::total_cmp);
    core::array::from_fn(|i| v[i])
}

/// Constant term of a fit `Σ c_j δ^{q_j}` through the points.
fn fit_constant(ds: &[f64], vs: &[f64], qs: &[f64]) -> Option<f64> {
    let n = qs.len();
    let dmax = ds.iter().cloned().fold(0.0, f64::max);
    let mut a = Vec::with_capacity(n * n);
    for &d in &ds[..n] {
        let u = d / dmax;
        a.extend(qs.iter().map(|&q| if q == 0.0 { 1.0 } else { u.powf(q) }));
    }
    let mut b = vs[..n].to_vec();
    solve_dense(&mut a, &mut b, n)?;
    Some(b[0])
}

/// Extrapolates to `δ → 0` with `K` and `K-1` terms and checks agreement.
fn extrapolate(ds: &[f64], vs: &[f64], qs: &[f64; LADDER_LEN], endpoint: f64) -> Result<f64, OracleError> {
    let unstable = |rel| OracleError::ExtrapolationUnstable { endpoint, rel };
    let full = fit_constant(ds, vs, qs).ok_or(unstable(f64::INFINITY))?;
    let reduced = fit_constant(&ds[..LADDER_LEN - 1], &vs[..LADDER_LEN - 1], &qs[..LADDER_LEN - 1])
        .ok_or(unstable(f64::INFINITY))?;
    let scale = vs.iter().fold(full.abs(), |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let rel = (full - reduced).abs() / scale;
    if rel.is_nan() || rel > EXTRAPOLATION_TOL {
        return Err(unstable(rel));
    }
    Ok(full)
}

/// Picks the trace points nearest (in `log δ`) to each ladder distance at one end.
fn ladder_points(trace: &SolutionTrace, plus: bool) -> Result<Vec<(f64, f64, f64)>, OracleError> {
    let mut out: Vec<(f64, f64, f64)> = Vec::with_capacity(LADDER_LEN);
    let dist = |i: usize| {
        let (dm, dp) = endpoint_distances(trace.s[i]);
        if plus {
            dm
        } else {
            dp
        }
    };
    let idx: Vec<usize> = (0..trace.s.len()).filter(|&i| (trace.s[i] > 0.0) == plus).collect();
    let closest = idx.iter().map(|&i| dist(i)).fold(f64::INFINITY, f64::min);
    if closest > EPS_END * (1.0 + 1e-9) {
        return Err(OracleError::TraceTooShort);
    }
    let mut used: Vec<usize> = Vec::new();
    for target in ladder() {
        let best = idx
            .iter()
            .filter(|i| !used.contains(i))
            .min_by(|&&i, &&j| {
                (dist(i) / target).ln().abs().total_cmp(&(dist(j) / target).ln().abs())
            })
            .copied()
            .ok_or(OracleError::TraceTooShort)?;
        used.push(best);
        out.push((dist(best), trace.f[best], trace.pf[best]));
    }
    Ok(out)
}

/// Extrapolated `Γ₀f`, `Γ₁f` of a trace reaching within [`EPS_END`] of both ends.
///
/// # Errors
/// [`OracleError::TraceTooShort`], [`OracleError::ExtrapolationUnstable`].
pub fn boundary_functionals(trace: &SolutionTrace, p: &JacobiParams) -> Result<BoundaryData, OracleError> {
    let (a, b) = (p.alpha(), p.beta());
    // +1: δ = 1-x,  f^[1] = f - pf'/(α δ^α (2-δ)^{β+1})
    let pts = ladder_points(trace, true)?;
    let ds: Vec<f64> = pts.iter().map(|t| t.0).collect();
    let q1: Vec<f64> = pts.iter().map(|&(d, f, pf)| f - pf / (a * d.powf(a) * (2.0 - d).powf(b + 1.0))).collect();
    let q0: Vec<f64> = pts.iter().map(|t| t.2).collect();
    let f1_plus = extrapolate(&ds, &q1, &exponents(-a), 1.0)?;
    let f0_plus = extrapolate(&ds, &q0, &exponents(a), 1.0)?;
    // -1: δ = 1+x,  f^[1] = -f - pf'/(β δ^β (2-δ)^{α+1})
    let pts = ladder_points(trace, false)?;
    let ds: Vec<f64> = pts.iter().map(|t| t.0).collect();
    let q1: Vec<f64> = pts.iter().map(|&(d, f, pf)| -f - pf / (b * d.powf(b) * (2.0 - d).powf(a + 1.0))).collect();
    let q0: Vec<f64> = pts.iter().map(|t| -t.2).collect();
    let f1_minus = extrapolate(&ds, &q1, &exponents(-b), -1.0)?;
    let f0_minus = extrapolate(&ds, &q0, &exponents(b), -1.0)?;
    Ok(BoundaryData {
        g0: [f0_plus, f0_minus],
        g1: [f1_plus, -f1_minus],
        quasi: QuasiDerivatives { f0_plus, f0_minus, f1_plus, f1_minus },
    })
}

/// `(G₀, G₁)`: columns are `Γ₀uᵢ`, `Γ₁uᵢ` for the solutions with
/// `(f, pf')(0) = (1, 0)` and `(0, 1)`.
pub fn boundary_matrices(lam: f64, p: &JacobiParams, opts: &OracleOptions) -> Result<(Matrix2, Matrix2), OracleError> {
    let u1 = boundary_functionals(&endpoint_trace(lam, p, (1.0, 0.0), opts)?, p)?;
    let u2 = boundary_functionals(&endpoint_trace(lam, p, (0.0, 1.0), opts)?, p)?;
    let g0 = Matrix2::from_real(u1.g0[0], u2.g0[0], u1.g0[1], u2.g0[1]);
    let g1 = Matrix2::from_real(u1.g1[0], u2.g1[0], u1.g1[1], u2.g1[1]);
    Ok((g0, g1))
}

/// Boundary-condition matrix `ΘG₀ - G₁` or `𝒜*G₁ - ℬ*G₀`, scaled by `1/(‖G₀‖‖G₁‖)`.
fn condition_matrix(theta: &ThetaParam, g0: &Matrix2, g1: &Matrix2) -> Matrix2 {
    let m = match theta {
        ThetaParam::Matrix(h) => h.matrix() * *g0 - *g1,
        _ => {
            let (a, b) = theta.relation_parts();
            a.adjoint() * *g1 - b.adjoint() * *g0
        }
    };
    m.scale(Complex64::from(1.0 / (g0.norm_fro() * g1.norm_fro())))
}

/// Constant phase making the relation determinant real.
fn relation_phase(theta: &ThetaParam) -> Complex64 {
    if let ThetaParam::Matrix(_) = theta {
        return Complex64::from(1.0);
    }
    let (a, b) = theta.relation_parts();
    for aux in [Hermitian2::real(0.37, 0.11, -0.53), Hermitian2::real(-1.3, 0.7, 0.2)] {
        let d = (a.adjoint() * aux.matrix() - b.adjoint()).det();
        if d.norm() > 1e-8 {
            return d.conj() / d.norm();
        }
    }
    Complex64::from(1.0)
}

fn det_from(theta: &ThetaParam, phase: Complex64, g0: &Matrix2, g1: &Matrix2) -> f64 {
    (condition_matrix(theta, g0, g1).det() * phase).re
}

/// Normalized shooting determinant; its zeros are the eigenvalues of `A_Θ`.
pub fn shooting_det(lam: f64, theta: &ThetaParam, p: &JacobiParams) -> Result<f64, OracleError> {
    shooting_det_with(lam, theta, p, &OracleOptions::default())
}

pub fn shooting_det_with(lam: f64, theta: &ThetaParam, p: &JacobiParams, opts: &OracleOptions) -> Result<f64, OracleError> {
    let (g0, g1) = boundary_matrices(lam, p, opts)?;
    Ok(det_from(theta, relation_phase(theta), &g0, &g1))
}

/// Shooting eigenvalues on `[-(α+β) - 1, lam_max]`.
pub fn oracle_eigenvalues(theta: &ThetaParam, p: &JacobiParams, lam_max: f64) -> Result<Outcome<Vec<f64>>, OracleError> {
    oracle_eigenvalues_with(theta, p, lam_max, &OracleOptions::default())
}

/// Shooting eigenvalues on `[lam_min, lam_max]`: sign changes of the
/// determinant on the grid `λ = λ_v + u|u|`, refined by Brent's method, plus
/// double zeros found as dips of the condition matrix norm.
pub fn oracle_eigenvalues_with(
    theta: &ThetaParam,
    p: &JacobiParams,
    lam_max: f64,
    opts: &OracleOptions,
) -> Result<Outcome<Vec<f64>>, OracleError> {
    let lam_v = p.vertex_lambda();
    let lam_min = opts.lam_min.unwrap_or(-p.sum() - 1.0);
    let u_of = |l: f64| (l - lam_v).signum() * (l - lam_v).abs().sqrt();
    let lam_of = |u: f64| lam_v + u * u.abs();
    let (u0, u1) = (u_of(lam_min), u_of(lam_max));
    let cells = ((u1 - u0) / opts.du).ceil().max(1.0) as usize;
    let lams: Vec<f64> = (0..=cells)
        .map(|k| if k == cells { lam_max } else { lam_of(u0 + k as f64 * opts.du) })
        .collect();
    let phase = relation_phase(theta);
    let det = |l: f64| -> Result<f64, OracleError> {
        let (g0, g1) = boundary_matrices(l, p, opts)?;
        Ok(det_from(theta, phase, &g0, &g1))
    };
    let size = |l: f64| -> Result<f64, OracleError> {
        let (g0, g1) = boundary_matrices(l, p, opts)?;
        Ok(condition_matrix(theta, &g0, &g1).norm_fro())
    };
    let ds: Vec<f64> = lams.iter().map(|&l| det(l)).collect::<Result<_, _>>()?;
    let xtol = |l: f64| 1e-12 * l.abs().max(1.0);
    let mut out = Outcome::new(Vec::new());
    for k in 0..cells {
        let (l0, l1, d0, d1) = (lams[k], lams[k + 1], ds[k], ds[k + 1]);
        if d0 == 0.0 {
            out.value.push(l0);
        } else if d0 * d1 < 0.0 {
            out.value.push(brent(det, l0, l1, d0, d1, xtol(l1))?);
        } else if k > 0 && d0.signum() == ds[k - 1].signum() && d0.signum() == d1.signum()
            && d0.abs() < ds[k - 1].abs() && d0.abs() <= d1.abs()
        {
            let sg = d0.signum();
            let (lm, dm) = golden_min(|l| det(l).map(|d| sg * d), lams[k - 1], l1, 1e-10)?;
            if dm < 0.0 {
                out.warnings.push(Warning::GridTooCoarse { lambda_lo: lams[k - 1], lambda_hi: l1 });
                let da = det(lams[k - 1])?;
                out.value.push(brent(det, lams[k - 1], lm, da, sg * dm, xtol(lm))?);
                out.value.push(brent(det, lm, l1, sg * dm, d1, xtol(l1))?);
            } else {
                let (lz, _) = golden_min(size, lams[k - 1], l1, 1e-13 * l1.abs().max(1.0))?;
                if det(lz)?.abs() < 1e-10 {
                    out.value.push(lz);
                }
            }
        }
    }
    if ds[cells] == 0.0 {
        out.value.push(lam_max);
    }
    out.value.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_sets() {
        assert_eq!(exponents(0.6), [0.0, 1.0, 1.6, 2.0, 2.6, 3.0]);
        let e = exponents(-0.6);
        let want = [0.0, 0.4, 1.0, 1.4, 2.0, 2.4];
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn endpoint_distance_round_trip() {
        for d in ladder() {
            let (dm, _) = endpoint_distances(s_of_delta(d, true));
            assert!((dm - d).abs() < 1e-15 * d);
            let (_, dp) = endpoint_distances(s_of_delta(d, false));
            assert!((dp - d).abs() < 1e-15 * d);
        }
    }
}
