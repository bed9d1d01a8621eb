#![allow(dead_code)]

use jacobi_spectra::{Complex64, Hermitian2, JacobiParams, Matrix2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p063() -> JacobiParams {
    JacobiParams::new(0.6, 0.3).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hermitian matrix with entries uniform in [-2, 2].
pub fn random_hermitian(r: &mut ChaCha8Rng) -> Hermitian2 {
    Hermitian2::new(
        r.random_range(-2.0..2.0),
        Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)),
        r.random_range(-2.0..2.0),
    )
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn mat_rel_err(a: &Matrix2, b: &Matrix2) -> f64 {
    (*a - *b).norm_fro() / b.norm_fro().max(f64::MIN_POSITIVE)
}

pub fn params_strategy() -> impl Strategy<Value = JacobiParams> {
    (0.02f64..0.98, 0.02f64..0.98).prop_map(|(a, b)| JacobiParams::new(a, b).unwrap())
}

pub fn hermitian_strategy() -> impl Strategy<Value = Hermitian2> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0)
        .prop_map(|(a, br, bi, d)| Hermitian2::new(a, Complex64::new(br, bi), d))
}

/// `n` Gauss nodes and weights for `(1-x)^a (1+x)^b` on `[-1, 1]` by Golub–Welsch.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    use nalgebra::{DMatrix, SymmetricEigen};
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let t = 2.0 * kf + a + b;
        j[(k, k)] = if k == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (t * (t + 2.0)) };
        if k + 1 < n {
            let m = kf + 1.0;
            let t = 2.0 * m + a + b;
            let off = (4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1.0) * (t - 1.0))).sqrt();
            j[(k, k + 1)] = off;
            j[(k + 1, k)] = off;
        }
    }
    let mu0 = 2f64.powf(a + b + 1.0) * libm_gamma(a + 1.0) * libm_gamma(b + 1.0) / libm_gamma(a + b + 2.0);
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// Real Gamma for positive arguments from the C library, independent of the crate.
pub fn libm_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    libm::tgamma(x)
}

/// Local minima of `g` on a uniform grid over `[lo, hi]`, refined by golden
/// section; kept when the refined value is below `floor`.
pub fn scan_minima(g: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64, floor: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    let xs: Vec<f64> = (0..=n).map(|k| lo + k as f64 * step).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut out = Vec::new();
    for k in 1..n {
        if vs[k] <= vs[k - 1] && vs[k] <= vs[k + 1] {
            let (x, v) = golden(&g, xs[k - 1], xs[k + 1]);
            if v < floor {
                out.push(x);
            }
        }
    }
    out
}

fn golden(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while (b - a).abs() > 1e-14 * b.abs().max(1.0) {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, g(x))
}

/// Smallest eigenvalue of the Hermitian part of `(m - m*)/2i`.
pub fn min_imag_eig(m: &Matrix2) -> f64 {
    m.imag_part().eigenvalues()[0]
}

/// `μ{λ₀} = -Res_{λ₀} M` by the trapezoidal rule on a circle of radius `r`.
pub fn contour_weight(m: impl Fn(Complex64) -> Matrix2, lam0: f64, r: f64) -> Matrix2 {
    let k = 128;
    let mut acc = Matrix2::zero();
    for j in 0..k {
        let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / k as f64;
        let w = Complex64::from_polar(r, th);
        acc = acc + m(Complex64::from(lam0) + w).scale(w);
    }
    acc.scale(Complex64::from(-1.0 / k as f64))
}

/// Angle between two directions in `ℂ²`, insensitive to phase.
pub fn angle(u: &[Complex64; 2], v: &[Complex64; 2]) -> f64 {
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let cross = (u[0] * v[1] - u[1] * v[0]).norm();
    (cross / (nu * nv)).min(1.0).asin()
}
