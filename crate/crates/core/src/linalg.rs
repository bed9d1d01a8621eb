//! 2×2 complex matrices and vectors.

use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex64;

/// Vector in `ℂ²`.
pub type Vec2 = [Complex64; 2];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Euclidean inner product `⟨u, v⟩ = Σ uᵢ conj(vᵢ)`.
pub fn dot(u: &Vec2, v: &Vec2) -> Complex64 {
    u[0] * v[0].conj() + u[1] * v[1].conj()
}

pub fn vnorm(v: &Vec2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

pub fn vscale(v: &Vec2, s: Complex64) -> Vec2 {
    [v[0] * s, v[1] * s]
}

/// Unit vector whose first nonzero component is real positive, or `None` for the zero vector.
pub fn normalize_phase(v: &Vec2) -> Option<Vec2> {
    let n = vnorm(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    let lead = if v[0].norm() > 1e-15 * n { v[0] } else { v[1] };
    let phase = lead.conj() / lead.norm();
    Some(vscale(v, phase / n))
}

/// General 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Matrix2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    pub fn adjugate(&self) -> Self {
        Self::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    /// Inverse by the adjugate, `None` when `|det| < rel_tol·‖A‖²_F`.
    pub fn inverse(&self, rel_tol: f64) -> Option<Self> {
        let d = self.det();
        let n = self.norm_fro();
        if d.norm().is_nan() || d.norm() < rel_tol * n * n || d.norm() == 0.0 {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn norm_fro(&self) -> f64 {
        (self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.norm().max(self.a12.norm()).max(self.a21.norm()).max(self.a22.norm())
    }

    /// Singular values, descending. The smaller one is `|det|/σ₁`, which keeps
    /// its relative accuracy when the matrix is nearly singular.
    pub fn singular_values(&self) -> [f64; 2] {
        let g = Hermitian2::from_matrix_unchecked(&(self.adjoint() * *self));
        let hi = g.eigenvalues()[1].max(0.0).sqrt();
        if hi == 0.0 {
            return [0.0, 0.0];
        }
        [hi, (self.det().norm() / hi).min(hi)]
    }

    /// Spectral norm.
    pub fn norm2(&self) -> f64 {
        self.singular_values()[0]
    }

    /// `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Hermitian2 {
        Hermitian2::from_matrix_unchecked(self)
    }

    /// `Im A = (A - A*)/(2i)`, the Herglotz imaginary part.
    pub fn imag_part(&self) -> Hermitian2 {
        let d = (*self - self.adjoint()).scale(Complex64::new(0.0, -0.5));
        Hermitian2::from_matrix_unchecked(&d)
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22].iter().all(|c| c.is_finite())
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }
}

impl Add for Matrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Matrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for Matrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl Mul for Matrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

/// 2×2 Hermitian matrix `[[a, b], [conj b, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2 {
    a: f64,
    b: Complex64,
    d: f64,
}

impl Hermitian2 {
    pub fn new(a: f64, b: Complex64, d: f64) -> Self {
        Self { a, b, d }
    }

    pub fn real(a: f64, b: f64, d: f64) -> Self {
        Self::new(a, b.into(), d)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::real(a, 0.0, d)
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0)
    }

    /// Accepts `m` if it is Hermitian within `tol·max(1, ‖m‖_F)`.
    pub fn try_from_matrix(m: &Matrix2, tol: f64) -> Option<Self> {
        let scale = tol * m.norm_fro().max(1.0);
        let ok = (m.a12 - m.a21.conj()).norm() <= scale
            && m.a11.im.abs() <= scale
            && m.a22.im.abs() <= scale;
        ok.then(|| Self::from_matrix_unchecked(m))
    }

    /// Hermitian part of `m`.
    pub fn from_matrix_unchecked(m: &Matrix2) -> Self {
        Self::new(m.a11.re, (m.a12 + m.a21.conj()) * 0.5, m.a22.re)
    }

    pub fn a11(&self) -> f64 {
        self.a
    }

    pub fn a12(&self) -> Complex64 {
        self.b
    }

    pub fn a22(&self) -> f64 {
        self.d
    }

    pub fn matrix(&self) -> Matrix2 {
        Matrix2::new(self.a.into(), self.b, self.b.conj(), self.d.into())
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b.norm_sqr()
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = 0.5 * (self.a + self.d);
        let r = (0.5 * (self.a - self.d)).hypot(self.b.norm());
        [m - r, m + r]
    }

    /// Eigenvalues ascending with orthonormal eigenvectors.
    pub fn eigen(&self) -> ([f64; 2], [Vec2; 2]) {
        let ev = self.eigenvalues();
        let h = 0.5 * (self.a - self.d);
        let r = ev[1] - 0.5 * (self.a + self.d);
        let top = if h >= 0.0 {
            [Complex64::from(h + r), self.b.conj()]
        } else {
            [self.b, Complex64::from(r - h)]
        };
        let top = normalize_phase(&top).unwrap_or([ONE, ZERO]);
        let bottom = [-top[1].conj(), top[0].conj()];
        (ev, [bottom, top])
    }

    /// Largest eigenvalue modulus.
    pub fn norm2(&self) -> f64 {
        let [lo, hi] = self.eigenvalues();
        lo.abs().max(hi.abs())
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues()[0] > 0.0
    }

    /// `f(H)` through the spectral decomposition.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let (ev, vs) = self.eigen();
        let mut out = Matrix2::zero();
        for (l, v) in ev.iter().zip(vs.iter()) {
            let fl = Complex64::from(f(*l));
            let p = Matrix2::new(
                v[0] * v[0].conj(),
                v[0] * v[1].conj(),
                v[1] * v[0].conj(),
                v[1] * v[1].conj(),
            );
            out = out + p.scale(fl);
        }
        Self::from_matrix_unchecked(&out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.d * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.d + o.d)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.d.is_finite()
    }
}

/// Gaussian elimination with partial pivoting on a row-major `n×n` system.
/// Overwrites `b` with the solution. `None` if a pivot vanishes.
pub(crate) fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Option<()> {
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[piv * n + col] == 0.0 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        for row in col + 1..n {
            let f = a[row * n + col] / a[col * n + col];
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in col + 1..n {
            s -= a[col * n + k] * b[k];
        }
        b[col] = s / a[col * n + col];
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_eigen_decomposition() {
        let h = Hermitian2::new(1.3, Complex64::new(-0.4, 0.7), -0.2);
        let (ev, vs) = h.eigen();
        for (l, v) in ev.iter().zip(vs.iter()) {
            let hv = h.matrix().apply(v);
            assert!((hv[0] - v[0] * l).norm() < 1e-14);
            assert!((hv[1] - v[1] * l).norm() < 1e-14);
        }
        assert!(dot(&vs[0], &vs[1]).norm() < 1e-15);
        let id = h.map_spectrum(|x| x);
        assert!((id.matrix() - h.matrix()).norm_fro() < 1e-14);
    }

    #[test]
    fn eigen_of_diagonal_and_scalar() {
        let (ev, vs) = Hermitian2::diag(2.0, 2.0).eigen();
        assert_eq!(ev, [2.0, 2.0]);
        assert!((vnorm(&vs[0]) - 1.0).abs() < 1e-15);
        let (ev, _) = Hermitian2::diag(-1.0, 3.0).eigen();
        assert_eq!(ev, [-1.0, 3.0]);
    }

    #[test]
    fn inverse_and_singular_values() {
        let m = Matrix2::new(
            Complex64::new(1.0, 2.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(3.0, -1.0),
        );
        let inv = m.inverse(1e-12).unwrap();
        assert!(((m * inv) - Matrix2::identity()).norm_fro() < 1e-14);
        let [s1, s2] = m.singular_values();
        assert!((s1 * s2 - m.det().norm()).abs() < 1e-12);
        assert!(Matrix2::from_real(1.0, 2.0, 2.0, 4.0).inverse(1e-12).is_none());
    }

    #[test]
    fn dense_solver() {
        let mut a = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
        let mut b = [3.0, 5.0, 5.0];
        solve_dense(&mut a, &mut b, 3).unwrap();
        for (x, e) in b.iter().zip([1.0, 1.0, 1.0]) {
            assert!((x - e).abs() < 1e-15);
        }
    }
}
