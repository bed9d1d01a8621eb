mod common;

use common::{hermitian_strategy, mat_rel_err, min_imag_eig, p063, params_strategy, random_hermitian, rng, scan_minima};
use jacobi_spectra::params::{coeffs, lambda_of_z, z_of_lambda};
use jacobi_spectra::spectrum::make_degenerate;
use jacobi_spectra::weyl::{
    char_det, char_det_reduced, l_matrix, m_infinity, m_infinity_z, m_theta, m_theta_kl, m_zero, m_zero_z,
};
use jacobi_spectra::{Complex64, Hermitian2, Matrix2, ThetaParam, WeylError};
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn m_infinity_poles_are_the_classical_spectrum() {
    let p = p063();
    let inv_norm = |l: f64| m_infinity(c(l, 0.0), &p).map(|m| 1.0 / m.norm_fro()).unwrap_or(0.0);
    let poles = scan_minima(inv_norm, -0.5, 121.0, 0.05, 1e-6);
    assert_eq!(poles.len(), 11, "{poles:?}");
    for (n, l) in poles.iter().enumerate() {
        let want = n as f64 * (n as f64 + 1.9);
        assert!((l - want).abs() < 1e-8, "n={n}: {l} vs {want}");
    }
    assert!(matches!(m_infinity(c(2.9, 0.0), &p), Err(WeylError::PoleOfM { .. })));
}

#[test]
fn m_zero_poles_are_the_a0_spectrum() {
    let p = p063();
    let inv_norm = |l: f64| m_zero(c(l, 0.0), &p).map(|m| 1.0 / m.norm_fro()).unwrap_or(0.0);
    let poles = scan_minima(inv_norm, -1.2, 121.0, 0.05, 1e-6);
    for (n, l) in poles.iter().enumerate() {
        let nf = n as f64;
        let want = (nf + 1.0) * (nf - 0.9);
        assert!((l - want).abs() < 1e-9 * want.abs().max(1.0), "n={n}: {l} vs {want}");
    }
    assert_eq!(poles.len(), 11);
}

#[test]
fn symmetric_off_diagonals() {
    let p = p063();
    let th = ThetaParam::Matrix(Hermitian2::diag(0.7, -1.1));
    for k in 0..20 {
        let lam = c(-3.0 + 1.7 * k as f64, 0.3 * k as f64 - 2.0);
        for m in [m_infinity(lam, &p).unwrap(), m_zero(lam, &p).unwrap(), m_theta(lam, &th, &p).unwrap()] {
            assert!((m.a12 - m.a21).norm() <= 1e-14 * m.norm_fro());
        }
    }
}

#[test]
fn theta_zero_gives_m_zero() {
    let p = p063();
    let th = ThetaParam::Matrix(Hermitian2::zero());
    for k in 0..40 {
        let lam = c(-2.0 + 1.1 * k as f64, 0.5 + 0.2 * k as f64);
        let a = m_theta(lam, &th, &p).unwrap();
        let b = m_zero(lam, &p).unwrap();
        assert!(mat_rel_err(&a, &b) < 1e-12, "{lam}");
    }
}

#[test]
fn friedrichs_relation_gives_m_infinity() {
    let p = p063();
    let rel = ThetaParam::relation(Matrix2::zero(), Matrix2::identity()).unwrap();
    for k in 0..20 {
        let lam = c(-1.0 + 2.3 * k as f64, 1.0);
        let a = m_theta(lam, &rel, &p).unwrap();
        let f = m_theta(lam, &ThetaParam::Friedrichs, &p).unwrap();
        let b = m_infinity(lam, &p).unwrap();
        assert!(mat_rel_err(&a, &b) < 1e-13 && mat_rel_err(&f, &b) < 1e-15);
    }
}

#[test]
fn relation_of_a_matrix_is_a_cayley_type_transform() {
    // with 𝒜 = (1+Θ²)^{-1/2}, ℬ = Θ𝒜: relation M = 𝒜⁻¹(Θ - M∞)⁻¹𝒜⁻¹ - Θ
    let p = p063();
    let mut r = rng(11);
    for _ in 0..20 {
        let h = random_hermitian(&mut r);
        let rel = ThetaParam::relation_of(&h);
        let (a, _) = rel.relation_parts();
        let ainv = a.inverse(1e-14).unwrap();
        let lam = c(r.random_range(-5.0..40.0), r.random_range(0.1..5.0));
        let mt = m_theta(lam, &ThetaParam::Matrix(h), &p).unwrap();
        let want = ainv * mt * ainv - h.matrix();
        let got = m_theta(lam, &rel, &p).unwrap();
        assert!(mat_rel_err(&got, &want) < 1e-10, "{lam}");
        // and the matrix is recovered from the pair
        let back = rel.as_matrix().unwrap();
        assert!((back.matrix() - h.matrix()).norm_fro() < 1e-12 * h.norm2().max(1.0));
    }
}

#[test]
fn relation_validation() {
    let bad = ThetaParam::relation(Matrix2::identity(), Matrix2::identity());
    assert!(matches!(bad, Err(WeylError::InvalidTheta(_))));
    let nonsym = ThetaParam::relation(
        Matrix2::from_real(0.6, 0.0, 0.0, 1.0),
        Matrix2::from_real(0.0, 0.8, 0.0, 0.0),
    );
    assert!(nonsym.is_err());
    let m = Matrix2::from_real(1.0, 2.0, 0.0, 1.0);
    assert!(ThetaParam::from_matrix(&m).is_err());
}

#[test]
fn degenerate_theta_kills_l() {
    let p = p063();
    for &z0 in &[0.35, 0.7, 1.4, 2.6, 4.2] {
        let th = make_degenerate(z0, &p).unwrap();
        let z = c(z0, 0.0);
        let l = l_matrix(z, &th, &p);
        let c2 = coeffs(z, &p).c2.norm();
        assert!(l.max_abs() < 1e-10 * c2.max(1.0), "z0={z0}: {l:?}");
        assert!(char_det(z, &th, &p).norm() < 1e-10);
        assert!(char_det_reduced(z, &th, &p).norm() < 1e-10);
        // Θ₁₂ = Θ₂₁ = 1/c₂(z₀), real
        assert!((th.a12() - coeffs(z, &p).c2.inv()).norm() < 1e-12 * th.a12().norm());
    }
}

#[test]
fn reduced_determinant_at_theta_zero_vanishes_at_integers() {
    let p = p063();
    for n in 0..12 {
        let d = char_det_reduced(c(n as f64, 0.0), &Hermitian2::zero(), &p);
        assert!(d.norm() < 1e-12, "n={n}");
        let d = char_det_reduced(c(n as f64 + 0.5, 0.0), &Hermitian2::zero(), &p);
        assert!(d.norm() > 1e-3);
    }
}

proptest! {
    #[test]
    fn m_zero_is_minus_inverse_of_m_infinity(p in params_strategy(), re in -20.0f64..150.0, im in -30.0f64..30.0) {
        prop_assume!(im.abs() > 1e-3);
        let lam = c(re, im);
        let mi = m_infinity(lam, &p).unwrap();
        let m0 = m_zero(lam, &p).unwrap();
        let prod = m0 * mi + Matrix2::identity();
        prop_assert!(prod.norm_fro() < 1e-10 * (m0.norm_fro() * mi.norm_fro()).max(1.0));
        let inv = mi.inverse(1e-14).unwrap().scale(c(-1.0, 0.0));
        prop_assert!(mat_rel_err(&m0, &inv) < 1e-10);
    }

    #[test]
    fn m_functions_are_branch_invariant(p in params_strategy(), re in -8.0f64..8.0, im in 0.05f64..6.0) {
        let z = c(re, im);
        let zr = c(p.sum() - 1.0, 0.0) - z;
        let (a, b) = (m_infinity_z(z, &p).unwrap(), m_infinity_z(zr, &p).unwrap());
        prop_assert!(mat_rel_err(&a, &b) < 1e-10);
        let (a, b) = (m_zero_z(z, &p).unwrap(), m_zero_z(zr, &p).unwrap());
        prop_assert!(mat_rel_err(&a, &b) < 1e-10);
        let roots = z_of_lambda(lambda_of_z(z, &p), &p);
        let (a, b) = (m_infinity_z(roots[0], &p).unwrap(), m_infinity_z(roots[1], &p).unwrap());
        prop_assert!(mat_rel_err(&a, &b) < 1e-10);
    }

    #[test]
    fn herglotz_and_reflection(p in params_strategy(), h in hermitian_strategy(), re in -10.0f64..100.0, im in 1e-3f64..20.0) {
        let lam = c(re, im);
        for th in [ThetaParam::Matrix(h), ThetaParam::Friedrichs, ThetaParam::Matrix(Hermitian2::zero())] {
            let m = m_theta(lam, &th, &p).unwrap();
            prop_assert!(min_imag_eig(&m) >= -1e-10 * m.norm_fro().max(1.0), "{th:?} at {lam}");
            let mc = m_theta(lam.conj(), &th, &p).unwrap();
            prop_assert!(mat_rel_err(&mc, &m.adjoint()) < 1e-12);
        }
    }

    #[test]
    fn kl_form_matches_inverse(p in params_strategy(), h in hermitian_strategy(), re in -10.0f64..100.0, im in 0.01f64..20.0) {
        let lam = c(re, im);
        let z = z_of_lambda(lam, &p)[1];
        let a = m_theta(lam, &ThetaParam::Matrix(h), &p).unwrap();
        let b = m_theta_kl(z, &h, &p).unwrap();
        prop_assert!(mat_rel_err(&a, &b) < 1e-10);
    }

    #[test]
    fn char_det_is_branch_invariant(p in params_strategy(), h in hermitian_strategy(), re in -6.0f64..6.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        let zr = c(p.sum() - 1.0, 0.0) - z;
        let (a, b) = (char_det(z, &h, &p), char_det(zr, &h, &p));
        let scale = coeffs(z, &p).as_array().iter().map(|x| x.norm()).fold(1.0, f64::max);
        prop_assert!((a - b).norm() <= 1e-10 * scale * scale * (1.0 + h.norm2()).powi(2));
    }
}
