mod common;

use common::{gauss_jacobi, libm_gamma};
use jacobi_spectra::specfun::{
    gamma, gamma_real, gamma_residue, hyp2f1, jacobi_p, jacobi_p_deriv, jacobi_poly, jacobi_poly_deriv, rgamma,
    sin_pi_c, SpecFunError,
};
use jacobi_spectra::{Complex64, JacobiParams};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn gamma_examples() {
    assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
    let sqrt_pi = 1.772_453_850_905_516;
    assert!((gamma(c(0.5, 0.0)).unwrap().re - sqrt_pi).abs() < 1e-14 * sqrt_pi);
    let g = gamma(c(-0.3, 0.0)).unwrap();
    assert!(g.re < 0.0 && g.im == 0.0);
    // reflection: Γ(-0.3) = π / (sin(-0.3π) Γ(1.3))
    let want = PI / ((-0.3 * PI).sin() * libm_gamma(1.3));
    assert!((g.re - want).abs() < 1e-13 * want.abs());
}

#[test]
fn gamma_matches_libm_on_the_real_line() {
    for k in 1..=200 {
        let x = 0.173 * k as f64;
        let want = libm_gamma(x);
        let got = gamma_real(x).unwrap();
        assert!((got - want).abs() <= 2e-13 * want.abs(), "x={x}: {got} vs {want}");
    }
}

#[test]
fn gamma_poles_and_residues() {
    for n in 0..6 {
        assert_eq!(gamma(c(-(n as f64), 0.0)), Err(SpecFunError::PoleAt(-n)));
        assert_eq!(rgamma(c(-(n as f64), 0.0)), c(0.0, 0.0));
    }
    assert_eq!(gamma_residue(0), 1.0);
    assert_eq!(gamma_residue(1), -1.0);
    assert!((gamma_residue(4) - 1.0 / 24.0).abs() < 1e-17);
    // ε Γ(-n + ε) → (-1)ⁿ/n!
    for n in 0..8u32 {
        let eps = 1e-7;
        let num = gamma(c(-(n as f64) + eps, 0.0)).unwrap().re * eps;
        let r = gamma_residue(n);
        assert!((num - r).abs() < 1e-5 * r.abs(), "n={n}");
    }
}

#[test]
fn hyp2f1_examples() {
    assert_eq!(hyp2f1(0.0, 1.9, 1.6, 0.3).unwrap(), 1.0);
    assert_eq!(hyp2f1(0.7, -1.2, 2.3, 0.0).unwrap(), 1.0);
    // brute-force 200-term partial sum
    let (a, b, cc, x) = (-0.6, 1.3, 0.4, 0.25);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..200 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((cc + k) * (k + 1.0)) * x;
        sum += term;
    }
    let got = hyp2f1(a, b, cc, x).unwrap();
    assert!((got - sum).abs() < 1e-13 * sum.abs());
    assert_eq!(hyp2f1(0.5, 0.5, -2.0, 0.3), Err(SpecFunError::ParameterPole));
    assert_eq!(hyp2f1(0.5, 0.5, 1.5, 1.0), Err(SpecFunError::DomainError));
}

#[test]
fn hyp2f1_transformed_branch() {
    // F(1/2, 1/2; 3/2; x²) = asin(x)/x and F(1, 1; 2; x) = -ln(1-x)/x beyond x = 1/2
    for x in [0.55f64, 0.7, 0.85, 0.95, 0.99] {
        let want = x.sqrt().asin() / x.sqrt();
        let got = hyp2f1(0.5, 0.5, 1.5, x).unwrap();
        assert!((got - want).abs() < 1e-10 * want, "x={x}");
        let want = -(1.0 - x).ln() / x;
        let got = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
        assert!((got - want).abs() < 1e-10 * want, "x={x}");
    }
    // generic non-integer c-a-b: compare the 1-x connection against a long direct sum
    let (a, b, cc, x) = (0.3, 0.45, 1.6, 0.8);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..4000 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((cc + k) * (k + 1.0)) * x;
        sum += term;
    }
    let got = hyp2f1(a, b, cc, x).unwrap();
    assert!((got - sum).abs() < 1e-10 * sum.abs());
}

#[test]
fn jacobi_examples() {
    let p = JacobiParams::new(0.6, 0.3).unwrap();
    for &x in &[-1.0, -0.3, 0.0, 0.8, 1.0] {
        assert_eq!(jacobi_poly(0, &p, x), 1.0);
    }
    assert!((jacobi_poly(1, &p, 1.0) - 1.6).abs() < 1e-15);
    // P_n(1) = binom(n+α, n)
    for n in 0..12u32 {
        let want: f64 = (1..=n).map(|k| (k as f64 + 0.6) / k as f64).product();
        assert!((jacobi_poly(n, &p, 1.0) - want).abs() < 1e-13 * want);
    }
}

#[test]
fn jacobi_ode_residual() {
    let p = JacobiParams::new(0.6, 0.3).unwrap();
    let (a, b) = (0.6, 0.3);
    let n = 3u32;
    let lam = 3.0 * (3.0 + a + b + 1.0);
    for k in 0..19 {
        let x = -0.9 + 0.1 * k as f64;
        let h = 1e-4;
        let d1 = jacobi_poly_deriv(n, &p, x);
        let d2 = (jacobi_poly_deriv(n, &p, x + h) - jacobi_poly_deriv(n, &p, x - h)) / (2.0 * h);
        let ell = -((1.0 - x * x) * d2 + (b - a - (a + b + 2.0) * x) * d1);
        let r = ell - lam * jacobi_poly(n, &p, x);
        assert!(r.abs() < 1e-8, "x={x}: residual {r}");
    }
}

#[test]
fn jacobi_orthogonality() {
    for &(a, b) in &[(0.6, 0.3), (0.1, 0.9), (0.95, 0.05)] {
        let (xs, ws) = gauss_jacobi(24, a, b);
        for m in 0..=8u32 {
            for n in 0..=m {
                let ip: f64 = xs.iter().zip(&ws).map(|(&x, &w)| w * jacobi_p(m, a, b, x) * jacobi_p(n, a, b, x)).sum();
                if m != n {
                    assert!(ip.abs() < 1e-8, "({a},{b}) m={m} n={n}: {ip}");
                } else {
                    let nf = n as f64;
                    let h = 2f64.powf(a + b + 1.0) / (2.0 * nf + a + b + 1.0) * libm_gamma(nf + a + 1.0)
                        * libm_gamma(nf + b + 1.0)
                        / (libm_gamma(nf + a + b + 1.0) * libm_gamma(nf + 1.0));
                    assert!((ip - h).abs() < 1e-10 * h, "norm n={n}");
                }
            }
        }
    }
}

#[test]
fn jacobi_derivative_matches_differences() {
    for n in 1..8u32 {
        for &x in &[-0.7, 0.1, 0.6] {
            let h = 1e-6;
            let fd = (jacobi_p(n, 0.4, 0.7, x + h) - jacobi_p(n, 0.4, 0.7, x - h)) / (2.0 * h);
            assert!((fd - jacobi_p_deriv(n, 0.4, 0.7, x)).abs() < 1e-6 * fd.abs().max(1.0));
        }
    }
}

proptest! {
    #[test]
    fn gamma_reflection(re in -20.0f64..20.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let prod = gamma(z).unwrap() * gamma(c(1.0, 0.0) - z).unwrap() * sin_pi_c(z) / PI;
        prop_assert!((prod - 1.0).norm() < 1e-10, "z={z}: {prod}");
    }

    #[test]
    fn gamma_recurrence(re in -15.0f64..15.0, im in -10.0f64..10.0) {
        let z = c(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "z={z}");
    }

    #[test]
    fn gamma_conjugation(re in -10.0f64..10.0, im in 0.01f64..10.0) {
        let z = c(re, im);
        let g = gamma(z).unwrap();
        prop_assert!((gamma(z.conj()).unwrap() - g.conj()).norm() <= 1e-14 * g.norm());
    }

    #[test]
    fn hyp2f1_terminating_is_exact(m in 0u32..12, b in -3.0f64..3.0, cc in 0.1f64..4.0, x in 0.0f64..0.999) {
        let a = -(m as f64);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut abs_sum = 1.0;
        for k in 0..m {
            let k = k as f64;
            term *= (a + k) * (b + k) / ((cc + k) * (k + 1.0)) * x;
            sum += term;
            abs_sum += term.abs();
        }
        let got = hyp2f1(a, b, cc, x).unwrap();
        prop_assert!((got - sum).abs() <= 1e-13 * abs_sum, "got {got}, want {sum}");
    }
}
