mod common;

use common::{angle, contour_weight, hermitian_strategy, mat_rel_err, p063, random_hermitian, rng};
use jacobi_spectra::params::{coeffs, lambda_of_z};
use jacobi_spectra::spectrum::{
    a0_measure, ainf_measure, disjointness_at, disjointness_experiment, eigenvalues_a0, eigenvalues_ainf,
    eigenvalues_theta, make_degenerate, measure, multiplicity, point_mass, point_mass_a0, point_mass_theta,
    theta_measure, SpectrumError, Warning,
};
use jacobi_spectra::weyl::{m_infinity, m_theta, m_zero};
use jacobi_spectra::{Complex64, Hermitian2, JacobiParams, ThetaParam};
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn closed_form_spectra() {
    let p = p063();
    let a0 = eigenvalues_a0(&p, 20);
    // exactly -(α+β), the lowest eigenvalue
    assert_eq!(a0[0], -p.sum());
    assert!((a0[0] + 0.9).abs() < 1e-15);
    assert!((a0[1] - 0.2).abs() < 1e-15 && (a0[2] - 3.3).abs() < 1e-14);
    assert!(a0.windows(2).all(|w| w[0] < w[1]));
    let ai = eigenvalues_ainf(&p, 10);
    assert_eq!(ai[0], 0.0);
    assert!((ai[1] - 2.9).abs() < 1e-15);
}

#[test]
fn theta_zero_reproduces_a0() {
    let p = p063();
    let closed = eigenvalues_a0(&p, 20);
    let found = eigenvalues_theta(&p, &Hermitian2::zero(), closed[20] + 1.0).unwrap();
    assert!(found.warnings.is_empty());
    assert_eq!(found.value.len(), 21);
    for (a, want) in found.value.iter().zip(&closed) {
        assert!((a.lambda - want).abs() < 1e-9 * want.abs().max(1.0));
        assert_eq!(a.multiplicity, 1);
    }
}

#[test]
fn a0_weights_match_contour_residues() {
    for &(al, be) in &[(0.6, 0.3), (0.25, 0.5), (0.9, 0.8)] {
        let p = JacobiParams::new(al, be).unwrap();
        let lams = eigenvalues_a0(&p, 11);
        for n in 0..=10u32 {
            let atom = point_mass_a0(n, &p).value;
            let gap = (lams[n as usize + 1] - lams[n as usize]).min(if n == 0 { 1.0 } else { lams[n as usize] - lams[n as usize - 1] });
            let want = contour_weight(|l| m_zero(l, &p).unwrap(), atom.lambda, 0.3 * gap);
            let got = atom.weight.matrix();
            assert!(mat_rel_err(&got, &want) < 1e-9, "({al},{be}) n={n}");
            // rank one, PSD, positive trace
            let tr = atom.weight.trace();
            assert!(tr > 0.0);
            assert!(atom.weight.det().abs() <= 1e-10 * tr * tr);
            assert!(atom.weight.eigenvalues()[0] >= -1e-10 * tr);
            atom.validate(&p).unwrap();
        }
    }
}

#[test]
fn a0_weights_psd_up_to_twenty() {
    let p = p063();
    for n in 0..=20 {
        let w = point_mass_a0(n, &p).value.weight;
        assert!(w.trace() > 0.0 && w.eigenvalues()[0] >= -1e-10 * w.trace(), "n={n}");
    }
}

#[test]
fn a0_direction_is_one_c4() {
    let p = p063();
    for n in 0..8u32 {
        let a = point_mass_a0(n, &p).value;
        let c4 = coeffs(c(n as f64, 0.0), &p).c4;
        assert!(angle(&a.eigvec_dirs[0], &[c(1.0, 0.0), c4]) < 1e-12);
        // normalization: unit norm, first component real positive
        let d = a.eigvec_dirs[0];
        assert!(d[0].im == 0.0 && d[0].re > 0.0);
        assert!(((d[0].norm_sqr() + d[1].norm_sqr()) - 1.0).abs() < 1e-15);
    }
}

#[test]
fn near_double_root_warning() {
    let p = JacobiParams::new(0.6, 0.4 + 1e-8).unwrap();
    let o = point_mass_a0(0, &p);
    assert!(o.warnings.contains(&Warning::NearDoubleRoot));
    assert!(o.value.weight.trace().is_finite() && o.value.weight.trace() > 0.0);
    let p = JacobiParams::new(0.6, 0.4).unwrap();
    let w = point_mass_a0(0, &p).value.weight;
    let want = contour_weight(|l| m_zero(l, &p).unwrap(), -1.0, 0.3);
    assert!(mat_rel_err(&w.matrix(), &want) < 1e-9);
}

#[test]
fn random_theta_atoms() {
    let p = p063();
    let mut r = rng(2024);
    for _ in 0..3 {
        let h = random_hermitian(&mut r);
        let th = ThetaParam::Matrix(h);
        let mu = theta_measure(&p, &h, 60.0).unwrap();
        mu.validate().unwrap();
        assert!(mu.atoms.len() >= 5);
        for (i, a) in mu.atoms.iter().enumerate().take(5) {
            assert_eq!(a.multiplicity, 1);
            a.validate(&p).unwrap();
            // corollary direction (1 - Θ₁₂c₂, Θ₁₁c₂ + c₄)
            let z = a.z_roots[1];
            let q = coeffs(z, &p);
            let dir = [c(1.0, 0.0) - h.a12() * q.c2, q.c2 * h.a11() + q.c4];
            assert!(angle(&a.eigvec_dirs[0], &dir) < 1e-6, "atom {i}");
            let (_, vs) = a.weight.eigen();
            assert!(angle(&vs[1], &dir) < 1e-6, "weight range, atom {i}");
            // residue against the contour oracle
            let lo = if i == 0 { a.lambda - 1.0 } else { mu.atoms[i - 1].lambda };
            let hi = mu.atoms[i + 1].lambda;
            let rad = 0.3 * (a.lambda - lo).min(hi - a.lambda);
            let want = contour_weight(|l| m_theta(l, &th, &p).unwrap(), a.lambda, rad);
            assert!(mat_rel_err(&a.weight.matrix(), &want) < 1e-6, "atom {i}");
            assert!((lambda_of_z(z, &p).re - a.lambda).abs() < 1e-10 * a.lambda.abs().max(1.0));
        }
    }
}

#[test]
fn multiplicities() {
    let p = p063();
    let mut r = rng(7);
    for _ in 0..10 {
        let h = random_hermitian(&mut r);
        for a in eigenvalues_theta(&p, &h, 40.0).unwrap().value {
            assert_eq!(multiplicity(a.lambda, &h, &p).unwrap(), 1);
        }
        assert_eq!(multiplicity(1.234_567, &h, &p).unwrap(), 0);
    }
    assert!(matches!(multiplicity(2.9, &Hermitian2::zero(), &p), Err(SpectrumError::OnAInfSpectrum { .. })));
    for &z0 in &[0.35, 0.7, 1.5, 2.3, 3.6] {
        let h = make_degenerate(z0, &p).unwrap();
        let lam = lambda_of_z(c(z0, 0.0), &p).re;
        assert_eq!(multiplicity(lam, &h, &p).unwrap(), 2, "z0={z0}");
        let located = eigenvalues_theta(&p, &h, lam + 5.0).unwrap().value;
        let hit = located.iter().find(|a| (a.lambda - lam).abs() < 1e-8).expect("degenerate root located");
        assert_eq!(hit.multiplicity, 2);
        let atom = point_mass_theta(hit, &h, &p).unwrap();
        assert_eq!(atom.weight_rank(), 2);
        assert_eq!(atom.eigvec_dirs.len(), 2);
        atom.validate(&p).unwrap();
    }
}

#[test]
fn degenerate_construction_errors() {
    let p = p063();
    assert!(matches!(make_degenerate(2.0, &p), Err(SpectrumError::Excluded { .. })));
    assert!(matches!(make_degenerate(0.9, &p), Err(SpectrumError::Excluded { .. })));
    // λ(z₀) at the ground state of A₀ and below it
    assert!(make_degenerate(0.0, &p).is_err());
    assert!(matches!(make_degenerate(-0.05, &p), Err(SpectrumError::BelowGroundState { .. })));
    let h = make_degenerate(1.3, &p).unwrap();
    assert!((h.a12().im).abs() == 0.0);
    let minf = m_infinity(lambda_of_z(c(1.3, 0.0), &p), &p).unwrap();
    assert!((h.matrix() - minf).max_abs() < 1e-12 * minf.max_abs());
}

#[test]
fn friedrichs_and_relations() {
    let p = p063();
    let mu = ainf_measure(&p, 30.0).unwrap();
    mu.validate().unwrap();
    let want = eigenvalues_ainf(&p, 10);
    for (a, w) in mu.atoms.iter().zip(&want) {
        assert!((a.lambda - w).abs() < 1e-12);
        let oracle = contour_weight(|l| m_infinity(l, &p).unwrap(), *w, 0.5);
        assert!(mat_rel_err(&a.weight.matrix(), &oracle) < 1e-6);
    }
    // a relation that is the graph of a matrix has the matrix's eigenvalues
    let h = Hermitian2::real(0.4, -0.3, 1.2);
    let rel = ThetaParam::relation_of(&h);
    let mr = measure(&p, &rel, 30.0).unwrap();
    let mm = theta_measure(&p, &h, 30.0).unwrap();
    assert_eq!(mr.lambdas().len(), mm.lambdas().len());
    for (x, y) in mr.lambdas().iter().zip(mm.lambdas()) {
        assert!((x - y).abs() < 1e-10);
    }
    for a in &mr.atoms {
        assert!(a.weight.eigenvalues()[0] >= -1e-10 * a.weight.trace());
    }
    let single = point_mass(mm.atoms[0].lambda, &ThetaParam::Matrix(h), &p).unwrap();
    assert!(mat_rel_err(&single.weight.matrix(), &mm.atoms[0].weight.matrix()) < 1e-12);
}

#[test]
fn a0_measure_is_consistent() {
    let p = p063();
    let mu = a0_measure(&p, 15);
    mu.validate().unwrap();
    assert_eq!(mu.truncation.count, 16);
    assert_eq!(mu.lambdas(), eigenvalues_a0(&p, 15));
}

#[test]
fn disjointness() {
    let p = p063();
    let mut r = rng(99);
    let theta0 = random_hermitian(&mut r);
    let pos = Hermitian2::real(1.5, 0.3, 0.8);
    let tilde = random_hermitian(&mut r);
    let report = disjointness_experiment(&theta0, &pos, &tilde, &p, 20, 40.0, 5).unwrap();
    assert_eq!(report.samples.len(), 20);
    assert_eq!(report.collisions, 0);
    assert!(report.min_distance > 1e-6);
    assert!(report.samples.iter().all(|s| (-10.0..10.0).contains(&s.t)));
    // Θ₀ + tΘ = Θ̃ at t = 1
    let same = theta0.add(&pos);
    let hit = disjointness_at(&theta0, &pos, &same, &p, &[1.0], 40.0).unwrap();
    assert_eq!(hit.collisions, hit.reference.len());
    assert!(matches!(
        disjointness_at(&theta0, &Hermitian2::real(1.0, 2.0, 1.0), &tilde, &p, &[0.0], 10.0),
        Err(SpectrumError::NotPositiveDefinite)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn located_roots_are_zeros_of_theta_minus_m(h in hermitian_strategy()) {
        let p = p063();
        let found = eigenvalues_theta(&p, &h, 25.0).unwrap();
        let ls: Vec<f64> = found.value.iter().map(|a| a.lambda).collect();
        prop_assert!(ls.windows(2).all(|w| w[1] - w[0] > 1e-10));
        for l in &ls {
            let m = m_infinity(c(*l, 0.0), &p).unwrap();
            let x = h.matrix() - m;
            let sv = x.singular_values();
            prop_assert!(sv[1] <= 1e-8 * sv[0].max(1.0), "λ={l}: {sv:?}");
        }
    }

    #[test]
    fn count_grows_with_theta(t in -5.0f64..5.0) {
        // A_{Θ+δI} ≥ A_Θ in the form sense: eigenvalues move up
        let p = p063();
        let base = Hermitian2::real(t, 0.4, -t * 0.5);
        let up = base.add(&Hermitian2::diag(0.5, 0.5));
        let a = eigenvalues_theta(&p, &base, 20.0).unwrap().value;
        let b = eigenvalues_theta(&p, &up, 20.0).unwrap().value;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(y.lambda >= x.lambda - 1e-9);
        }
    }
}

#[test]
fn random_draws_are_reproducible() {
    let mut a = rng(3);
    let mut b = rng(3);
    assert_eq!(a.random_range(0.0..1.0f64), b.random_range(0.0..1.0f64));
}
