//! Command implementations. Each returns the artifact text; `lib::run` writes it.

use jacobi_spectra::oracle::{oracle_eigenvalues_with, OracleOptions};
use jacobi_spectra::params::coeffs;
use jacobi_spectra::spectrum::{a0_measure, disjointness_experiment, measure as spectral_measure, Atom};
use jacobi_spectra::sprep::trace_f0;
use jacobi_spectra::weyl::{m_infinity_z, m_theta, m_zero_z};
use jacobi_spectra::{AtomicMatrixMeasure, Complex64, Hermitian2, JacobiParams, ThetaParam};
use serde_json::{json, Value};

use crate::artifact::{self, fmt_f64, num};
use crate::grid::{IndexRange, TGrid};
use crate::{Check, Common, CliError, Format, Status, ThetaSpec};

/// Rendered artifact plus the exit status it implies.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub status: Status,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: Status::Ok }
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields is UTF-8"))
}

fn weight_cells(w: &Hermitian2) -> Vec<String> {
    vec![fmt_f64(w.a11()), fmt_f64(w.a12().re), fmt_f64(w.a12().im), fmt_f64(w.a22())]
}

/// `μ^Θ` up to `lam_max`; `zero` uses the closed-form `A₀` atoms `λ_n = (n+1)(n-α-β)`.
fn measure_for(p: &JacobiParams, spec: &ThetaSpec, lam_max: f64) -> Result<AtomicMatrixMeasure, CliError> {
    if *spec != ThetaSpec::Zero {
        return Ok(spectral_measure(p, &spec.resolve(p)?, lam_max)?);
    }
    let s = p.sum();
    let mut n: u32 = 0;
    while f64::from(n + 2) * (f64::from(n + 1) - s) <= lam_max {
        n += 1;
    }
    let mut mu = a0_measure(p, n);
    mu.atoms.retain(|a| a.lambda <= lam_max);
    mu.truncation.count = mu.atoms.len();
    mu.truncation.lam_max = lam_max;
    Ok(mu)
}

pub fn spectrum(common: &Common, n_max: Option<usize>) -> Result<Output, CliError> {
    let p = common.params()?;
    let mut mu = measure_for(&p, &common.theta_or(ThetaSpec::Zero), common.lam_max()?)?;
    if let Some(n) = n_max {
        mu.atoms.truncate(n);
        mu.truncation.count = mu.atoms.len();
    }
    let text = artifact::render(&artifact::spectrum(&mu));
    // re-read what is about to be emitted
    let back = artifact::load_spectrum(&text).map_err(|e| CliError::Numeric(format!("round trip failed: {e}")))?;
    if back.atoms.len() != mu.atoms.len() {
        return Err(CliError::Numeric("round trip lost atoms".into()));
    }
    match common.format.unwrap_or(Format::Json) {
        Format::Json => Ok(Output::ok(text)),
        Format::Csv => {
            let rows = mu.atoms.iter().map(|a| {
                let mut r = vec![fmt_f64(a.lambda), a.multiplicity.to_string()];
                r.extend(weight_cells(&a.weight));
                r
            });
            Ok(Output::ok(csv_text(&["lambda", "multiplicity", "w11", "w12_re", "w12_im", "w22"], rows)?))
        }
    }
}

/// Settings of [`verify`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Empty means every check.
    pub checks: Vec<Check>,
    pub tol_lambda: f64,
    pub tol_identity: f64,
    pub herglotz_samples: usize,
}

struct CheckResult {
    name: &'static str,
    pass: bool,
    value: f64,
    tolerance: f64,
    detail: String,
}

impl CheckResult {
    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.pass,
            "value": num(self.value),
            "tolerance": num(self.tolerance),
            "detail": self.detail,
        })
    }
}

fn expanded(mu: &AtomicMatrixMeasure) -> Vec<f64> {
    mu.atoms.iter().flat_map(|a| std::iter::repeat_n(a.lambda, a.multiplicity as usize)).collect()
}

fn check_dual(mu: &AtomicMatrixMeasure, lam_max: f64, tol: f64) -> Result<CheckResult, CliError> {
    let p = &mu.params;
    let weyl = expanded(mu);
    let lam_min = weyl.first().copied().unwrap_or(0.0).min(-p.sum()) - 1.0;
    let opts = OracleOptions { lam_min: Some(lam_min), ..OracleOptions::default() };
    let shoot = oracle_eigenvalues_with(&mu.theta, p, lam_max, &opts)?.value;
    let delta = if shoot.len() == weyl.len() {
        shoot.iter().zip(&weyl).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(CheckResult {
        name: "dual_pipeline",
        pass: delta <= tol,
        value: delta,
        tolerance: tol,
        detail: format!("{} Weyl eigenvalues, {} oracle eigenvalues", weyl.len(), shoot.len()),
    })
}

fn check_atoms(mu: &AtomicMatrixMeasure) -> CheckResult {
    let detail = match mu.validate() {
        Err(e) => e.to_string(),
        Ok(()) => match artifact::load_spectrum(&artifact::render(&artifact::spectrum(mu))) {
            Err(e) => format!("round trip: {e}"),
            Ok(back) if back.atoms != mu.atoms => "round trip changed the atoms".into(),
            Ok(_) => String::new(),
        },
    };
    CheckResult {
        name: "atom_invariants",
        pass: detail.is_empty(),
        value: mu.atoms.len() as f64,
        tolerance: 0.0,
        detail: if detail.is_empty() { format!("{} atoms valid after round trip", mu.atoms.len()) } else { detail },
    }
}

/// Off-lattice sample points of the `z`-plane.
const Z_SAMPLES: [(f64, f64); 6] = [(0.3, 0.2), (-1.7, 0.5), (2.5, -1.1), (4.2, 3.0), (-0.45, 0.0), (7.3, 0.0)];

fn check_identities(p: &JacobiParams, tol: f64) -> Vec<CheckResult> {
    let mut wronsk: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    for &(x, y) in &Z_SAMPLES {
        let z = Complex64::new(x, y);
        let c = coeffs(z, p);
        let scale = 1.0 + (c.c1 * c.c4).norm() + (c.c2 * c.c3).norm();
        wronsk = wronsk.max((c.c1 * c.c4 + c.c2 * c.c3 - 1.0).norm() / scale);
        let rel = match (m_zero_z(z, p), m_infinity_z(z, p).map(|m| m.inverse(1e-14))) {
            (Ok(m0), Ok(Some(inv))) => (m0 + inv).max_abs() / m0.max_abs().max(1.0),
            _ => f64::INFINITY,
        };
        inverse = inverse.max(rel);
    }
    let n = Z_SAMPLES.len();
    vec![
        CheckResult {
            name: "coefficient_identity",
            pass: wronsk <= tol,
            value: wronsk,
            tolerance: tol,
            detail: format!("c1 c4 + c2 c3 = 1 at {n} points"),
        },
        CheckResult {
            name: "m0_inverse",
            pass: inverse <= tol,
            value: inverse,
            tolerance: tol,
            detail: format!("M0 = -M_inf^-1 at {n} points"),
        },
    ]
}

fn check_herglotz(p: &JacobiParams, theta: &ThetaParam, lam_max: f64, samples: usize, tol: f64) -> CheckResult {
    const HEIGHTS: [f64; 4] = [1e-2, 1e-1, 1.0, 10.0];
    let lo = p.vertex_lambda() - 5.0;
    let hi = lam_max.max(lo + 1.0);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for k in 0..samples {
        // golden-ratio spacing spreads the points without an RNG
        let frac = (k as f64 * 0.618_033_988_749_894_9).fract();
        let lam = Complex64::new(lo + frac * (hi - lo), HEIGHTS[k % HEIGHTS.len()]);
        match m_theta(lam, theta, p) {
            Ok(m) => {
                let [min_eig, _] = m.imag_part().eigenvalues();
                worst = worst.min(min_eig / m.max_abs().max(1.0));
            }
            Err(_) => failures += 1,
        }
    }
    CheckResult {
        name: "herglotz",
        pass: failures == 0 && worst >= -tol,
        value: if worst < 0.0 { -worst } else { 0.0 },
        tolerance: tol,
        detail: format!("{samples} points in the upper half-plane, {failures} evaluation failures"),
    }
}

pub fn verify(common: &Common, opts: &VerifyOptions) -> Result<Output, CliError> {
    for (name, t) in [("--tol-lambda", opts.tol_lambda), ("--tol-identity", opts.tol_identity)] {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!("{name} must be finite and non-negative")));
        }
    }
    let p = common.params()?;
    let spec = common.theta_or(ThetaSpec::Zero);
    let theta = spec.resolve(&p)?;
    let lam_max = common.lam_max()?;
    let all = opts.checks.is_empty();
    let wants = |c: Check| all || opts.checks.contains(&c);

    let mut results = Vec::new();
    let mut max_delta = None;
    if wants(Check::Dual) || wants(Check::Atoms) {
        let mu = measure_for(&p, &spec, lam_max)?;
        if wants(Check::Dual) {
            let r = check_dual(&mu, lam_max, opts.tol_lambda)?;
            max_delta = Some(r.value);
            results.push(r);
        }
        if wants(Check::Atoms) {
            results.push(check_atoms(&mu));
        }
    }
    if wants(Check::Identities) {
        results.extend(check_identities(&p, opts.tol_identity));
    }
    if wants(Check::Herglotz) {
        results.push(check_herglotz(&p, &theta, lam_max, opts.herglotz_samples, opts.tol_identity));
    }
    for r in &results {
        eprintln!("{:<22} {}  {:e} (tolerance {:e})", r.name, if r.pass { "PASS" } else { "FAIL" }, r.value, r.tolerance);
    }
    let pass = results.iter().all(|r| r.pass);
    let mut m = artifact::header("verify", &p);
    m.insert("theta".into(), artifact::theta(&theta));
    m.insert("lam_max".into(), num(lam_max));
    m.insert("checks".into(), results.iter().map(CheckResult::json).collect());
    m.insert("max_delta_lambda".into(), max_delta.map_or(Value::Null, num));
    m.insert("pass".into(), pass.into());
    let status = if pass { Status::Ok } else { Status::ChecksFailed };
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => artifact::render(&Value::Object(m)),
        Format::Csv => csv_text(
            &["name", "pass", "value", "tolerance"],
            results.iter().map(|r| vec![r.name.into(), r.pass.to_string(), fmt_f64(r.value), fmt_f64(r.tolerance)]),
        )?,
    };
    Ok(Output { text, status })
}

pub fn trace(common: &Common, grid: &TGrid) -> Result<Output, CliError> {
    let p = common.params()?;
    let spec = common.theta_or(ThetaSpec::Matrix(Hermitian2::diag(1.0, 1.0)));
    let theta = spec.resolve_matrix(&p)?;
    let ts = grid.points();
    let values = ts.iter().map(|&t| trace_f0(&theta, &p, t)).collect::<Result<Vec<_>, _>>()?;
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_text(
            &["t", "v1_re", "v1_im", "v2_re", "v2_im"],
            ts.iter().zip(&values).map(|(t, v)| {
                vec![fmt_f64(*t), fmt_f64(v[0].re), fmt_f64(v[0].im), fmt_f64(v[1].re), fmt_f64(v[1].im)]
            }),
        )?,
        Format::Json => {
            let mut m = artifact::header("trace", &p);
            m.insert("theta".into(), artifact::theta(&ThetaParam::Matrix(theta)));
            m.insert("t".into(), ts.iter().map(|t| num(*t)).collect());
            m.insert(
                "values".into(),
                values.iter().map(|v| json!([artifact::complex(v[0]), artifact::complex(v[1])])).collect(),
            );
            artifact::render(&Value::Object(m))
        }
    };
    Ok(Output::ok(text))
}

/// Largest `lam_max` tried while looking for enough atoms.
const LAM_CAP: f64 = 1e7;

fn first_atoms(p: &JacobiParams, spec: &ThetaSpec, count: usize, lam_max: f64) -> Result<AtomicMatrixMeasure, CliError> {
    if *spec == ThetaSpec::Zero {
        let n_max = u32::try_from(count.saturating_sub(1)).map_err(|_| CliError::Usage("index too large".into()))?;
        return Ok(a0_measure(p, n_max));
    }
    let theta = spec.resolve(p)?;
    let mut lam = lam_max.max(1.0);
    loop {
        let mu = spectral_measure(p, &theta, lam)?;
        if mu.atoms.len() >= count {
            return Ok(mu);
        }
        if lam >= LAM_CAP {
            return Err(CliError::Numeric(format!("only {} atoms below lambda = {lam}", mu.atoms.len())));
        }
        lam = (4.0 * lam).min(LAM_CAP);
    }
}

pub fn measure(common: &Common, range: &IndexRange) -> Result<Output, CliError> {
    let p = common.params()?;
    let spec = common.theta_or(ThetaSpec::Zero);
    let mu = first_atoms(&p, &spec, range.hi, common.lam_max()?)?;
    let picked: Vec<(usize, &Atom)> = mu.atoms.iter().enumerate().skip(range.lo).take(range.hi - range.lo).collect();
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_text(
            &["n", "lambda", "multiplicity", "w11", "w12_re", "w12_im", "w22", "det"],
            picked.iter().map(|(n, a)| {
                let mut r = vec![n.to_string(), fmt_f64(a.lambda), a.multiplicity.to_string()];
                r.extend(weight_cells(&a.weight));
                r.push(fmt_f64(a.weight.det()));
                r
            }),
        )?,
        Format::Json => {
            let mut m = artifact::header("measure", &p);
            m.insert("theta".into(), artifact::theta(&mu.theta));
            m.insert(
                "atoms".into(),
                picked
                    .iter()
                    .map(|(n, a)| {
                        let mut v = artifact::atom(a);
                        v["n"] = (*n).into();
                        v["det"] = num(a.weight.det());
                        v
                    })
                    .collect(),
            );
            artifact::render(&Value::Object(m))
        }
    };
    Ok(Output::ok(text))
}

pub fn disjoint(
    common: &Common,
    direction: &ThetaSpec,
    tilde: &ThetaSpec,
    samples: usize,
    seed: u64,
) -> Result<Output, CliError> {
    let p = common.params()?;
    let theta0 = common.theta_or(ThetaSpec::Zero).resolve_matrix(&p)?;
    let dir = direction.resolve_matrix(&p)?;
    let tilde = tilde.resolve_matrix(&p)?;
    let lam_max = common.lam_max()?;
    let rep = disjointness_experiment(&theta0, &dir, &tilde, &p, samples, lam_max, seed)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Csv => csv_text(
            &["t", "eigenvalue_count", "min_distance", "collisions"],
            rep.samples.iter().map(|s| {
                vec![fmt_f64(s.t), s.eigenvalue_count.to_string(), fmt_f64(s.min_distance), s.collisions.to_string()]
            }),
        )?,
        Format::Json => {
            let mut m = artifact::header("disjoint", &p);
            m.insert("theta0".into(), artifact::hermitian(&theta0));
            m.insert("direction".into(), artifact::hermitian(&dir));
            m.insert("theta_tilde".into(), artifact::hermitian(&tilde));
            m.insert("lam_max".into(), num(lam_max));
            m.insert("seed".into(), seed.into());
            m.insert("reference".into(), rep.reference.iter().map(|x| num(*x)).collect());
            m.insert(
                "samples".into(),
                rep.samples
                    .iter()
                    .map(|s| {
                        json!({
                            "t": num(s.t),
                            "eigenvalue_count": s.eigenvalue_count,
                            "min_distance": num(s.min_distance),
                            "collisions": s.collisions,
                        })
                    })
                    .collect(),
            );
            m.insert("collisions".into(), rep.collisions.into());
            m.insert("min_distance".into(), num(rep.min_distance));
            m.insert("tolerance".into(), num(rep.tolerance));
            artifact::render(&Value::Object(m))
        }
    };
    Ok(Output::ok(text))
}
