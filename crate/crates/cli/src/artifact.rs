//! Deterministic JSON artifacts.
//!
//! Objects are emitted with sorted keys and every float is written with 17
//! significant digits, so equal inputs give byte-identical files and every
//! `f64` survives a round trip. Non-finite floats become `null`.

use std::str::FromStr;

use jacobi_spectra::spectrum::Atom;
use jacobi_spectra::{AtomicMatrixMeasure, Complex64, Hermitian2, JacobiParams, ThetaParam, Warning};
use serde_json::{json, Map, Number, Value};

use crate::error::CliError;

pub const SCHEMA: u64 = 1;

/// Float rendered with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&fmt_f64(x)).expect("formatted float is valid JSON"))
}

pub fn complex(c: Complex64) -> Value {
    json!({ "re": num(c.re), "im": num(c.im) })
}

pub fn hermitian(h: &Hermitian2) -> Value {
    json!({ "a11": num(h.a11()), "a12": complex(h.a12()), "a22": num(h.a22()) })
}

fn matrix(m: &jacobi_spectra::Matrix2) -> Value {
    Value::Array(m.entries().iter().map(|c| complex(*c)).collect())
}

pub fn theta(t: &ThetaParam) -> Value {
    match t {
        ThetaParam::Matrix(h) => json!({ "kind": "matrix", "matrix": hermitian(h) }),
        ThetaParam::Relation { a, b } => json!({ "kind": "relation", "a": matrix(a), "b": matrix(b) }),
        ThetaParam::Friedrichs => json!({ "kind": "friedrichs" }),
    }
}

pub fn warning(w: &Warning) -> Value {
    match w {
        Warning::GridTooCoarse { lambda_lo, lambda_hi } => {
            json!({ "kind": "grid_too_coarse", "lambda_lo": num(*lambda_lo), "lambda_hi": num(*lambda_hi) })
        }
        Warning::NearDoubleRoot => json!({ "kind": "near_double_root" }),
    }
}

pub fn atom(a: &Atom) -> Value {
    json!({
        "lambda": num(a.lambda),
        "z_roots": a.z_roots.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
        "weight": hermitian(&a.weight),
        "eigvec_dirs": a.eigvec_dirs.iter()
            .map(|v| v.iter().map(|c| complex(*c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "multiplicity": a.multiplicity,
    })
}

/// Header shared by every artifact.
pub fn header(command: &str, p: &JacobiParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    m.insert("alpha".into(), num(p.alpha()));
    m.insert("beta".into(), num(p.beta()));
    m
}

pub fn spectrum(mu: &AtomicMatrixMeasure) -> Value {
    let mut m = header("spectrum", &mu.params);
    m.insert("theta".into(), theta(&mu.theta));
    m.insert("atoms".into(), mu.atoms.iter().map(atom).collect());
    m.insert(
        "truncation".into(),
        json!({ "count": mu.truncation.count, "lam_max": num(mu.truncation.lam_max) }),
    );
    m.insert("warnings".into(), mu.warnings.iter().map(warning).collect());
    Value::Object(m)
}

/// Pretty-printed text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn bad(what: &str) -> CliError {
    CliError::Usage(format!("malformed artifact: {what}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| bad(key))
}

fn f(v: &Value, key: &str) -> Result<f64, CliError> {
    get(v, key)?.as_f64().ok_or_else(|| bad(key))
}

fn parse_complex(v: &Value) -> Result<Complex64, CliError> {
    Ok(Complex64::new(f(v, "re")?, f(v, "im")?))
}

fn parse_hermitian(v: &Value) -> Result<Hermitian2, CliError> {
    Ok(Hermitian2::new(f(v, "a11")?, parse_complex(get(v, "a12")?)?, f(v, "a22")?))
}

fn parse_atom(v: &Value) -> Result<Atom, CliError> {
    let z = get(v, "z_roots")?.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("z_roots"))?;
    let dirs = get(v, "eigvec_dirs")?.as_array().ok_or_else(|| bad("eigvec_dirs"))?;
    let dirs = dirs
        .iter()
        .map(|d| {
            let d = d.as_array().filter(|d| d.len() == 2).ok_or_else(|| bad("eigvec_dirs"))?;
            Ok([parse_complex(&d[0])?, parse_complex(&d[1])?])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mult = get(v, "multiplicity")?.as_u64().filter(|m| *m <= 2).ok_or_else(|| bad("multiplicity"))?;
    Ok(Atom {
        lambda: f(v, "lambda")?,
        z_roots: [parse_complex(&z[0])?, parse_complex(&z[1])?],
        weight: parse_hermitian(get(v, "weight")?)?,
        eigvec_dirs: dirs,
        multiplicity: mult as u8,
    })
}

/// A spectrum artifact read back from disk.
#[derive(Debug, Clone)]
pub struct LoadedSpectrum {
    pub params: JacobiParams,
    pub atoms: Vec<Atom>,
}

/// Parses a spectrum artifact and re-validates every atom.
pub fn load_spectrum(text: &str) -> Result<LoadedSpectrum, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed artifact: {e}")))?;
    if get(&v, "schema")?.as_u64() != Some(SCHEMA) {
        return Err(bad("unsupported schema"));
    }
    let params = JacobiParams::new(f(&v, "alpha")?, f(&v, "beta")?)?;
    let atoms = get(&v, "atoms")?
        .as_array()
        .ok_or_else(|| bad("atoms"))?
        .iter()
        .map(parse_atom)
        .collect::<Result<Vec<_>, _>>()?;
    for a in &atoms {
        a.validate(&params).map_err(|e| CliError::Usage(format!("atom at lambda = {}: {e}", a.lambda)))?;
    }
    Ok(LoadedSpectrum { params, atoms })
}
