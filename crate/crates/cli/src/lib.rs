//! Command-line front end for `jacobi-spectra`.
//!
//! Every command writes one artifact (JSON or CSV) to `--output` or standard
//! output. Exit codes: 0 success, 1 a verification check failed, 2 invalid
//! input, 3 numerical non-convergence.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobi_spectra::JacobiParams;

pub mod artifact;
pub mod commands;
pub mod error;
pub mod grid;
pub mod theta;

pub use error::CliError;
pub use theta::ThetaSpec;

#[derive(Debug, Parser)]
#[command(name = "jacobi-spectra", version, about = "Spectra of self-adjoint extensions of the Jacobi operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Weyl-function eigenvalues against the shooting oracle.
    Dual,
    /// Atom invariants and the JSON round trip.
    Atoms,
    /// `c₁c₄ + c₂c₃ = 1` and `M₀ = -M∞⁻¹` at sample points.
    Identities,
    /// `Im M_Θ ⪰ 0` on the upper half-plane.
    Herglotz,
}

/// Options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 0.6)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.3)]
    pub beta: f64,
    /// zero | friedrichs | degenerate:z0=V | matrix:A,B_RE,B_IM,D | relation:16 reals
    #[arg(long)]
    pub theta: Option<ThetaSpec>,
    /// Upper end of the computed spectrum.
    #[arg(long, default_value_t = 50.0)]
    pub lam_max: f64,
    /// Artifact path; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl Common {
    pub fn params(&self) -> Result<JacobiParams, CliError> {
        Ok(JacobiParams::new(self.alpha, self.beta)?)
    }

    pub fn theta_or(&self, default: ThetaSpec) -> ThetaSpec {
        self.theta.unwrap_or(default)
    }

    pub fn lam_max(&self) -> Result<f64, CliError> {
        if self.lam_max.is_finite() {
            Ok(self.lam_max)
        } else {
            Err(CliError::Usage("--lam-max must be finite".into()))
        }
    }
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Eigenvalues, point masses, eigenvector directions and multiplicities.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Keep at most this many atoms.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Cross-check the Weyl pipeline against the shooting oracle and invariants.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Checks to run; all when absent.
        #[arg(long, value_enum)]
        check: Vec<Check>,
        /// Largest admissible eigenvalue disagreement between pipelines.
        #[arg(long, default_value_t = 1e-6)]
        tol_lambda: f64,
        /// Tolerance of the coefficient and Weyl-function identities.
        #[arg(long, default_value_t = 1e-10)]
        tol_identity: f64,
        /// Number of upper half-plane sample points.
        #[arg(long, default_value_t = 64)]
        herglotz_samples: usize,
    },
    /// Trace of the ground state `(V_Θ f₀)(t)` on a grid of `t`.
    Trace {
        #[command(flatten)]
        common: Common,
        /// START:END:STEP, inclusive of END.
        #[arg(long, allow_hyphen_values = true, default_value = "-0.5:10:0.1")]
        t_grid: grid::TGrid,
    },
    /// Point masses of atoms selected by index.
    Measure {
        #[command(flatten)]
        common: Common,
        /// Atom indices: N, A..B or A..=B.
        #[arg(long, default_value = "0..10")]
        n: grid::IndexRange,
    },
    /// Sampled mutual singularity of `μ^{Θ₀+tΘ}` and `μ^{Θ̃}`.
    Disjoint {
        #[command(flatten)]
        common: Common,
        /// Positive definite direction `Θ`.
        #[arg(long, default_value = "matrix:1,0,0,1")]
        direction: ThetaSpec,
        /// Reference extension `Θ̃`.
        #[arg(long, default_value = "matrix:0,1,0,0")]
        theta_tilde: ThetaSpec,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ChecksFailed,
}

/// Runs a command and writes its artifact.
pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let (common, out) = match &cli.command {
        Command::Spectrum { common, n_max } => (common, commands::spectrum(common, *n_max)?),
        Command::Verify { common, check, tol_lambda, tol_identity, herglotz_samples } => {
            let opts = commands::VerifyOptions {
                checks: check.clone(),
                tol_lambda: *tol_lambda,
                tol_identity: *tol_identity,
                herglotz_samples: *herglotz_samples,
            };
            (common, commands::verify(common, &opts)?)
        }
        Command::Trace { common, t_grid } => (common, commands::trace(common, t_grid)?),
        Command::Measure { common, n } => (common, commands::measure(common, n)?),
        Command::Disjoint { common, direction, theta_tilde, samples, seed } => {
            (common, commands::disjoint(common, direction, theta_tilde, *samples, *seed)?)
        }
    };
    match &common.output {
        Some(path) => fs::write(path, out.text.as_bytes())?,
        None => std::io::stdout().lock().write_all(out.text.as_bytes())?,
    }
    Ok(out.status)
}
