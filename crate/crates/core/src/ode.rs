//! Dormand–Prince 5(4) with step-size control and exact stopping points.

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum OdeFailure {
    StepUnderflow(f64),
    TooManySteps(f64),
}

const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
// 5th minus 4th order weights, last entry for the FSAL stage
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn axpy<const N: usize>(y: &[f64; N], h: f64, ks: &[[f64; N]], coef: &[f64]) -> [f64; N] {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(coef) {
        if c != 0.0 {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

impl Dopri5 {
    /// Integrates `y' = f(t, y)` from `t0` through every point of `stops`
    /// (monotone, all on one side of `t0`), landing on each exactly.
    /// `record(t, y)` sees every accepted step.
    pub(crate) fn run<const N: usize>(
        &self,
        mut f: impl FnMut(f64, &[f64; N]) -> [f64; N],
        t0: f64,
        y0: [f64; N],
        stops: &[f64],
        mut record: impl FnMut(f64, &[f64; N]),
    ) -> Result<[f64; N], OdeFailure> {
        let Some(&t_end) = stops.last() else {
            return Ok(y0);
        };
        let dir = if t_end >= t0 { 1.0 } else { -1.0 };
        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        let mut h = 1e-3 * dir;
        let mut next = 0;
        let mut steps = 0;
        record(t, &y);
        while next < stops.len() {
            let target = stops[next];
            if (target - t) * dir <= 0.0 {
                next += 1;
                continue;
            }
            steps += 1;
            if steps > self.max_steps {
                return Err(OdeFailure::TooManySteps(t));
            }
            let mut hit = false;
            let h_free = h;
            if (t + h - target) * dir >= 0.0 {
                h = target - t;
                hit = true;
            }
            // a truncated step onto a stop may be arbitrarily short
            if !hit && h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(OdeFailure::StepUnderflow(t));
            }
            let mut ks = [[0.0; N]; 7];
            ks[0] = k1;
            ks[1] = f(t + C[0] * h, &axpy(&y, h, &ks[..1], &A2));
            ks[2] = f(t + C[1] * h, &axpy(&y, h, &ks[..2], &A3));
            ks[3] = f(t + C[2] * h, &axpy(&y, h, &ks[..3], &A4));
            ks[4] = f(t + C[3] * h, &axpy(&y, h, &ks[..4], &A5));
            ks[5] = f(t + C[4] * h, &axpy(&y, h, &ks[..5], &A6));
            let y_new = axpy(&y, h, &ks[..6], &B);
            let t_new = if hit { target } else { t + h };
            ks[6] = f(t_new, &y_new);
            let mut err = 0.0;
            for i in 0..N {
                let mut e = 0.0;
                for (k, &c) in ks.iter().zip(&E) {
                    e += c * k[i];
                }
                let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                err += (h * e / sc).powi(2);
            }
            let err = (err / N as f64).sqrt();
            if err <= 1.0 {
                t = t_new;
                y = y_new;
                k1 = ks[6];
                record(t, &y);
                if hit {
                    next += 1;
                }
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            let fac = if err > 1.0 { fac.min(1.0) } else { fac };
            h = if hit && err <= 1.0 { h_free } else { h * fac };
        }
        Ok(y)
    }
}
