//! Jacobi polynomials by the three-term recurrence.

use crate::params::JacobiParams;

/// `P_n^{(a,b)}(x)` for general `a, b > -1`.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    let ab = a + b;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let lhs = 2.0 * k * (k + ab) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c1 * p1 - c2 * p0) / lhs;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Derivative of `P_n^{(a,b)}`: `(n+a+b+1)/2 · P_{n-1}^{(a+1,b+1)}`.
pub fn jacobi_p_deriv(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + a + b + 1.0) * jacobi_p(n - 1, a + 1.0, b + 1.0, x)
}

/// `P_n^{(α,β)}(x)` for the operator's parameters.
pub fn jacobi_poly(n: u32, p: &JacobiParams, x: f64) -> f64 {
    jacobi_p(n, p.alpha(), p.beta(), x)
}

/// `d/dx P_n^{(α,β)}(x)`.
pub fn jacobi_poly_deriv(n: u32, p: &JacobiParams, x: f64) -> f64 {
    jacobi_p_deriv(n, p.alpha(), p.beta(), x)
}
