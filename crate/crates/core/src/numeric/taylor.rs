//! Truncated Taylor-series arithmetic, used to differentiate closed-form test
//! functions exactly instead of through finite differences.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Coefficients of `1/a(t)` up to degree `a.len() - 1`. Requires `a[0] != 0`.
pub fn recip(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut b = vec![0.0; n];
    b[0] = 1.0 / a[0];
    for k in 1..n {
        let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
        b[k] = -s / a[0];
    }
    b
}

/// Coefficients of `exp(a(t))`.
pub fn exp(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut b = vec![0.0; n];
    b[0] = a[0].exp();
    for k in 1..n {
        let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
        b[k] = s / k as f64;
    }
    b
}

/// Product of two series truncated to the shorter length.
pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
}

/// Turns Taylor coefficients into derivatives: `f^{(k)} = k! c_k`.
pub fn derivatives(coeffs: &[f64]) -> Vec<f64> {
    let mut fact = 1.0;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                fact *= k as f64;
            }
            c * fact
        })
        .collect()
}
