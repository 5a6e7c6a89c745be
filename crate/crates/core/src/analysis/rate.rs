use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Minimum number of ladder rungs for a fit.
pub const MIN_RUNGS: usize = 4;

/// The standard dyadic ladder `8, 16, …, 256`.
pub fn default_ladder() -> Vec<f64> {
    dyadic_ladder(8.0, 256.0)
}

/// Powers of two from `lo` up to and including `hi`.
pub fn dyadic_ladder(lo: f64, hi: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut s = lo;
    while s <= hi * (1.0 + 1e-12) {
        out.push(s);
        s *= 2.0;
    }
    out
}

/// A least-squares power law `value ≈ A σ^{-α}` over a ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    pub name: String,
    pub sigmas: Vec<f64>,
    pub values: Vec<f64>,
    pub fitted_alpha: f64,
    /// `ln A` of the fitted line.
    pub intercept: f64,
    /// `max_i |value_i / fit(σ_i) - 1|`.
    pub fit_residual: f64,
}

impl RateTable {
    pub fn fitted(&self, sigma: f64) -> f64 {
        (self.intercept - self.fitted_alpha * sigma.ln()).exp()
    }
}

/// Fits `ln value` against `ln σ`; `fitted_alpha` is minus the slope.
pub fn rate_fit(name: impl Into<String>, sigmas: &[f64], values: &[f64]) -> Result<RateTable> {
    if sigmas.len() != values.len() {
        return Err(Error::invalid("values", "one value per ladder rung"));
    }
    if sigmas.len() < MIN_RUNGS {
        return Err(Error::invalid(
            "ladder",
            alloc::format!("need at least {MIN_RUNGS} rungs"),
        ));
    }
    if sigmas.windows(2).any(|w| !(w[1] > w[0])) || !(sigmas[0] > 0.0) {
        return Err(Error::invalid("ladder", "must be positive and strictly increasing"));
    }
    if let Some((&sigma, &value)) = sigmas.iter().zip(values).find(|(_, v)| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateFit { sigma, value });
    }
    let n = sigmas.len() as f64;
    let xs: Vec<f64> = sigmas.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let fit_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| ((y - intercept - slope * x).exp() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(RateTable {
        name: name.into(),
        sigmas: sigmas.to_vec(),
        values: values.to_vec(),
        fitted_alpha: -slope,
        intercept,
        fit_residual,
    })
}
