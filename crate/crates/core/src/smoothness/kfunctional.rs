#[allow(unused_imports)]
use num_traits::Float;

use super::{discrete_avg_deviation, modulus, tau_modulus, LocalGrid};
use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, GridSet, RealFunction};
use crate::operators::{bandlimited_project, panels_for, BandlimitedFunction, SpectralGrid};
use crate::quadrature::QuadratureSpec;

/// Parameters of one smoothness evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessParams {
    /// Averaging order of `f_{δ,r}`.
    pub r: usize,
    /// Smoothness order; integer for moduli, any positive real for the
    /// fractional K-functional.
    pub s: f64,
    pub p: f64,
    pub delta: f64,
    pub h_grid_size: usize,
}

impl SmoothnessParams {
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::invalid("r", "must be at least 1"));
        }
        if !(self.s > 0.0) {
            return Err(Error::invalid("s", "must be positive"));
        }
        if !(self.p >= 1.0 && self.p.is_finite()) {
            return Err(Error::invalid("p", "need 1 <= p < ∞"));
        }
        if !(self.delta >= 0.0) {
            return Err(Error::invalid("delta", "must be non-negative"));
        }
        Ok(())
    }

    /// `s <= 2r`, required by the direct and inverse theorems.
    pub fn check_theorem_range(&self) -> Result<()> {
        self.validate()?;
        if self.s > 2.0 * self.r as f64 {
            return Err(Error::invalid(
                "s",
                alloc::format!("s = {} exceeds 2r = {} (need s <= 2r)", self.s, 2 * self.r),
            ));
        }
        Ok(())
    }

    /// `s` as a difference order.
    pub fn integer_s(&self) -> Result<usize> {
        if self.s.fract() == 0.0 && self.s >= 1.0 {
            Ok(self.s as usize)
        } else {
            Err(Error::invalid(
                "s",
                alloc::format!("{} is not a positive integer", self.s),
            ))
        }
    }
}

/// Two-term K-functional value `‖f - g‖_p + σ^{-s}|g|` with its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realization {
    pub value: f64,
    pub approximation: f64,
    pub smoothness: f64,
}

fn project(f: &RealFunction, sigma: f64) -> Result<BandlimitedFunction> {
    bandlimited_project(f, sigma, &SpectralGrid::for_function(f, sigma))
}

fn realize(
    f: &RealFunction,
    sigma: f64,
    p: f64,
    quad: &QuadratureSpec,
    seminorm: impl Fn(&BandlimitedFunction) -> f64,
    s: f64,
) -> Result<Realization> {
    let g = project(f, sigma)?;
    let approximation = lp_norm(&f.sub(&g.to_real_function()), p, &panels_for(sigma, quad))?;
    let smoothness = sigma.powf(-s) * seminorm(&g);
    Ok(Realization {
        value: approximation + smoothness,
        approximation,
        smoothness,
    })
}

/// `‖f - g_σ‖_p + σ^{-s}|g_σ|_{W_p^s}` with `g_σ` the projection onto `|ξ| <= σ`.
pub fn k_realization(f: &RealFunction, s: usize, p: f64, sigma: f64, quad: &QuadratureSpec) -> Result<Realization> {
    realize(f, sigma, p, quad, |g| g.sobolev_seminorm(s, p), s as f64)
}

/// `‖f - g_σ‖_p + σ^{-s}‖(-Δ)^{s/2} g_σ‖_p`.
pub fn frac_k(f: &RealFunction, s: f64, p: f64, sigma: f64, quad: &QuadratureSpec) -> Result<Realization> {
    if !(s > 0.0) {
        return Err(Error::invalid("s", "must be positive"));
    }
    realize(f, sigma, p, quad, |g| g.fractional_seminorm(s, p), s)
}

/// The computable surrogate `‖f_{γ/σ,r} - f‖_{ℓ_p(X_σ)} + ω_s(f, σ⁻¹)_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Semidiscrete {
    pub value: f64,
    pub discrete: f64,
    pub omega: f64,
}

pub fn semidiscrete_k(
    f: &RealFunction,
    grid: &GridSet,
    r: usize,
    s: usize,
    p: f64,
    quad: &QuadratureSpec,
    h_grid_size: usize,
) -> Result<Semidiscrete> {
    if s > 2 * r {
        return Err(Error::invalid(
            "s",
            alloc::format!("s = {s} exceeds 2r = {} (need s <= 2r)", 2 * r),
        ));
    }
    let sigma = grid.sigma();
    let discrete = discrete_avg_deviation(f, grid, grid.gamma() / sigma, r, p, quad)?;
    let omega = modulus(f, s, 1.0 / sigma, p, quad, h_grid_size)?;
    Ok(Semidiscrete {
        value: discrete + omega,
        discrete,
        omega,
    })
}

/// Every smoothness quantity of one `(f, σ, r, s, p)` tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessReport {
    pub omega_s: f64,
    pub tau_s: Option<f64>,
    pub discrete_avg_dev: f64,
    pub k_realization: f64,
    pub semidiscrete_k: f64,
    pub frac_k: Option<f64>,
}

/// `params.delta` is the averaging scale of the discrete term; the moduli
/// and realizations are taken at `δ = σ⁻¹`. The τ-modulus is included for
/// compactly supported `f` only.
pub fn smoothness_report(
    f: &RealFunction,
    grid: &GridSet,
    params: &SmoothnessParams,
    quad: &QuadratureSpec,
) -> Result<SmoothnessReport> {
    params.validate()?;
    let s = params.integer_s()?;
    let sigma = grid.sigma();
    let omega_s = modulus(f, s, 1.0 / sigma, params.p, quad, params.h_grid_size)?;
    let discrete_avg_dev = discrete_avg_deviation(f, grid, params.delta, params.r, params.p, quad)?;
    let tau_s = if f.is_compact() {
        Some(tau_modulus(f, s, 1.0 / sigma, params.p, quad, &LocalGrid::default())?)
    } else {
        None
    };
    let k = k_realization(f, s, params.p, sigma, quad)?;
    let frac = frac_k(f, params.s, params.p, sigma, quad)?;
    Ok(SmoothnessReport {
        omega_s,
        tau_s,
        discrete_avg_dev,
        k_realization: k.value,
        semidiscrete_k: discrete_avg_dev + omega_s,
        frac_k: Some(frac.value),
    })
}
