use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, Interval, RealFunction};
use crate::numeric::binomial;
use crate::quadrature::QuadratureSpec;

/// Default number of log-spaced steps in the discretized sup over `h`.
pub const DEFAULT_H_GRID: usize = 64;
/// Steps per octave of the log-spaced `h` grid.
pub const STEPS_PER_OCTAVE: usize = 8;

/// `Δ_h^r f(x) = Σ_ν C(r,ν) (-1)^ν f(x + (r-ν)h)`.
pub fn finite_difference(f: &RealFunction, r: usize, h: f64, x: f64) -> f64 {
    (0..=r)
        .map(|nu| {
            let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(r, nu) * f.eval(x + (r - nu) as f64 * h)
        })
        .sum()
}

/// `x ↦ Δ_h^r f(x)` with the window and breakpoints shifted accordingly.
pub fn difference_function(f: &RealFunction, r: usize, h: f64) -> RealFunction {
    let w = f.window();
    let reach = r as f64 * h;
    let window = Interval::new(w.lo - reach.max(0.0), w.hi - reach.min(0.0));
    let breaks: Vec<f64> = (0..=r)
        .flat_map(|j| f.breakpoints().iter().map(move |b| b - j as f64 * h))
        .collect();
    let src = f.clone();
    RealFunction::new(
        alloc::format!("Δ^{r}_{h} {}", f.label()),
        window,
        f.decay(),
        move |x| finite_difference(&src, r, h, x),
    )
    .with_breakpoints(breaks)
}

/// `δ·2^{-j/8}`, `j = 0..count`: the relative step grid behind [`modulus`].
pub fn step_grid(delta: f64, count: usize) -> Vec<f64> {
    (0..count.max(1))
        .map(|j| delta * (-(j as f64) / STEPS_PER_OCTAVE as f64).exp2())
        .collect()
}

fn check_order(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::invalid("r", "difference order must be at least 1"))
    } else {
        Ok(())
    }
}

/// `max_{h ∈ steps} ‖Δ_h^r f‖_p`.
pub fn modulus_with_steps(f: &RealFunction, r: usize, steps: &[f64], p: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_order(r)?;
    let mut best: f64 = 0.0;
    for &h in steps {
        if h > 0.0 {
            best = best.max(lp_norm(&difference_function(f, r, h), p, quad)?);
        }
    }
    Ok(best)
}

/// `ω_r(f, δ)_p` approximated from below by the maximum over
/// [`step_grid`]`(δ, h_grid_size)`, which always contains `h = δ`.
pub fn modulus(
    f: &RealFunction,
    r: usize,
    delta: f64,
    p: f64,
    quad: &QuadratureSpec,
    h_grid_size: usize,
) -> Result<f64> {
    if !(delta >= 0.0) {
        return Err(Error::invalid("delta", "must be non-negative"));
    }
    if delta == 0.0 {
        check_order(r)?;
        return Ok(0.0);
    }
    modulus_with_steps(f, r, &step_grid(delta, h_grid_size), p, quad)
}

/// `h ↦ ‖Δ_h^r f‖_p` on the absolute dyadic grid `h_j = 2^{-j/q}`; moduli
/// read off one profile at different `δ` share their steps, so
/// comparisons between them are exact as computed.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile {
    pub steps: Vec<f64>,
    pub norms: Vec<f64>,
}

impl ModulusProfile {
    /// Steps `2^{-j/per_octave}` lying in `[h_min, h_max]`.
    pub fn compute(
        f: &RealFunction,
        r: usize,
        p: f64,
        quad: &QuadratureSpec,
        h_min: f64,
        h_max: f64,
        per_octave: usize,
    ) -> Result<Self> {
        check_order(r)?;
        let q = per_octave.max(1) as f64;
        let j_lo = (-q * h_max.log2()).ceil() as i64;
        let j_hi = (-q * h_min.log2()).floor() as i64;
        let steps: Vec<f64> = (j_lo..=j_hi).map(|j| (-(j as f64) / q).exp2()).collect();
        let norms = steps
            .iter()
            .map(|&h| lp_norm(&difference_function(f, r, h), p, quad))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModulusProfile { steps, norms })
    }

    /// `max_{h_j <= δ} ‖Δ_{h_j}^r f‖_p`.
    pub fn omega(&self, delta: f64) -> f64 {
        self.steps
            .iter()
            .zip(&self.norms)
            .filter(|(h, _)| **h <= delta * (1.0 + 1e-12))
            .map(|(_, n)| *n)
            .fold(0.0, f64::max)
    }
}
