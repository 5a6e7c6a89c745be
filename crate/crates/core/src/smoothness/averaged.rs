use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::funcspace::{discrete_seminorm_of_values, GridSet, RealFunction};
use crate::numeric::binomial;
use crate::quadrature::{integrate, QuadratureSpec};

/// Panels per ball for the interval means.
const PANELS_PER_BALL: f64 = 4.0;
/// Panels on `y ∈ [-1, 1]` for the averaged-difference side of the identity.
const IDENTITY_PANELS: usize = 64;

/// `f_a(x)`: the mean of `f` over `(x - a, x + a)`.
pub fn ball_average(f: &RealFunction, a: f64, x: f64, quad: &QuadratureSpec) -> f64 {
    if a == 0.0 {
        return f.eval(x);
    }
    let spec = quad.with_min_panels((PANELS_PER_BALL / (2.0 * a)).ceil() as usize);
    integrate(|t| f.eval(t), x - a, x + a, &spec, f.breakpoints()) / (2.0 * a)
}

/// Weights `w_j` with `f_{δ,r} = Σ_{j=1}^r w_j f_{δj/r}`:
/// `w_j = -(2/C(2r,r)) (-1)^j C(2r, r-j)`. They sum to one.
pub fn averaged_weights(r: usize) -> Vec<f64> {
    let c = binomial(2 * r, r);
    (1..=r)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 / c * sign * binomial(2 * r, r - j)
        })
        .collect()
}

fn check(delta: f64, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::invalid("r", "averaging order must be at least 1"));
    }
    if !(delta >= 0.0) {
        return Err(Error::invalid("delta", "must be non-negative"));
    }
    Ok(())
}

/// The averaged operator `f_{δ,r}(x)`.
pub fn averaged_op(f: &RealFunction, delta: f64, r: usize, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check(delta, r)?;
    Ok(averaged_value(f, delta, r, x, quad))
}

fn averaged_value(f: &RealFunction, delta: f64, r: usize, x: f64, quad: &QuadratureSpec) -> f64 {
    averaged_weights(r)
        .iter()
        .enumerate()
        .map(|(i, w)| w * ball_average(f, delta * (i + 1) as f64 / r as f64, x, quad))
        .sum()
}

/// `x ↦ f_{δ,r}(x) - f(x)`.
pub fn averaged_deviation_function(
    f: &RealFunction,
    delta: f64,
    r: usize,
    quad: &QuadratureSpec,
) -> Result<RealFunction> {
    check(delta, r)?;
    let src = f.clone();
    let q = *quad;
    let mut breaks: Vec<f64> = f.breakpoints().to_vec();
    for j in 1..=r {
        let a = delta * j as f64 / r as f64;
        breaks.extend(f.breakpoints().iter().flat_map(|b| [b - a, b + a]));
    }
    Ok(RealFunction::new(
        alloc::format!("{}_(δ,{r}) - {}", f.label(), f.label()),
        f.window().expand(delta),
        f.decay(),
        move |x| averaged_value(&src, delta, r, x, &q) - src.eval(x),
    )
    .with_breakpoints(breaks))
}

/// `c_r = (-1)^{r+1} C(2r, r)`.
pub fn normalizing_constant(r: usize) -> f64 {
    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
    sign * binomial(2 * r, r)
}

/// Centred difference `Σ_ν C(2r,ν) (-1)^ν f(x + (r-ν)t)`.
fn centred_difference(f: &RealFunction, r: usize, t: f64, x: f64) -> f64 {
    (0..=2 * r)
        .map(|nu| {
            let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(2 * r, nu) * f.eval(x + (r as f64 - nu as f64) * t)
        })
        .sum()
}

/// Residual of the averaged-difference representation
/// `f_{δ,r}(x) - f(x) = 1/(2c_r) ∫_{-1}^{1} Δ̃^{2r}_{δy/r} f(x) dy`,
/// where `Δ̃` is the centred difference. Both sides use independent
/// quadratures, so the residual measures their joint accuracy.
pub fn averaged_identity_check(f: &RealFunction, delta: f64, r: usize, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check(delta, r)?;
    if delta == 0.0 {
        return Ok(0.0);
    }
    let lhs = averaged_value(f, delta, r, x, quad) - f.eval(x);
    let mut ybreaks = Vec::new();
    for m in 1..=r {
        let scale = m as f64 * delta / r as f64;
        for b in f.breakpoints() {
            ybreaks.push((b - x) / scale);
            ybreaks.push((x - b) / scale);
        }
    }
    let spec = QuadratureSpec {
        panels: IDENTITY_PANELS / 2,
        ..*quad
    };
    let integral = integrate(
        |y| centred_difference(f, r, delta * y / r as f64, x),
        -1.0,
        1.0,
        &spec,
        &ybreaks,
    );
    let rhs = integral / (2.0 * normalizing_constant(r));
    Ok((lhs - rhs).abs())
}

/// `‖f_{δ,r} - f‖_{ℓ_p(X_σ)}`. Scales up to the boundary value `δ = 1/(2σ)`
/// are accepted even though the grid separation is strict.
pub fn discrete_avg_deviation(
    f: &RealFunction,
    grid: &GridSet,
    delta: f64,
    r: usize,
    p: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check(delta, r)?;
    let limit = grid.gamma().max(0.5) / grid.sigma();
    if delta > limit * (1.0 + 1e-12) {
        return Err(Error::Precondition(alloc::format!(
            "averaging scale δ = {delta} exceeds max(γ, 1/2)/σ = {limit}"
        )));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let values = grid
        .points()
        .iter()
        .map(|&x| {
            let v = averaged_value(f, delta, r, x, quad) - f.try_eval(x)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Evaluation {
                    label: f.label().into(),
                    x,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(discrete_seminorm_of_values(&values, grid.sigma(), p))
}
