#[allow(unused_imports)]
use num_traits::Float;

use super::BandlimitedFunction;
use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, RealFunction};
use crate::numeric::binomial;
use crate::quadrature::QuadratureSpec;

/// Relative disagreement tolerated between the Richardson-extrapolated
/// derivative norms at steps `h` and `h/2`.
pub const RICHARDSON_TOLERANCE: f64 = 1e-4;

/// `|g|_{W_p^s} = ‖g^{(s)}‖_p`.
///
/// Exact derivatives are used when `g` carries them; otherwise a centred
/// `s`-th difference with one Richardson step, at step `1/quad.panels` and
/// half of it, and the two results must agree.
pub fn sobolev_seminorm(g: &RealFunction, s: usize, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    if s == 0 {
        return lp_norm(g, p, quad);
    }
    if let Some(d) = g.derivative_function(s) {
        return lp_norm(&d, p, quad);
    }
    let h = 1.0 / quad.panels as f64;
    let coarse = lp_norm(&richardson(g, s, h), p, quad)?;
    let fine = lp_norm(&richardson(g, s, 0.5 * h), p, quad)?;
    let scale = fine.abs().max(coarse.abs());
    if scale > 0.0 {
        let disagreement = (coarse - fine).abs() / scale;
        if disagreement > RICHARDSON_TOLERANCE {
            return Err(Error::Derivative { disagreement });
        }
    }
    Ok(fine)
}

fn centred_difference(g: &RealFunction, s: usize, h: f64, x: f64) -> f64 {
    let half = s as f64 / 2.0;
    let sum: f64 = (0..=s)
        .map(|nu| {
            let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(s, nu) * g.eval(x + (half - nu as f64) * h)
        })
        .sum();
    sum / h.powi(s as i32)
}

fn richardson(g: &RealFunction, s: usize, h: f64) -> RealFunction {
    let src = g.clone();
    RealFunction::new(alloc::format!("D^{s} {}", g.label()), g.window(), g.decay(), move |x| {
        (4.0 * centred_difference(&src, s, 0.5 * h, x) - centred_difference(&src, s, h, x)) / 3.0
    })
    .with_breakpoints(g.breakpoints().iter().copied())
}

/// `‖(-Δ)^{s/2} g‖_p` for band-limited `g`.
pub fn fractional_seminorm(g: &BandlimitedFunction, s: f64, p: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::invalid("s", "must be positive"));
    }
    if !(p >= 1.0) {
        return Err(Error::invalid("p", "must be at least 1"));
    }
    Ok(g.fractional_seminorm(s, p))
}
