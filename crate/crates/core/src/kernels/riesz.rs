//! `ρ_{s,δ} = F⁻¹((1 - |4ξ/3|^s)_+^δ)`, tabulated on `[0, EXTENT]`.
//!
//! With `u = 4ξ/3` the kernel is `ρ(x) = (3/2) ∫_0^1 (1 - u^s)^δ cos(3πux/2) du`.
//! The integral is split at `u = 1/2` and both halves are graded with a
//! quartic substitution, which tames the algebraic endpoint singularities
//! `u^s` at 0 and `(1 - u)^δ` at 1.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{GaussLegendre, QuadratureSpec};

const STEP: f64 = 1.0 / 32.0;
const EXTENT: f64 = 256.0;
/// Every `CHECK_STRIDE`-th table node is recomputed at double resolution.
const CHECK_STRIDE: usize = 64;
const RELATIVE_TOLERANCE: f64 = 1e-10;

pub(super) fn symbol(s: f64, delta: f64, xi: f64) -> f64 {
    let u = (4.0 * xi / 3.0).abs();
    if u >= 1.0 {
        0.0
    } else {
        (1.0 - u.powf(s)).powf(delta)
    }
}

pub(super) fn decay_order(s: f64, delta: f64) -> f64 {
    let even = s.fract() == 0.0 && (s as u64).is_multiple_of(2);
    if even {
        1.0 + delta
    } else {
        1.0 + s.min(delta)
    }
}

#[derive(Debug, Clone)]
pub struct RieszTable {
    s: f64,
    delta: f64,
    values: Vec<f64>,
    suffix_max: Vec<f64>,
    tail_constant: f64,
    order: f64,
    rule: GaussLegendre,
    base_panels: usize,
}

impl RieszTable {
    pub(super) fn build(s: f64, delta: f64, quad: &QuadratureSpec) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::invalid("s", "Riesz exponent must be positive"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid("delta", "Riesz order must be positive"));
        }
        let rule = GaussLegendre::new(quad.nodes_per_panel.max(16));
        let base_panels = (quad.panels / 16).max(4);
        let count = (EXTENT / STEP) as usize + 5;
        let values: Vec<f64> = (0..count)
            .map(|i| direct(s, delta, i as f64 * STEP, &rule, base_panels))
            .collect();
        let scale = values[0].abs();
        let mut residual: f64 = 0.0;
        for i in (0..count).step_by(CHECK_STRIDE).chain([count - 1]) {
            let fine = direct(s, delta, i as f64 * STEP, &rule, 2 * base_panels);
            residual = residual.max((fine - values[i]).abs());
        }
        let tolerance = RELATIVE_TOLERANCE * scale;
        if !(residual <= tolerance) {
            return Err(Error::Tolerance { residual, tolerance });
        }
        let mut suffix_max = values.iter().map(|v| v.abs()).collect::<Vec<_>>();
        for i in (0..count - 1).rev() {
            suffix_max[i] = suffix_max[i].max(suffix_max[i + 1]);
        }
        let order = decay_order(s, delta);
        let half = (0.5 * EXTENT / STEP) as usize;
        let tail_constant = (half..count)
            .map(|i| values[i].abs() * (i as f64 * STEP).powf(order))
            .fold(0.0, f64::max);
        Ok(RieszTable {
            s,
            delta,
            values,
            suffix_max,
            tail_constant,
            order,
            rule,
            base_panels,
        })
    }

    fn node(&self, i: i64) -> f64 {
        self.values[i.unsigned_abs() as usize]
    }

    /// Eight-point Lagrange interpolation in the table; direct quadrature
    /// beyond it.
    pub fn eval(&self, x: f64) -> f64 {
        let a = x.abs();
        if a > EXTENT {
            return direct(self.s, self.delta, a, &self.rule, self.base_panels);
        }
        let t = a / STEP;
        let i0 = t.floor() as i64;
        let frac = t - i0 as f64;
        if frac == 0.0 {
            return self.node(i0);
        }
        let mut acc = 0.0;
        for j in -3..=4i64 {
            let mut w = 1.0;
            for m in -3..=4i64 {
                if m != j {
                    w *= (frac - m as f64) / (j - m) as f64;
                }
            }
            acc += w * self.node(i0 + j);
        }
        acc
    }

    /// Bound for `|ρ(u)|` over `|u| >= radius`.
    pub fn envelope(&self, radius: f64) -> f64 {
        let far = self.tail_constant * radius.max(EXTENT).powf(-self.order);
        if radius > EXTENT {
            return far;
        }
        let i = ((radius / STEP).ceil() as usize).min(self.suffix_max.len() - 1);
        // one node inwards covers the interpolation overshoot
        self.suffix_max[i.saturating_sub(1)].max(far)
    }

    pub fn radius_for(&self, budget: f64) -> f64 {
        let n = (EXTENT / STEP) as usize;
        (0..=n)
            .map(|i| i as f64 * STEP)
            .find(|&r| self.envelope(r) <= budget)
            .unwrap_or(EXTENT)
    }

    pub fn decay_order(&self) -> f64 {
        self.order
    }
}

fn direct(s: f64, delta: f64, x: f64, rule: &GaussLegendre, base_panels: usize) -> f64 {
    let omega = 1.5 * PI * x;
    let panels = base_panels + (1.5 * x.abs()).ceil() as usize;
    let weight = |u: f64| {
        let v = 1.0 - u.powf(s);
        if v <= 0.0 {
            0.0
        } else {
            v.powf(delta)
        }
    };
    let mut acc = 0.0;
    for k in 0..panels {
        let (a, b) = (k as f64 / panels as f64, (k + 1) as f64 / panels as f64);
        for (w, wt) in rule.mapped(a, b) {
            // u = w⁴/2 on [0, 1/2]
            let w3 = w * w * w;
            let u = 0.5 * w3 * w;
            acc += wt * 2.0 * w3 * weight(u) * (omega * u).cos();
            // u = 1 - t⁴/2 on [1/2, 1]
            let u = 1.0 - 0.5 * w3 * w;
            acc += wt * 2.0 * w3 * weight(u) * (omega * u).cos();
        }
    }
    1.5 * acc
}
