use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{DecayClass, GridSet, Interval, RealFunction};
use crate::error::{Error, Result};
use crate::numeric::KahanSum;
use crate::quadrature::{panel_edges, QuadratureSpec};

/// How many times the window may be doubled while chasing the tail budget.
const MAX_DOUBLINGS: usize = 4;

/// An `L_p` norm together with the part of the mass that was modelled rather
/// than integrated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpNorm {
    pub value: f64,
    /// Modelled (not integrated) `L_p` mass outside `extent`; an analytic
    /// tail hook is included in `value`, a decay-class model is not.
    pub tail_estimate: f64,
    /// The interval that was actually integrated.
    pub extent: Interval,
}

pub fn lp_norm(f: &RealFunction, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    lp_norm_report(f, p, quad).map(|r| r.value)
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("p", alloc::format!("need 1 <= p < ∞, got {p}")))
    }
}

/// `∫_a^b |f|^p`, failing on the first non-finite value.
///
/// Unless `p` is an even integer, `|f|^p` has a kink wherever `f` changes
/// sign; panels whose nodes see a sign change are split at the root so the
/// rule keeps its order.
fn power_mass(f: &RealFunction, p: f64, a: f64, b: f64, quad: &QuadratureSpec) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let even = p.fract() == 0.0 && (p as u64).is_multiple_of(2);
    let rule = quad.rule();
    let edges = panel_edges(a, b, quad.panels, f.breakpoints());
    let mut acc = KahanSum::default();
    let mut nodes = Vec::with_capacity(rule.len());
    for w in edges.windows(2) {
        nodes.clear();
        let mut panel = 0.0;
        for (x, wt) in rule.mapped(w[0], w[1]) {
            let v = f.try_eval(x)?;
            nodes.push((x, v));
            panel += wt * pow_abs(v, p);
        }
        if !even && nodes.windows(2).any(|n| n[0].1 * n[1].1 < 0.0) {
            panel = split_at_roots(f, p, w[0], w[1], &nodes, quad)?;
        }
        acc.add(panel);
    }
    Ok(acc.value())
}

fn split_at_roots(
    f: &RealFunction,
    p: f64,
    a: f64,
    b: f64,
    nodes: &[(f64, f64)],
    quad: &QuadratureSpec,
) -> Result<f64> {
    let rule = quad.rule();
    let mut cuts = alloc::vec![a];
    for n in nodes.windows(2) {
        if n[0].1 * n[1].1 < 0.0 {
            cuts.push(sign_change(f, n[0], n[1])?);
        }
    }
    cuts.push(b);
    let mut total = 0.0;
    for c in cuts.windows(2) {
        for (x, wt) in rule.mapped(c[0], c[1]) {
            total += wt * pow_abs(f.try_eval(x)?, p);
        }
    }
    Ok(total)
}

/// Root of `f` between two nodes of opposite sign (Illinois false position).
fn sign_change(f: &RealFunction, (mut x0, mut f0): (f64, f64), (mut x1, mut f1): (f64, f64)) -> Result<f64> {
    let tol = 1e-14 * (x1 - x0).abs().max(x0.abs());
    let mut side = 0;
    for _ in 0..60 {
        let x = (x0 * f1 - x1 * f0) / (f1 - f0);
        let v = f.try_eval(x)?;
        if v == 0.0 || (x1 - x0).abs() <= tol {
            return Ok(x);
        }
        if v * f1 < 0.0 {
            x0 = x1;
            f0 = f1;
            side = 0;
        } else {
            f0 *= if side == -1 { 0.5 } else { 1.0 };
            side = -1;
        }
        x1 = x;
        f1 = v;
        if (x1 - x0).abs() <= tol {
            return Ok(x1);
        }
    }
    Ok(x1)
}

#[inline]
pub(crate) fn pow_abs(v: f64, p: f64) -> f64 {
    let a = v.abs();
    if p == 1.0 {
        a
    } else if p == 2.0 {
        a * a
    } else {
        a.powf(p)
    }
}

/// Largest `|f|` over the outer `span` of each side of `extent`.
fn edge_envelope(f: &RealFunction, extent: Interval) -> Result<(f64, f64)> {
    let span = (0.25 * extent.width()).min(2.0);
    let n = 128;
    let mut left: f64 = 0.0;
    let mut right: f64 = 0.0;
    for i in 0..=n {
        let t = span * i as f64 / n as f64;
        left = left.max(f.try_eval(extent.lo + t)?.abs());
        right = right.max(f.try_eval(extent.hi - t)?.abs());
    }
    Ok((left, right))
}

/// Upper model for `∫_{ℝ∖extent} |f|^p` from the decay class.
fn modelled_tail(f: &RealFunction, p: f64, extent: Interval) -> Result<f64> {
    let (left, right) = edge_envelope(f, extent)?;
    let amp = pow_abs(left, p) + pow_abs(right, p);
    Ok(match f.decay() {
        DecayClass::CompactSupport | DecayClass::None => 0.0,
        DecayClass::Exponential { rate } => amp / (p * rate),
        DecayClass::Polynomial { order } => {
            if p * order <= 1.0 {
                f64::INFINITY
            } else {
                let reach = 0.5 * extent.width();
                amp * reach / (p * order - 1.0)
            }
        }
    })
}

/// `(∫|f|^p)^{1/p}` over the function's window, extended by doubling until the
/// decay-class tail model drops below `quad.tail_tolerance` (in norm units).
/// Compactly supported functions, and functions without decay information,
/// are integrated over their window only.
pub fn lp_norm_report(f: &RealFunction, p: f64, quad: &QuadratureSpec) -> Result<LpNorm> {
    check_p(p)?;
    let mut extent = f.window();
    let mut mass = power_mass(f, p, extent.lo, extent.hi, quad)?;
    let finish = |mass: f64, tail: f64, extent| LpNorm {
        value: mass.max(0.0).powf(1.0 / p),
        tail_estimate: tail,
        extent,
    };
    match f.decay() {
        DecayClass::CompactSupport | DecayClass::None => return Ok(finish(mass, 0.0, extent)),
        _ => {}
    }
    if let Some(tail) = f.tail_mass(p, extent) {
        let tail_norm = tail.max(0.0).powf(1.0 / p);
        return Ok(finish(mass + tail, tail_norm, extent));
    }
    let budget = quad.tail_tolerance;
    let mut tail = modelled_tail(f, p, extent)?.powf(1.0 / p);
    for _ in 0..MAX_DOUBLINGS {
        if tail <= budget {
            break;
        }
        let grown = extent.scaled(2.0);
        mass += power_mass(f, p, grown.lo, extent.lo, quad)?;
        mass += power_mass(f, p, extent.hi, grown.hi, quad)?;
        extent = grown;
        tail = modelled_tail(f, p, extent)?.powf(1.0 / p);
    }
    Ok(finish(mass, tail, extent))
}

/// Result of [`discrete_seminorm`]; `empty_grid` flags the vacuous case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteSeminorm {
    pub value: f64,
    pub empty_grid: bool,
}

/// `(σ⁻¹ Σ_{ξ∈X_σ} |f(ξ)|^p)^{1/p}`.
pub fn discrete_seminorm(f: &RealFunction, grid: &GridSet, p: f64) -> Result<DiscreteSeminorm> {
    check_p(p)?;
    let values = grid
        .points()
        .iter()
        .map(|&x| f.try_eval(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscreteSeminorm {
        value: discrete_seminorm_of_values(&values, grid.sigma(), p),
        empty_grid: grid.is_empty(),
    })
}

/// The seminorm from precomputed node values.
pub fn discrete_seminorm_of_values(values: &[f64], sigma: f64, p: f64) -> f64 {
    let acc: KahanSum = values.iter().map(|&v| pow_abs(v, p)).collect();
    (acc.value() / sigma).powf(1.0 / p)
}
