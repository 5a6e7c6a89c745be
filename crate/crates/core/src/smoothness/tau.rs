use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::modulus::finite_difference;
use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, pow_abs, Interval, RealFunction};
use crate::numeric::KahanSum;
use crate::quadrature::{panel_edges, QuadratureSpec};

/// Discretization of the local sup over `(t, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalGrid {
    /// Points per segment of admissible `t`; odd, so the centred position
    /// `t = x - rh/2` is always included.
    pub t_points: usize,
    /// Steps `δ·2^{-j/4}`, `j = 0..h_points`.
    pub h_points: usize,
}

impl Default for LocalGrid {
    fn default() -> Self {
        LocalGrid {
            t_points: 17,
            h_points: 16,
        }
    }
}

impl LocalGrid {
    pub fn steps(&self, delta: f64) -> Vec<f64> {
        (0..self.h_points.max(1))
            .map(|j| delta * (-(j as f64) / 4.0).exp2())
            .collect()
    }
}

/// Local modulus `ω_r(f, x, δ) = sup{|Δ_h^r f(t)| : t, t + rh ∈ [x - rδ/2, x + rδ/2]}`
/// over the [`LocalGrid`]; a lower approximation of the true sup.
pub fn local_modulus(f: &RealFunction, r: usize, delta: f64, x: f64, grid: &LocalGrid) -> f64 {
    let rho = 0.5 * r as f64 * delta;
    let n = grid.t_points.max(1);
    let mut best: f64 = 0.0;
    for h in grid.steps(delta) {
        let free = 2.0 * rho - r as f64 * h;
        for i in 0..n {
            let frac = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
            let t = x - rho + frac * free;
            best = best.max(finite_difference(f, r, h, t).abs());
        }
    }
    best
}

/// `τ_r(f, δ)_p = ‖ω_r(f, ·, δ)‖_p`.
pub fn tau_modulus(
    f: &RealFunction,
    r: usize,
    delta: f64,
    p: f64,
    quad: &QuadratureSpec,
    grid: &LocalGrid,
) -> Result<f64> {
    if r == 0 {
        return Err(Error::invalid("r", "difference order must be at least 1"));
    }
    if !(delta >= 0.0) {
        return Err(Error::invalid("delta", "must be non-negative"));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let reach = r as f64 * delta;
    let breaks: Vec<f64> = f
        .breakpoints()
        .iter()
        .flat_map(|b| (-16..=16).map(move |j| b + j as f64 * reach / 32.0))
        .collect();
    let src = f.clone();
    let g = *grid;
    let local = RealFunction::new(
        alloc::format!("ω_{r}({}, ·, {delta})", f.label()),
        f.window().expand(reach),
        f.decay(),
        move |x| local_modulus(&src, r, delta, x, &g),
    )
    .with_breakpoints(breaks);
    lp_norm(&local, p, quad)
}

/// Matched-grid discretization of τ-moduli. Steps are integer multiples
/// `m·η` and positions lie on `x + ηℤ`; the `x`-quadrature nodes are fixed
/// once. Enlarging the ball then only adds candidates, and the candidates
/// for `Δ^{r+1}` at `(t, h)` reappear for `Δ^r` at `t` and `t + h`, so the
/// τ-inequalities hold exactly as computed.
#[derive(Debug, Clone)]
pub struct TauProbe {
    pub eta: f64,
    pub multiples: Vec<usize>,
    nodes: Vec<(f64, f64)>,
}

impl TauProbe {
    /// Nodes of the composite rule of `quad` over `window`, split at
    /// `breakpoints`.
    pub fn new(
        window: Interval,
        breakpoints: &[f64],
        quad: &QuadratureSpec,
        eta: f64,
        multiples: Vec<usize>,
    ) -> Result<Self> {
        if !(eta > 0.0) {
            return Err(Error::invalid("eta", "must be positive"));
        }
        if multiples.is_empty() || multiples.contains(&0) {
            return Err(Error::invalid("multiples", "need at least one positive multiple"));
        }
        let rule = quad.rule();
        let edges = panel_edges(window.lo, window.hi, quad.panels, breakpoints);
        let nodes = edges
            .windows(2)
            .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
            .collect();
        Ok(TauProbe { eta, multiples, nodes })
    }

    pub fn nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Local modulus at `x` over the lattice candidates.
    pub fn local(&self, f: &RealFunction, r: usize, delta: f64, x: f64) -> f64 {
        let rho = 0.5 * r as f64 * delta;
        let k_lo = (-rho / self.eta - 1e-9).ceil() as i64;
        let mut best: f64 = 0.0;
        for &m in &self.multiples {
            let h = m as f64 * self.eta;
            let k_hi = ((rho - r as f64 * h) / self.eta + 1e-9).floor() as i64;
            for k in k_lo..=k_hi {
                best = best.max(finite_difference(f, r, h, x + k as f64 * self.eta).abs());
            }
        }
        best
    }

    /// The local modulus at every node.
    pub fn local_values(&self, f: &RealFunction, r: usize, delta: f64) -> Vec<f64> {
        self.nodes.iter().map(|&(x, _)| self.local(f, r, delta, x)).collect()
    }

    /// `L_p` norm of node values produced by [`local_values`](Self::local_values).
    pub fn norm(&self, values: &[f64], p: f64) -> f64 {
        let mut acc = KahanSum::default();
        for (v, (_, w)) in values.iter().zip(&self.nodes) {
            acc.add(w * pow_abs(*v, p));
        }
        acc.value().max(0.0).powf(1.0 / p)
    }

    pub fn tau(&self, f: &RealFunction, r: usize, delta: f64, p: f64) -> f64 {
        self.norm(&self.local_values(f, r, delta), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::DecayClass;
    use crate::smoothness::modulus_with_steps;

    #[test]
    fn indicator_tau_is_twice_delta() {
        let f = RealFunction::constant(1.0, Interval::new(0.0, 1.0));
        let quad = QuadratureSpec::default();
        for &d in &[0.1, 0.02] {
            let t = tau_modulus(&f, 1, d, 1.0, &quad, &LocalGrid::default()).unwrap();
            assert!((t - 2.0 * d).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn constant_has_zero_tau() {
        let f = RealFunction::new("c", Interval::new(0.0, 1.0), DecayClass::None, |_| 1.0);
        let t = tau_modulus(&f, 2, 0.1, 2.0, &QuadratureSpec::default(), &LocalGrid::default()).unwrap();
        assert_eq!(t, 0.0);
    }

    #[test]
    fn tau_dominates_modulus_on_matched_steps() {
        let f = RealFunction::new("hat", Interval::new(-1.0, 1.0), DecayClass::CompactSupport, |x: f64| {
            1.0 - x.abs()
        })
        .with_breakpoints([-1.0, 0.0, 1.0]);
        let quad = QuadratureSpec::default();
        let grid = LocalGrid::default();
        let d = 0.05;
        let t = tau_modulus(&f, 2, d, 2.0, &quad, &grid).unwrap();
        let w = modulus_with_steps(&f, 2, &grid.steps(d), 2.0, &quad).unwrap();
        assert!(t >= w - 1e-6, "{t} < {w}");
    }
}
