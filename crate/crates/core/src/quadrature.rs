//! Composite Gauss–Legendre quadrature on explicit panels.
//!
//! Panels are laid on the lattice `k / panels` (so integer and dyadic points
//! are always panel edges) and split further at caller-supplied breakpoints,
//! which keeps piecewise-smooth integrands at full Gauss accuracy.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Resolution of the composite rule used for every `L_p` integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Composite panels per unit length.
    pub panels: usize,
    /// Gauss–Legendre order on each panel.
    pub nodes_per_panel: usize,
    /// Absolute budget for the `L_p` norm of the part of the integrand that
    /// lies outside the integrated window.
    pub tail_tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(panels: usize, nodes_per_panel: usize, tail_tolerance: f64) -> Result<Self> {
        if panels < 1 {
            return Err(Error::invalid("panels", "must be at least 1"));
        }
        if nodes_per_panel < 2 {
            return Err(Error::invalid("nodes_per_panel", "must be at least 2"));
        }
        if !(tail_tolerance > 0.0) {
            return Err(Error::invalid("tail_tolerance", "must be positive"));
        }
        Ok(QuadratureSpec {
            panels,
            nodes_per_panel,
            tail_tolerance,
        })
    }

    /// Same rule with at least `panels` panels per unit length.
    pub fn with_min_panels(self, panels: usize) -> Self {
        QuadratureSpec {
            panels: self.panels.max(panels),
            ..self
        }
    }

    /// Doubles the panel density.
    pub fn refined(self) -> Self {
        QuadratureSpec {
            panels: self.panels * 2,
            ..self
        }
    }

    pub fn rule(&self) -> GaussLegendre {
        GaussLegendre::new(self.nodes_per_panel)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 64,
            nodes_per_panel: 8,
            tail_tolerance: 1e-4,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Iterates `(abscissa, weight)` pairs mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Panel edges for `[a, b]`: the endpoints, every lattice point `k/panels`
/// strictly inside, and every breakpoint strictly inside.
pub fn panel_edges(a: f64, b: f64, panels: usize, breakpoints: &[f64]) -> Vec<f64> {
    let mut edges = Vec::new();
    if !(b > a) {
        return edges;
    }
    let p = panels as f64;
    edges.push(a);
    let k0 = (a * p).floor() as i64 + 1;
    let k1 = (b * p).ceil() as i64 - 1;
    for k in k0..=k1 {
        let x = k as f64 / p;
        if x > a && x < b {
            edges.push(x);
        }
    }
    edges.extend(breakpoints.iter().copied().filter(|x| *x > a && *x < b));
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    let scale = a.abs().max(b.abs()).max(1.0);
    edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * scale);
    edges
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec, breakpoints: &[f64]) -> f64 {
    let rule = spec.rule();
    let edges = panel_edges(a, b, spec.panels, breakpoints);
    edges.windows(2).map(|w| rule.integrate(w[0], w[1], &mut f)).sum()
}
