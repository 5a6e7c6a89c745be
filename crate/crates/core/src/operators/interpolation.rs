use alloc::sync::Arc;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::funcspace::{DecayClass, GridSet, Interval, RealFunction};
use crate::kernels::gaussian_eval;
use crate::numeric::banded::SymBanded;

/// Collocation entries `ψ(x_j - x_k)` beyond this distance are below 1e-17
/// and dropped.
pub const GAUSSIAN_STENCIL: f64 = 3.6;
/// Condition estimates above this are treated as a failed solve.
pub const CONDITION_LIMIT: f64 = 1e14;

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolantSolution {
    pub coefficients: Vec<f64>,
    /// `max_k |Σ_j a_j ψ(x_k - x_j) - samples_k|`.
    pub residual: f64,
    /// `‖M‖₁·‖M⁻¹‖₁` with Hager's estimate for the inverse.
    pub condition_estimate: f64,
}

/// Solves `Σ_j a_j ψ(x_k - x_j) = samples_k` on the base points `x_j = σξ_j`
/// (the σ = 1 picture). `reg` is added to the diagonal.
pub fn gaussian_interpolate(grid: &GridSet, samples: &[f64], reg: f64) -> Result<InterpolantSolution> {
    if samples.len() != grid.len() {
        return Err(Error::invalid(
            "samples",
            alloc::format!("expected {} values, got {}", grid.len(), samples.len()),
        ));
    }
    if !(reg >= 0.0) {
        return Err(Error::invalid("reg", "must be non-negative"));
    }
    let x = grid.base_points();
    let n = x.len();
    if n == 0 {
        return Ok(InterpolantSolution {
            coefficients: Vec::new(),
            residual: 0.0,
            condition_estimate: 1.0,
        });
    }
    let bw = (0..n)
        .map(|i| x[i..].iter().take_while(|&&y| y - x[i] <= GAUSSIAN_STENCIL).count() - 1)
        .max()
        .unwrap_or(0);
    let mut m = SymBanded::zeros(n, bw);
    for i in 0..n {
        for j in i.saturating_sub(bw)..=i {
            let d = x[i] - x[j];
            let v = if d.abs() <= GAUSSIAN_STENCIL {
                gaussian_eval(d)
            } else {
                0.0
            };
            m.set(i, j, if i == j { v + reg } else { v });
        }
    }
    let chol = m.cholesky().ok_or(Error::IllConditioned {
        estimate: f64::INFINITY,
    })?;
    let condition_estimate = m.norm1() * chol.inverse_norm1_estimate();
    if !(condition_estimate <= CONDITION_LIMIT) {
        return Err(Error::IllConditioned {
            estimate: condition_estimate,
        });
    }
    let coefficients = chol.solve(samples);
    let residual = m
        .mul_vec(&coefficients)
        .iter()
        .zip(samples)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(InterpolantSolution {
        coefficients,
        residual,
        condition_estimate,
    })
}

/// `I_σ^X f(x) = Σ_j a_j ψ(σx - x_j)` with the nodes `σ⁻¹x_j` of `grid`.
#[derive(Clone, Debug)]
pub struct GaussianInterpolant {
    base: Arc<Vec<f64>>,
    coefficients: Arc<Vec<f64>>,
    sigma: f64,
    residual: f64,
    condition_estimate: f64,
}

impl GaussianInterpolant {
    pub fn new(grid: &GridSet, f: &RealFunction) -> Result<Self> {
        let samples = grid
            .points()
            .iter()
            .map(|&x| f.try_eval(x))
            .collect::<Result<Vec<_>>>()?;
        let sol = gaussian_interpolate(grid, &samples, 0.0)?;
        Ok(GaussianInterpolant {
            base: Arc::new(grid.base_points()),
            coefficients: Arc::new(sol.coefficients),
            sigma: grid.sigma(),
            residual: sol.residual,
            condition_estimate: sol.condition_estimate,
        })
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = self.sigma * x;
        let lo = self.base.partition_point(|&b| b < u - GAUSSIAN_STENCIL);
        let hi = self.base.partition_point(|&b| b <= u + GAUSSIAN_STENCIL);
        (lo..hi)
            .map(|j| self.coefficients[j] * gaussian_eval(u - self.base[j]))
            .sum()
    }

    pub fn to_real_function(&self) -> RealFunction {
        let window = match (self.base.first(), self.base.last()) {
            (Some(a), Some(b)) => Interval::new(a - GAUSSIAN_STENCIL, b + GAUSSIAN_STENCIL),
            _ => Interval::new(0.0, 0.0),
        };
        let window = Interval::new(window.lo / self.sigma, window.hi / self.sigma);
        let me = self.clone();
        RealFunction::new("I[f]", window, DecayClass::CompactSupport, move |x| me.eval(x))
    }
}
