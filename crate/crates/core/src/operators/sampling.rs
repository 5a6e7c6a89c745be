use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, make_uniform_grid, DecayClass, GridSet, Interval, RealFunction, DEFAULT_GAMMA};
use crate::kernels::{self, Kernel, KernelDecay, KernelFamily};
use crate::numeric::KahanSum;
use crate::quadrature::{GaussLegendre, QuadratureSpec};

/// How far (relative to the window) the auto-built grid reaches for
/// functions that are not compactly supported; matches the largest extent
/// the `L_p` tail chase can visit.
const GRID_REACH: f64 = 16.0;

/// `S_σ^φ f(x) = Σ_{|σx-k| <= R} f(σ⁻¹k) φ(σx - k)` over a finite uniform grid.
#[derive(Debug, Clone)]
pub struct SamplingOperator {
    kernel: Kernel,
    grid: GridSet,
    radius: f64,
    tail_budget: f64,
}

/// One application of a sampling operator: the truncated sum and a bound for
/// the terms dropped by the truncation (within the sampled grid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Applied {
    pub value: f64,
    pub tail_bound: f64,
}

impl SamplingOperator {
    /// Truncation radius from `kernel.envelope(R) <= tail_budget`.
    pub fn new(kernel: Kernel, grid: GridSet, tail_budget: f64) -> Result<Self> {
        if !(tail_budget > 0.0) {
            return Err(Error::invalid("tail_budget", "must be positive"));
        }
        let radius = kernel.truncation_radius(tail_budget);
        Self::with_radius(kernel, grid, radius).map(|op| SamplingOperator { tail_budget, ..op })
    }

    /// Explicit truncation radius `R` in kernel units.
    pub fn with_radius(kernel: Kernel, grid: GridSet, radius: f64) -> Result<Self> {
        if !grid.is_uniform() {
            return Err(Error::Precondition(
                "sampling operators need the uniform grid σ⁻¹ℤ".into(),
            ));
        }
        if !(radius > 0.0) {
            return Err(Error::invalid("radius", "must be positive"));
        }
        let tail_budget = kernel.envelope(radius);
        Ok(SamplingOperator {
            kernel,
            grid,
            radius,
            tail_budget,
        })
    }

    /// Operator whose grid covers everything `f` needs: the support of a
    /// compactly supported `f`, otherwise a generous neighbourhood of its
    /// window.
    ///
    /// The slowly decaying sinc stencil is widened to at least the width of
    /// the window of a non-compact `f`, so that no sample from the bulk of
    /// `f` is dropped at large `σ`.
    pub fn for_function(kernel: Kernel, sigma: f64, f: &RealFunction, tail_budget: f64) -> Result<Self> {
        let mut radius = kernel.truncation_radius(tail_budget.max(1e-300));
        if kernel.family() == KernelFamily::Sinc && !f.is_compact() {
            radius = radius.max(sigma * f.window().width());
        }
        let window = if f.is_compact() {
            f.window()
        } else {
            f.window().scaled(GRID_REACH).expand(2.0 * radius / sigma)
        };
        let grid = make_uniform_grid(sigma, window, DEFAULT_GAMMA)?;
        let op = Self::new(kernel, grid, tail_budget)?;
        if radius > op.radius {
            Self::with_radius(op.kernel, op.grid, radius)
        } else {
            Ok(op)
        }
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn grid(&self) -> &GridSet {
        &self.grid
    }

    pub fn sigma(&self) -> f64 {
        self.grid.sigma()
    }

    pub fn truncation_radius(&self) -> f64 {
        self.radius
    }

    pub fn tail_budget(&self) -> f64 {
        self.tail_budget
    }

    /// Samples `f` on the grid.
    pub fn bind(&self, f: &RealFunction) -> Result<SampledFunction> {
        SampledFunction::new(self, f, None)
    }

    /// Like [`bind`](Self::bind), additionally tabulating kernel values for
    /// every residue `σx mod 1` that the quadrature nodes of `quad` produce.
    pub fn bind_for_quadrature(&self, f: &RealFunction, quad: &QuadratureSpec) -> Result<SampledFunction> {
        SampledFunction::new(self, f, Some(quad))
    }

    pub fn apply(&self, f: &RealFunction, x: f64) -> Result<Applied> {
        self.bind(f)?.eval(x)
    }
}

/// Coefficients `(a_m, b_m)`, `m = 0..=n+1`, of
/// `sinc^{(n)}(v) = Σ_m (a_m sin πv + b_m cos πv) v^{-m}`.
fn sinc_derivative_coefficients(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = alloc::vec![0.0; n + 2];
    let mut b = alloc::vec![0.0; n + 2];
    a[1] = 1.0 / PI;
    for _ in 0..n {
        let mut na = alloc::vec![0.0; n + 2];
        let mut nb = alloc::vec![0.0; n + 2];
        for m in 1..=n {
            // d/dv (a S + b C) v^{-m} = π(a C - b S) v^{-m} - m (a S + b C) v^{-m-1}
            na[m] -= PI * b[m];
            nb[m] += PI * a[m];
            na[m + 1] -= m as f64 * a[m];
            nb[m + 1] -= m as f64 * b[m];
        }
        a = na;
        b = nb;
    }
    (a, b)
}

/// Panels per unit length that resolve oscillations at frequency `σ`.
pub(crate) fn panels_for(sigma: f64, quad: &QuadratureSpec) -> QuadratureSpec {
    let need = (2.0 * sigma).ceil().max(1.0) as usize;
    quad.with_min_panels(need.next_power_of_two())
}

/// `‖f - S_σ^φ f‖_p`.
pub fn operator_error(op: &SamplingOperator, f: &RealFunction, p: f64, quad: &QuadratureSpec) -> Result<f64> {
    let quad = panels_for(op.sigma(), quad);
    let sf = op.bind_for_quadrature(f, &quad)?;
    // the tail chase may visit up to GRID_REACH times the window
    if !sf.inner.compact {
        let reach = sf.inner.window.scaled(GRID_REACH);
        sf.eval(reach.lo)?;
        sf.eval(reach.hi)?;
    }
    lp_norm(&f.sub(&sf.to_real_function()), p, &quad)
}

/// Kernel rows `φ(ρ + j)`, `|j| <= J`, for a sorted set of residues `ρ`.
#[derive(Debug)]
struct ResidueCache {
    residues: Vec<f64>,
    half: i64,
    rows: Vec<f64>,
}

impl ResidueCache {
    const MATCH: f64 = 1e-11;

    fn build(kernel: &Kernel, sigma: f64, radius: f64, quad: &QuadratureSpec) -> Option<Self> {
        if sigma.fract() != 0.0 {
            return None;
        }
        let rule = GaussLegendre::new(quad.nodes_per_panel);
        let panels = quad.panels;
        let mut residues = Vec::new();
        for j in 0..panels {
            let (a, b) = (j as f64 / panels as f64, (j + 1) as f64 / panels as f64);
            for (x, _) in rule.mapped(a, b) {
                let u = sigma * x;
                residues.push(u - u.floor());
            }
        }
        residues.sort_by(f64::total_cmp);
        residues.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        if residues.len() > 1 << 14 {
            return None;
        }
        let half = radius.ceil() as i64 + 1;
        let width = (2 * half + 1) as usize;
        let mut rows = Vec::with_capacity(residues.len() * width);
        for &rho in &residues {
            for j in -half..=half {
                let v = rho + j as f64;
                rows.push(if v.abs() <= radius { kernel.eval(v) } else { 0.0 });
            }
        }
        Some(ResidueCache { residues, half, rows })
    }

    fn row(&self, rho: f64) -> Option<&[f64]> {
        let i = self.residues.partition_point(|r| *r < rho);
        let width = (2 * self.half + 1) as usize;
        [i.wrapping_sub(1), i]
            .into_iter()
            .filter(|&i| i < self.residues.len())
            .find(|&i| (self.residues[i] - rho).abs() < Self::MATCH)
            .map(|i| &self.rows[i * width..(i + 1) * width])
    }
}

struct Inner {
    kernel: Kernel,
    sigma: f64,
    radius: f64,
    samples: Vec<f64>,
    /// `(-1)^k f(σ⁻¹k)`, for the sinc fast path.
    alternating: Vec<f64>,
    /// `abs_prefix[i] = Σ_{j<i} |samples[j]|`.
    abs_prefix: Vec<f64>,
    first: i64,
    /// Index range of the nonzero samples when `f` is compactly supported
    /// inside the grid hull (so missing samples are exactly zero).
    support: Option<(i64, i64)>,
    compact: bool,
    window: Interval,
    decay: DecayClass,
    label: String,
    cache: Option<ResidueCache>,
}

/// `S_σ^φ f` for one fixed `f`: samples are taken once at bind time.
#[derive(Clone)]
pub struct SampledFunction {
    inner: Arc<Inner>,
}

impl core::fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SampledFunction")
            .field("label", &self.inner.label)
            .field("sigma", &self.inner.sigma)
            .field("samples", &self.inner.samples.len())
            .finish()
    }
}

impl SampledFunction {
    fn new(op: &SamplingOperator, f: &RealFunction, quad: Option<&QuadratureSpec>) -> Result<Self> {
        let grid = op.grid();
        let sigma = grid.sigma();
        let samples = grid
            .points()
            .iter()
            .map(|&x| f.try_eval(x))
            .collect::<Result<Vec<_>>>()?;
        let first = grid.first_index();
        let alternating = samples
            .iter()
            .enumerate()
            .map(|(i, v)| if (first + i as i64) % 2 == 0 { *v } else { -*v })
            .collect();
        let mut abs_prefix = Vec::with_capacity(samples.len() + 1);
        let mut acc = KahanSum::default();
        abs_prefix.push(0.0);
        for v in &samples {
            acc.add(v.abs());
            abs_prefix.push(acc.value());
        }
        let inside_hull = grid
            .hull()
            .is_some_and(|h| h.lo <= f.window().lo && f.window().hi <= h.hi);
        let support = if f.is_compact() && inside_hull {
            let nz: Vec<usize> = (0..samples.len()).filter(|&i| samples[i] != 0.0).collect();
            Some(match (nz.first(), nz.last()) {
                (Some(&a), Some(&b)) => (first + a as i64, first + b as i64),
                _ => (first, first - 1),
            })
        } else {
            None
        };
        let radius = op.truncation_radius();
        let reach = radius / sigma;
        let (window, decay) = if f.is_compact() {
            (f.window().expand(reach), DecayClass::CompactSupport)
        } else {
            let kernel_decay = match op.kernel().decay() {
                KernelDecay::Compact => DecayClass::CompactSupport,
                KernelDecay::Gaussian => DecayClass::Exponential { rate: sigma },
                KernelDecay::Polynomial(q) => DecayClass::Polynomial { order: q },
            };
            (f.window(), f.decay().weaker(kernel_decay))
        };
        let cache = match (op.kernel().family(), quad) {
            (KernelFamily::Sinc, _) | (_, None) => None,
            (_, Some(q)) => ResidueCache::build(op.kernel(), sigma, radius, q),
        };
        Ok(SampledFunction {
            inner: Arc::new(Inner {
                kernel: op.kernel().clone(),
                sigma,
                radius,
                samples,
                alternating,
                abs_prefix,
                first,
                support,
                compact: f.is_compact(),
                window,
                decay,
                label: alloc::format!("S[{}]", f.label()),
                cache,
            }),
        })
    }

    pub fn sigma(&self) -> f64 {
        self.inner.sigma
    }

    pub fn samples(&self) -> &[f64] {
        &self.inner.samples
    }

    /// Effective index range for the stencil at `u = σx`.
    fn range(&self, u: f64) -> Result<(i64, i64, f64)> {
        let s = &self.inner;
        let last = s.first + s.samples.len() as i64 - 1;
        let lo = (u - s.radius).ceil() as i64;
        let hi = (u + s.radius).floor() as i64;
        if s.support.is_none() {
            if lo < s.first {
                return Err(Error::Coverage {
                    lo: lo as f64 / s.sigma,
                    hi: (s.first - 1) as f64 / s.sigma,
                });
            }
            if hi > last {
                return Err(Error::Coverage {
                    lo: (last + 1) as f64 / s.sigma,
                    hi: hi as f64 / s.sigma,
                });
            }
        }
        let (a, b) = match s.support {
            // every nonzero sample is known and the fast sinc sum is cheap:
            // cutting it at the radius would only add an artifact near the
            // edge of the window
            Some(range) if s.kernel.family() == KernelFamily::Sinc => return Ok((range.0, range.1, 0.0)),
            Some((sa, sb)) => (lo.max(sa), hi.min(sb)),
            None => (lo.max(s.first), hi.min(last)),
        };
        let idx = |k: i64| (k - s.first).clamp(0, s.samples.len() as i64) as usize;
        let dropped = s.abs_prefix[idx(a)] + (s.abs_prefix[s.samples.len()] - s.abs_prefix[idx(b + 1)]);
        let tail = if dropped > 0.0 && a <= b {
            s.kernel.envelope(s.radius) * dropped
        } else {
            0.0
        };
        Ok((a, b, tail))
    }

    pub fn eval(&self, x: f64) -> Result<Applied> {
        let s = &self.inner;
        let u = s.sigma * x;
        let (a, b, tail_bound) = self.range(u)?;
        let value = if a > b {
            0.0
        } else {
            let at = |k: i64| s.samples[(k - s.first) as usize];
            match s.kernel.family() {
                KernelFamily::Sinc => {
                    if u.fract() == 0.0 {
                        let k = u as i64;
                        if (a..=b).contains(&k) {
                            at(k)
                        } else {
                            0.0
                        }
                    } else {
                        let acc: KahanSum = (a..=b)
                            .map(|k| s.alternating[(k - s.first) as usize] / (u - k as f64))
                            .collect();
                        kernels::sin_pi(u) / PI * acc.value()
                    }
                }
                _ => {
                    let n = u.floor();
                    let row = s.cache.as_ref().and_then(|c| c.row(u - n).map(|r| (r, c.half)));
                    match row {
                        Some((row, half)) => {
                            let n = n as i64;
                            (a..=b)
                                .map(|k| {
                                    let j = n - k;
                                    if j.abs() <= half {
                                        at(k) * row[(j + half) as usize]
                                    } else {
                                        0.0
                                    }
                                })
                                .sum()
                        }
                        None => (a..=b).map(|k| at(k) * s.kernel.eval(u - k as f64)).sum(),
                    }
                }
            }
        };
        Ok(Applied { value, tail_bound })
    }

    /// `(S_σ^φ f)^{(n)}(x) = σ^n Σ f(σ⁻¹k) φ^{(n)}(σx - k)`.
    pub fn derivative(&self, n: usize, x: f64) -> Result<Option<f64>> {
        let s = &self.inner;
        if n > s.kernel.max_derivative() {
            return Ok(None);
        }
        if n == 0 {
            return self.eval(x).map(|a| Some(a.value));
        }
        let u = s.sigma * x;
        let (a, b, _) = self.range(u)?;
        let scale = s.sigma.powi(n as i32);
        let at = |k: i64| s.samples[(k - s.first) as usize];
        let sum: f64 = match s.kernel.family() {
            KernelFamily::Sinc => {
                // away from the centre, sinc^{(n)}(u-k) = (-1)^k Σ_m (a_m sin πu + b_m cos πu) (u-k)^{-m}
                let (sp, cp) = (kernels::sin_pi(u), kernels::sin_pi(u + 0.5));
                let (sin_c, cos_c) = sinc_derivative_coefficients(n);
                let mut near = KahanSum::default();
                let mut powers = alloc::vec![0.0; n + 2];
                for k in a..=b {
                    let v = u - k as f64;
                    if v.abs() < 2.0 {
                        near.add(at(k) * kernels::sinc_derivative_series(n, v));
                    } else {
                        let w = 1.0 / v;
                        let mut t = s.alternating[(k - s.first) as usize] * w;
                        for acc in &mut powers[1..] {
                            *acc += t;
                            t *= w;
                        }
                    }
                }
                let far: f64 = (1..=n + 1).map(|m| (sin_c[m] * sp + cos_c[m] * cp) * powers[m]).sum();
                near.value() + far
            }
            _ => (a..=b)
                .map(|k| at(k) * s.kernel.derivative(n, u - k as f64).unwrap_or(f64::NAN))
                .sum(),
        };
        Ok(Some(scale * sum))
    }

    /// `S_σ^φ f` as a [`RealFunction`]; stencils that leave the grid evaluate
    /// to NaN, which the norm routines report as an evaluation failure.
    pub fn to_real_function(&self) -> RealFunction {
        let me = self.clone();
        let deriv = self.clone();
        let s = &self.inner;
        RealFunction::new(s.label.clone(), s.window, s.decay, move |x| {
            me.eval(x).map_or(f64::NAN, |a| a.value)
        })
        .with_derivatives(s.kernel.max_derivative(), move |n, x| {
            deriv.derivative(n, x).ok().flatten().unwrap_or(f64::NAN)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step() -> RealFunction {
        RealFunction::constant(1.0, Interval::new(-1.0, 1.0))
    }

    #[test]
    fn sinc_derivative_expansion() {
        for n in 0..6 {
            let (a, b) = sinc_derivative_coefficients(n);
            for &v in &[2.3, -3.7, 11.25, -40.1] {
                let (sp, cp) = (kernels::sin_pi(v), kernels::sin_pi(v + 0.5));
                let expanded: f64 = (0..=n + 1).map(|m| (a[m] * sp + b[m] * cp) * v.powi(-(m as i32))).sum();
                let direct = kernels::sinc_derivative_from_trig(n, v, sp, cp);
                assert!((expanded - direct).abs() < 1e-12 * (1.0 + direct.abs()), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn sinc_interpolates_at_nodes() {
        let f = RealFunction::new("f", Interval::new(-3.0, 3.0), DecayClass::CompactSupport, |x: f64| {
            (1.0 - x * x / 9.0) * (2.0 * x).cos()
        });
        let op = SamplingOperator::for_function(Kernel::sinc(), 4.0, &f, 1e-4).unwrap();
        let sf = op.bind(&f).unwrap();
        for k in -12..=12 {
            let x = k as f64 / 4.0;
            assert_eq!(sf.eval(x).unwrap().value, f.eval(x));
        }
    }

    #[test]
    fn bspline_reproduces_constants() {
        let one = RealFunction::constant(1.0, Interval::new(-50.0, 50.0));
        for r in 2..=4 {
            let op = SamplingOperator::for_function(Kernel::bspline(r).unwrap(), 8.0, &one, 1e-12).unwrap();
            let sf = op.bind(&one).unwrap();
            for i in 0..100 {
                let x = -5.0 + 0.1037 * i as f64;
                assert!((sf.eval(x).unwrap().value - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coverage_is_checked() {
        let f = RealFunction::new(
            "g",
            Interval::new(-1.0, 1.0),
            DecayClass::Exponential { rate: 1.0 },
            |x: f64| (-x * x).exp(),
        );
        let grid = make_uniform_grid(4.0, Interval::new(-2.0, 2.0), DEFAULT_GAMMA).unwrap();
        let op = SamplingOperator::new(Kernel::gaussian(), grid, 1e-16).unwrap();
        assert!(op.apply(&f, 0.0).is_ok());
        assert!(matches!(op.apply(&f, 1.9), Err(Error::Coverage { .. })));
        // compact functions inside the hull need no coverage beyond it
        assert!(op.apply(&step(), 1.9).is_ok());
    }

    #[test]
    fn cached_and_direct_paths_agree() {
        let f = step();
        let op = SamplingOperator::for_function(Kernel::gaussian(), 8.0, &f, 1e-16).unwrap();
        let quad = panels_for(8.0, &QuadratureSpec::default());
        let plain = op.bind(&f).unwrap();
        let cached = op.bind_for_quadrature(&f, &quad).unwrap();
        assert!(cached.inner.cache.is_some());
        let rule = quad.rule();
        for (x, _) in rule.mapped(0.25, 0.25 + 1.0 / quad.panels as f64) {
            let (a, b) = (plain.eval(x).unwrap().value, cached.eval(x).unwrap().value);
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sinc_derivative_matches_differences() {
        let f = step();
        let op = SamplingOperator::for_function(Kernel::sinc(), 8.0, &f, 1e-4).unwrap();
        let sf = op.bind(&f).unwrap();
        let h = 1e-5;
        for &x in &[0.03, 0.51, 1.7, 4.2] {
            let fd = (sf.eval(x + h).unwrap().value - sf.eval(x - h).unwrap().value) / (2.0 * h);
            let d = sf.derivative(1, x).unwrap().unwrap();
            assert!((fd - d).abs() < 1e-5 * (1.0 + d.abs()), "x={x} {fd} {d}");
        }
    }

    #[test]
    fn zero_function_has_zero_error() {
        let op = SamplingOperator::for_function(Kernel::sinc(), 8.0, &RealFunction::zero(), 1e-4).unwrap();
        let e = operator_error(&op, &RealFunction::zero(), 2.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(e, 0.0);
    }
}
