use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::funcspace::{pow_abs, DecayClass, Interval, RealFunction};
use crate::numeric::fft::fft_in_place;
use crate::numeric::KahanSum;

/// Largest share of the sampled energy allowed in the upper half of the
/// discrete spectrum before the grid is declared too coarse.
const ALIAS_TOLERANCE: f64 = 1e-3;
/// Lagrange stencil used to evaluate between fine-grid nodes.
const STENCIL: i64 = 12;

/// Fine periodic grid for the discrete Fourier transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    /// Power of two.
    pub samples_per_unit: usize,
    /// Length of the periodization box, a power of two.
    pub period: f64,
}

impl SpectralGrid {
    /// At least 16 samples per period of the highest kept frequency, and a
    /// box eight times as wide as `f`'s window.
    pub fn for_function(f: &RealFunction, sigma: f64) -> Self {
        let spu = ((16.0 * sigma).ceil() as usize).max(1024).next_power_of_two();
        let period = ((8.0 * f.window().width()).max(16.0).ceil() as usize).next_power_of_two();
        SpectralGrid {
            samples_per_unit: spu,
            period: period as f64,
        }
    }

    fn len(&self) -> usize {
        self.samples_per_unit * self.period as usize
    }
}

/// `g_σ`: the low-pass projection of `f` onto `|ξ| <= σ`, held as values on a
/// fine periodic grid together with its discrete spectrum.
#[derive(Clone)]
pub struct BandlimitedFunction {
    inner: Arc<Inner>,
}

struct Inner {
    sigma: f64,
    start: f64,
    spacing: f64,
    values: Vec<f64>,
    spectrum: Vec<Complex64>,
    label: String,
}

impl core::fmt::Debug for BandlimitedFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BandlimitedFunction")
            .field("label", &self.inner.label)
            .field("sigma", &self.inner.sigma)
            .field("nodes", &self.inner.values.len())
            .finish()
    }
}

/// Sample of `f` at `x`; at a listed breakpoint the mean of the one-sided
/// limits, which is what the Fourier series converges to.
fn fourier_sample(f: &RealFunction, x: f64) -> Result<f64> {
    let scale = x.abs().max(1.0);
    let at_break = f.breakpoints().iter().any(|b| (b - x).abs() <= 1e-13 * scale);
    if at_break {
        let eps = 1e-10 * scale;
        Ok(0.5 * (f.try_eval(x - eps)? + f.try_eval(x + eps)?))
    } else {
        f.try_eval(x)
    }
}

/// Low-pass projection of `f` onto frequencies `|ξ| <= σ`.
pub fn bandlimited_project(f: &RealFunction, sigma: f64, res: &SpectralGrid) -> Result<BandlimitedFunction> {
    if !(sigma > 0.0) {
        return Err(Error::invalid("sigma", "must be positive"));
    }
    let n = res.len();
    if !n.is_power_of_two() {
        return Err(Error::invalid("res", "grid size must be a power of two"));
    }
    let spacing = 1.0 / res.samples_per_unit as f64;
    let start = ((f.window().center() - 0.5 * res.period) / spacing).floor() * spacing;
    let mut data = (0..n)
        .map(|j| fourier_sample(f, start + j as f64 * spacing).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    fft_in_place(&mut data, false);

    let total: KahanSum = data.iter().map(|c| c.norm_sqr()).collect();
    let high: KahanSum = data
        .iter()
        .enumerate()
        .filter(|(m, _)| signed(*m, n).unsigned_abs() as usize > n / 4)
        .map(|(_, c)| c.norm_sqr())
        .collect();
    if total.value() > 0.0 {
        let fraction = high.value() / total.value();
        if fraction > ALIAS_TOLERANCE {
            return Err(Error::Resolution { fraction });
        }
    }
    // a bin sitting exactly on the cut-off keeps half its weight, as the
    // truncated Fourier integral does at a jump of its indicator
    let edge = 1e-12 * sigma.max(1.0);
    for (m, c) in data.iter_mut().enumerate() {
        let xi = (signed(m, n) as f64 / res.period).abs();
        if xi > sigma + edge {
            *c = Complex64::new(0.0, 0.0);
        } else if xi >= sigma - edge {
            *c *= 0.5;
        }
    }
    let spectrum = data.clone();
    let values = inverse_real(data);
    Ok(BandlimitedFunction {
        inner: Arc::new(Inner {
            sigma,
            start,
            spacing,
            values,
            spectrum,
            label: alloc::format!("P{sigma}[{}]", f.label()),
        }),
    })
}

fn signed(m: usize, n: usize) -> i64 {
    if m < n / 2 {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

fn inverse_real(mut data: Vec<Complex64>) -> Vec<f64> {
    let n = data.len() as f64;
    fft_in_place(&mut data, true);
    data.into_iter().map(|c| c.re / n).collect()
}

impl BandlimitedFunction {
    pub fn sigma(&self) -> f64 {
        self.inner.sigma
    }

    /// The periodization box.
    pub fn support(&self) -> Interval {
        let s = &self.inner;
        Interval::new(s.start, s.start + s.values.len() as f64 * s.spacing)
    }

    fn period(&self) -> f64 {
        self.inner.values.len() as f64 * self.inner.spacing
    }

    /// Node values of the function with spectrum `multiplier(ξ)·ĝ(ξ)`.
    fn transformed(&self, multiplier: impl Fn(f64) -> Complex64) -> Vec<f64> {
        let n = self.inner.spectrum.len();
        let period = self.period();
        let data = self
            .inner
            .spectrum
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if c.norm_sqr() == 0.0 {
                    *c
                } else {
                    c * multiplier(signed(m, n) as f64 / period)
                }
            })
            .collect();
        inverse_real(data)
    }

    fn derivative_values(&self, order: usize) -> Vec<f64> {
        if order == 0 {
            return self.inner.values.clone();
        }
        self.transformed(|xi| Complex64::new(0.0, 2.0 * PI * xi).powu(order as u32))
    }

    fn fractional_values(&self, s: f64) -> Vec<f64> {
        self.transformed(|xi| Complex64::new((2.0 * PI * xi.abs()).powf(s), 0.0))
    }

    fn node_norm(&self, values: &[f64], p: f64) -> f64 {
        let acc: KahanSum = values.iter().map(|v| pow_abs(*v, p)).collect();
        (acc.value() * self.inner.spacing).powf(1.0 / p)
    }

    /// `‖g‖_p` by the trapezoid rule on the fine grid (spectrally accurate for
    /// the periodized band-limited function).
    pub fn norm(&self, p: f64) -> f64 {
        self.node_norm(&self.inner.values, p)
    }

    /// `|g|_{W_p^n} = ‖g^{(n)}‖_p` via the spectral derivative.
    pub fn sobolev_seminorm(&self, n: usize, p: f64) -> f64 {
        self.node_norm(&self.derivative_values(n), p)
    }

    /// `‖(-Δ)^{s/2} g‖_p`, the multiplier `(2π|ξ|)^s`.
    pub fn fractional_seminorm(&self, s: f64, p: f64) -> f64 {
        self.node_norm(&self.fractional_values(s), p)
    }

    fn interpolate(values: &[f64], start: f64, spacing: f64, x: f64) -> f64 {
        let n = values.len() as i64;
        let t = (x - start) / spacing;
        if t < 0.0 || t > n as f64 {
            return 0.0;
        }
        let i0 = t.floor() as i64;
        let frac = t - i0 as f64;
        let at = |i: i64| values[i.rem_euclid(n) as usize];
        if frac == 0.0 {
            return at(i0);
        }
        let lo = -(STENCIL / 2 - 1);
        let hi = STENCIL / 2;
        let mut acc = 0.0;
        for j in lo..=hi {
            let mut w = 1.0;
            for m in lo..=hi {
                if m != j {
                    w *= (frac - m as f64) / (j - m) as f64;
                }
            }
            acc += w * at(i0 + j);
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s = &self.inner;
        Self::interpolate(&s.values, s.start, s.spacing, x)
    }

    fn function_from(&self, label: String, values: Vec<f64>) -> RealFunction {
        let (start, spacing) = (self.inner.start, self.inner.spacing);
        RealFunction::new(label, self.support(), DecayClass::CompactSupport, move |x| {
            Self::interpolate(&values, start, spacing, x)
        })
    }

    /// `g` on its periodization box, zero outside.
    pub fn to_real_function(&self) -> RealFunction {
        self.function_from(self.inner.label.clone(), self.inner.values.clone())
    }

    pub fn derivative_function(&self, n: usize) -> RealFunction {
        self.function_from(alloc::format!("D^{n} {}", self.inner.label), self.derivative_values(n))
    }

    pub fn fractional_function(&self, s: f64) -> RealFunction {
        self.function_from(
            alloc::format!("(-Δ)^({s}/2) {}", self.inner.label),
            self.fractional_values(s),
        )
    }
}
