use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn symmetric(half_width: f64) -> Self {
        Interval::new(-half_width, half_width)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    pub fn expand(&self, margin: f64) -> Interval {
        Interval::new(self.lo - margin, self.hi + margin)
    }

    /// Same center, width scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Interval {
        let c = self.center();
        let h = 0.5 * self.width() * factor;
        Interval::new(c - h, c + h)
    }
}

/// How `|f|` behaves outside its window; drives the tail model in
/// [`lp_norm`](super::lp_norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// `f` vanishes identically outside the window.
    CompactSupport,
    /// `|f(x)| ≲ e^{-rate·dist(x, window)}`.
    Exponential { rate: f64 },
    /// `|f(x)| ≲ |x - c|^{-order}` with `c` the window center.
    Polynomial { order: f64 },
    /// Nothing is known; only the window is integrated.
    None,
}

impl DecayClass {
    fn weakness(&self) -> u8 {
        match self {
            DecayClass::CompactSupport => 0,
            DecayClass::Exponential { .. } => 1,
            DecayClass::Polynomial { .. } => 2,
            DecayClass::None => 3,
        }
    }

    /// The slower of two decay classes (what a sum of the two functions has).
    pub fn weaker(self, other: DecayClass) -> DecayClass {
        use DecayClass::*;
        match (self, other) {
            (Exponential { rate: a }, Exponential { rate: b }) => Exponential { rate: a.min(b) },
            (Polynomial { order: a }, Polynomial { order: b }) => Polynomial { order: a.min(b) },
            (a, b) => {
                if a.weakness() >= b.weakness() {
                    a
                } else {
                    b
                }
            }
        }
    }
}

type EvalFn = dyn Fn(f64) -> f64 + Send + Sync;
type DerivativeFn = dyn Fn(usize, f64) -> f64 + Send + Sync;
type TailFn = dyn Fn(f64, Interval) -> f64 + Send + Sync;

/// A finite-valued function on ℝ together with the metadata the quadrature
/// needs: an integration window, a decay class for the tails, known
/// breakpoints (jumps or kinks), and optionally exact derivatives.
///
/// Values are taken pointwise; two functions that differ at a single point
/// are different functions here.
#[derive(Clone)]
pub struct RealFunction {
    eval: Arc<EvalFn>,
    window: Interval,
    decay: DecayClass,
    label: String,
    breakpoints: Vec<f64>,
    derivative: Option<(usize, Arc<DerivativeFn>)>,
    tail_mass: Option<Arc<TailFn>>,
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction")
            .field("label", &self.label)
            .field("window", &self.window)
            .field("decay", &self.decay)
            .field("breakpoints", &self.breakpoints.len())
            .field("derivatives", &self.derivative.as_ref().map(|d| d.0))
            .finish()
    }
}

impl RealFunction {
    /// For [`DecayClass::CompactSupport`] the evaluator is wrapped so that it
    /// returns exactly zero outside `window`.
    pub fn new<F>(label: impl Into<String>, window: Interval, decay: DecayClass, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let eval: Arc<EvalFn> = if decay == DecayClass::CompactSupport {
            Arc::new(move |x| if window.contains(x) { eval(x) } else { 0.0 })
        } else {
            Arc::new(eval)
        };
        RealFunction {
            eval,
            window,
            decay,
            label: label.into(),
            breakpoints: Vec::new(),
            derivative: None,
            tail_mass: None,
        }
    }

    pub fn zero() -> Self {
        RealFunction::new("0", Interval::new(0.0, 0.0), DecayClass::CompactSupport, |_| 0.0)
            .with_derivatives(usize::MAX, |_, _| 0.0)
    }

    pub fn constant(c: f64, window: Interval) -> Self {
        RealFunction::new("const", window, DecayClass::CompactSupport, move |_| c)
            .with_breakpoints([window.lo, window.hi])
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    /// Exact derivatives `f^{(n)}(x)` for `1 <= n <= max_order`.
    pub fn with_derivatives<F>(mut self, max_order: usize, d: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some((max_order, Arc::new(d)));
        self
    }

    /// Analytic tail: `mass(p, I)` returns `∫_{ℝ∖I} |f|^p` for any `I ⊇ window`.
    pub fn with_tail_mass<F>(mut self, mass: F) -> Self
    where
        F: Fn(f64, Interval) -> f64 + Send + Sync + 'static,
    {
        self.tail_mass = Some(Arc::new(mass));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Replaces window and decay class (values are unchanged).
    pub fn with_window(mut self, window: Interval, decay: DecayClass) -> Self {
        if decay == DecayClass::CompactSupport && self.decay != DecayClass::CompactSupport {
            let inner = self.eval.clone();
            self.eval = Arc::new(move |x| if window.contains(x) { inner(x) } else { 0.0 });
        }
        self.window = window;
        self.decay = decay;
        self.tail_mass = None;
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn try_eval(&self, x: f64) -> Result<f64> {
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                label: self.label.clone(),
                x,
            })
        }
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_compact(&self) -> bool {
        self.decay == DecayClass::CompactSupport
    }

    pub fn max_derivative(&self) -> Option<usize> {
        self.derivative.as_ref().map(|d| d.0)
    }

    /// `f^{(n)}(x)` when exact derivatives of that order are attached.
    pub fn derivative(&self, n: usize, x: f64) -> Option<f64> {
        if n == 0 {
            return Some(self.eval(x));
        }
        match &self.derivative {
            Some((max, d)) if n <= *max => Some(d(n, x)),
            _ => None,
        }
    }

    pub(crate) fn tail_mass(&self, p: f64, extent: Interval) -> Option<f64> {
        self.tail_mass.as_ref().map(|t| t(p, extent))
    }

    /// `x ↦ f^{(n)}(x)` as a function; `None` without exact derivatives.
    pub fn derivative_function(&self, n: usize) -> Option<RealFunction> {
        if n == 0 {
            return Some(self.clone());
        }
        let (max, d) = self.derivative.clone()?;
        if n > max {
            return None;
        }
        let deriv = RealFunction {
            eval: Arc::new(move |x| d(n, x)),
            window: self.window,
            decay: self.decay,
            label: alloc::format!("D^{n} {}", self.label),
            breakpoints: self.breakpoints.clone(),
            derivative: None,
            tail_mass: None,
        };
        Some(deriv)
    }

    pub fn scaled(&self, c: f64) -> RealFunction {
        let inner = self.eval.clone();
        let mut out = RealFunction {
            eval: Arc::new(move |x| c * inner(x)),
            window: self.window,
            decay: self.decay,
            label: alloc::format!("{c}·{}", self.label),
            breakpoints: self.breakpoints.clone(),
            derivative: None,
            tail_mass: None,
        };
        if let Some((max, d)) = self.derivative.clone() {
            out.derivative = Some((max, Arc::new(move |n, x| c * d(n, x))));
        }
        if let Some(t) = self.tail_mass.clone() {
            out.tail_mass = Some(Arc::new(move |p, i| c.abs().powf(p) * t(p, i)));
        }
        out
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &RealFunction, b: f64) -> RealFunction {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        let mut breakpoints = self.breakpoints.clone();
        breakpoints.extend_from_slice(&other.breakpoints);
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        let derivative = match (&self.derivative, &other.derivative) {
            (Some((m1, d1)), Some((m2, d2))) => {
                let (d1, d2) = (d1.clone(), d2.clone());
                let d: Arc<DerivativeFn> = Arc::new(move |n, x| a * d1(n, x) + b * d2(n, x));
                Some(((*m1).min(*m2), d))
            }
            _ => None,
        };
        RealFunction {
            eval: Arc::new(move |x| a * f(x) + b * g(x)),
            window: self.window.hull(&other.window),
            decay: self.decay.weaker(other.decay),
            label: alloc::format!("{a}·{} + {b}·{}", self.label, other.label),
            breakpoints,
            derivative,
            tail_mass: None,
        }
    }

    pub fn sub(&self, other: &RealFunction) -> RealFunction {
        self.combine(1.0, other, -1.0)
            .with_label(alloc::format!("{} - {}", self.label, other.label))
    }

    pub fn add(&self, other: &RealFunction) -> RealFunction {
        self.combine(1.0, other, 1.0)
            .with_label(alloc::format!("{} + {}", self.label, other.label))
    }

    /// `x ↦ |f(x)|`-free pointwise map `x ↦ op(f(x))`, keeping the metadata
    /// but dropping derivatives.
    pub fn map_values<F>(&self, label: impl Into<String>, op: F) -> RealFunction
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let inner = self.eval.clone();
        RealFunction {
            eval: Arc::new(move |x| op(inner(x))),
            window: self.window,
            decay: self.decay,
            label: label.into(),
            breakpoints: self.breakpoints.clone(),
            derivative: None,
            tail_mass: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_support_is_enforced() {
        let f = RealFunction::new("one", Interval::new(0.0, 1.0), DecayClass::CompactSupport, |_| 1.0);
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.eval(1.0 + 1e-12), 0.0);
        assert_eq!(f.eval(-3.0), 0.0);
    }

    #[test]
    fn decay_combination_keeps_slowest() {
        let e = DecayClass::Exponential { rate: 2.0 };
        let p = DecayClass::Polynomial { order: 3.0 };
        assert_eq!(DecayClass::CompactSupport.weaker(e), e);
        assert_eq!(e.weaker(p), p);
        assert_eq!(
            p.weaker(DecayClass::Polynomial { order: 1.0 }),
            DecayClass::Polynomial { order: 1.0 }
        );
        assert_eq!(p.weaker(DecayClass::None), DecayClass::None);
    }

    #[test]
    fn non_finite_evaluation_names_abscissa() {
        let f = RealFunction::new("pole", Interval::new(-1.0, 1.0), DecayClass::None, |x| 1.0 / x);
        match f.try_eval(0.0) {
            Err(Error::Evaluation { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
