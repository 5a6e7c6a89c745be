//! The four kernel families: sinc, B-splines `B_r`, the Gaussian
//! `ψ(x) = e^{-πx²}` and the Riesz kernel `ρ_{s,δ}`.
//!
//! Fourier transforms use `φ̂(ξ) = ∫ φ(y) e^{-2πiξy} dy`.

mod riesz;

use alloc::sync::Arc;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial};
use crate::quadrature::QuadratureSpec;
pub use riesz::RieszTable;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    Sinc,
    BSpline(usize),
    Gaussian,
    Riesz { s: f64, delta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelDecay {
    Compact,
    Gaussian,
    /// `|φ(u)| ≲ |u|^{-order}`.
    Polynomial(f64),
}

#[derive(Debug, Clone)]
pub struct Kernel {
    family: KernelFamily,
    riesz: Option<Arc<RieszTable>>,
}

/// `sin(πx)/(πx)`; exactly 0 at nonzero integers and 1 at 0.
pub fn sinc_eval(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let t = PI * x;
        let t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    if x.fract() == 0.0 {
        return 0.0;
    }
    sin_pi(x) / (PI * x)
}

/// `sin(πx)` with exact zeros at the integers and argument reduction mod 2.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r.fract() == 0.0 {
        return 0.0;
    }
    // r in [-1, 1]; reflect into [-1/2, 1/2] for accuracy
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `n`-th derivative of sinc.
pub fn sinc_derivative(n: usize, u: f64) -> f64 {
    if n == 0 {
        return sinc_eval(u);
    }
    if u.abs() < 2.0 {
        return sinc_derivative_series(n, u);
    }
    sinc_derivative_from_trig(n, u, sin_pi(u), sin_pi(u + 0.5))
}

/// Power series `sinc(u) = Σ (-1)^m (πu)^{2m} / (2m+1)!`, differentiated
/// termwise; used for `|u| < 2`.
pub(crate) fn sinc_derivative_series(n: usize, u: f64) -> f64 {
    let mut acc = 0.0;
    let mut m = n.div_ceil(2);
    loop {
        let k = 2 * m;
        let coeff = PI.powi(k as i32) / ((k + 1) as f64 * factorial(k - n));
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let term = sign * coeff * u.powi((k - n) as i32);
        acc += term;
        if k > n + 8 && term.abs() < 1e-18 * acc.abs().max(1e-300) || k > 120 {
            break;
        }
        m += 1;
    }
    acc
}

/// Forward recurrence `u s^{(n)} + n s^{(n-1)} = π^{n-1} sin(πu + nπ/2)` given
/// `sin(πu)` and `cos(πu)`; stable for `|u| >= 2` and linear in the pair.
pub(crate) fn sinc_derivative_from_trig(n: usize, u: f64, sin_u: f64, cos_u: f64) -> f64 {
    let mut prev = sin_u / (PI * u);
    for j in 1..=n {
        let shifted = match j % 4 {
            0 => sin_u,
            1 => cos_u,
            2 => -sin_u,
            _ => -cos_u,
        };
        prev = (PI.powi(j as i32 - 1) * shifted - j as f64 * prev) / u;
    }
    prev
}

fn check_order(r: usize) -> Result<()> {
    if r < 2 {
        Err(Error::SplineOrder(r))
    } else {
        Ok(())
    }
}

/// `B_r(u) = 1/(r-1)! Σ_{j=0}^r (-1)^j C(r,j) (r/2 + u - j)_+^{r-1}`.
pub fn bspline_eval(r: usize, u: f64) -> Result<f64> {
    check_order(r)?;
    Ok(bspline_derivative(r, 0, u))
}

/// `n`-th derivative of `B_r` for `n <= r - 1` (piecewise constant at `n = r-1`).
fn bspline_derivative(r: usize, n: usize, u: f64) -> f64 {
    let half = r as f64 / 2.0;
    if u.abs() >= half || n >= r {
        return 0.0;
    }
    let power = (r - 1 - n) as i32;
    let mut acc = 0.0;
    for j in 0..=r {
        let t = half + u - j as f64;
        if t > 0.0 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(r, j) * t.powi(power);
        }
    }
    acc / factorial(r - 1 - n)
}

pub fn gaussian_eval(x: f64) -> f64 {
    (-PI * x * x).exp()
}

/// `ψ^{(n)}(x) = (-√π)^n H_n(√π x) e^{-πx²}` with physicists' Hermite `H_n`.
pub fn gaussian_derivative(n: usize, x: f64) -> f64 {
    let y = PI.sqrt() * x;
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    let h = match n {
        0 => h0,
        _ => {
            for k in 1..n {
                let h2 = 2.0 * y * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    (-PI.sqrt()).powi(n as i32) * h * gaussian_eval(x)
}

impl Kernel {
    pub fn sinc() -> Self {
        Kernel {
            family: KernelFamily::Sinc,
            riesz: None,
        }
    }

    pub fn bspline(r: usize) -> Result<Self> {
        check_order(r)?;
        Ok(Kernel {
            family: KernelFamily::BSpline(r),
            riesz: None,
        })
    }

    pub fn gaussian() -> Self {
        Kernel {
            family: KernelFamily::Gaussian,
            riesz: None,
        }
    }

    /// Builds `ρ_{s,δ}` and its interpolation table eagerly.
    pub fn riesz(s: f64, delta: f64, quad: &QuadratureSpec) -> Result<Self> {
        let table = RieszTable::build(s, delta, quad)?;
        Ok(Kernel {
            family: KernelFamily::Riesz { s, delta },
            riesz: Some(Arc::new(table)),
        })
    }

    pub fn from_family(family: KernelFamily, quad: &QuadratureSpec) -> Result<Self> {
        match family {
            KernelFamily::Sinc => Ok(Kernel::sinc()),
            KernelFamily::BSpline(r) => Kernel::bspline(r),
            KernelFamily::Gaussian => Ok(Kernel::gaussian()),
            KernelFamily::Riesz { s, delta } => Kernel::riesz(s, delta, quad),
        }
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match self.family {
            KernelFamily::Sinc => sinc_eval(u),
            KernelFamily::BSpline(r) => bspline_derivative(r, 0, u),
            KernelFamily::Gaussian => gaussian_eval(u),
            KernelFamily::Riesz { .. } => self.riesz_table().eval(u),
        }
    }

    fn riesz_table(&self) -> &RieszTable {
        self.riesz.as_deref().expect("Riesz kernel without table")
    }

    /// `φ^{(n)}(u)` where an exact formula is available.
    pub fn derivative(&self, n: usize, u: f64) -> Option<f64> {
        match self.family {
            KernelFamily::Sinc => Some(sinc_derivative(n, u)),
            KernelFamily::BSpline(r) => (n < r).then(|| bspline_derivative(r, n, u)),
            KernelFamily::Gaussian => Some(gaussian_derivative(n, u)),
            KernelFamily::Riesz { .. } => (n == 0).then(|| self.eval(u)),
        }
    }

    /// Highest derivative order [`Kernel::derivative`] supports.
    pub fn max_derivative(&self) -> usize {
        match self.family {
            KernelFamily::Sinc | KernelFamily::Gaussian => usize::MAX,
            KernelFamily::BSpline(r) => r - 1,
            KernelFamily::Riesz { .. } => 0,
        }
    }

    /// `φ̂(ξ)`.
    pub fn fourier_eval(&self, xi: f64) -> Option<f64> {
        Some(match self.family {
            KernelFamily::Sinc => {
                if xi.abs() < 0.5 {
                    1.0
                } else if xi.abs() == 0.5 {
                    0.5
                } else {
                    0.0
                }
            }
            KernelFamily::BSpline(r) => sinc_eval(xi).powi(r as i32),
            KernelFamily::Gaussian => gaussian_eval(xi),
            KernelFamily::Riesz { s, delta } => riesz::symbol(s, delta, xi),
        })
    }

    /// Half-width of the support, `None` when unbounded.
    pub fn support_radius(&self) -> Option<f64> {
        match self.family {
            KernelFamily::BSpline(r) => Some(r as f64 / 2.0),
            _ => None,
        }
    }

    pub fn decay(&self) -> KernelDecay {
        match self.family {
            KernelFamily::Sinc => KernelDecay::Polynomial(1.0),
            KernelFamily::BSpline(_) => KernelDecay::Compact,
            KernelFamily::Gaussian => KernelDecay::Gaussian,
            KernelFamily::Riesz { s, delta } => KernelDecay::Polynomial(riesz::decay_order(s, delta)),
        }
    }

    /// Interpolatory at the integers: `φ(k) = δ_{k0}`.
    pub fn is_interpolatory(&self) -> bool {
        matches!(self.family, KernelFamily::Sinc | KernelFamily::BSpline(2))
    }

    /// Upper bound for `|φ(u)|` over `|u| >= radius`.
    pub fn envelope(&self, radius: f64) -> f64 {
        let radius = radius.abs();
        match self.family {
            KernelFamily::Sinc => (1.0 / (PI * radius)).min(1.0),
            KernelFamily::BSpline(r) => {
                if radius >= r as f64 / 2.0 {
                    0.0
                } else {
                    1.0
                }
            }
            KernelFamily::Gaussian => gaussian_eval(radius),
            KernelFamily::Riesz { .. } => self.riesz_table().envelope(radius),
        }
    }

    /// Smallest radius whose envelope is within `budget`. Riesz radii are
    /// capped at the interpolation table's extent.
    pub fn truncation_radius(&self, budget: f64) -> f64 {
        let budget = budget.max(1e-300);
        match self.family {
            KernelFamily::Sinc => 1.0 / (PI * budget),
            KernelFamily::BSpline(r) => r as f64 / 2.0,
            KernelFamily::Gaussian => ((1.0 / budget).ln() / PI).max(0.0).sqrt(),
            KernelFamily::Riesz { .. } => self.riesz_table().radius_for(budget),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc_eval(0.0), 1.0);
        for k in 1..50 {
            assert_eq!(sinc_eval(k as f64), 0.0);
            assert_eq!(sinc_eval(-(k as f64)), 0.0);
        }
        assert!((sinc_eval(0.5) - 2.0 / PI).abs() < 1e-16);
        let x = 2e-5;
        assert!((sinc_eval(x) - (PI * x).sin() / (PI * x)).abs() < 1e-15);
    }

    #[test]
    fn sinc_derivatives_match_differences() {
        for &u in &[0.3, 1.7, 2.5, -4.25, 11.1] {
            for n in 1..=4 {
                let h = 1e-4;
                let fd = (sinc_derivative(n - 1, u + h) - sinc_derivative(n - 1, u - h)) / (2.0 * h);
                assert!(
                    (fd - sinc_derivative(n, u)).abs() < 1e-5 * (1.0 + fd.abs()),
                    "n={n} u={u}"
                );
            }
        }
        // across the series / recurrence switch
        let a = sinc_derivative(2, 2.0 - 1e-12);
        let b = sinc_derivative(2, 2.0 + 1e-12);
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn bspline_values() {
        assert_eq!(bspline_eval(2, 0.0).unwrap(), 1.0);
        assert_eq!(bspline_eval(2, 0.5).unwrap(), 0.5);
        assert_eq!(bspline_eval(3, 1.6).unwrap(), 0.0);
        assert!(matches!(bspline_eval(1, 0.0), Err(Error::SplineOrder(1))));
        let spec = QuadratureSpec::new(16, 8, 1e-8).unwrap();
        let mass = integrate(|u| bspline_eval(3, u).unwrap(), -1.5, 1.5, &spec, &[-0.5, 0.5]);
        assert!((mass - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bspline_derivative_is_consistent() {
        let h = 1e-6;
        for &u in &[-1.2, -0.3, 0.4, 1.1] {
            let fd = (bspline_derivative(4, 0, u + h) - bspline_derivative(4, 0, u - h)) / (2.0 * h);
            assert!((fd - bspline_derivative(4, 1, u)).abs() < 1e-8);
        }
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_eval(0.0), 1.0);
        assert!((gaussian_eval(1.0) - (-PI).exp()).abs() < 1e-17);
        let spec = QuadratureSpec::new(16, 8, 1e-8).unwrap();
        let mass = integrate(gaussian_eval, -8.0, 8.0, &spec, &[]);
        assert!((mass - 1.0).abs() < 1e-14);
        assert!((gaussian_derivative(1, 0.7) + 2.0 * PI * 0.7 * gaussian_eval(0.7)).abs() < 1e-15);
        let h = 1e-5;
        let fd = (gaussian_derivative(2, 0.4 + h) - gaussian_derivative(2, 0.4 - h)) / (2.0 * h);
        assert!((fd - gaussian_derivative(3, 0.4)).abs() < 1e-6);
    }

    #[test]
    fn kernel_metadata() {
        let k = Kernel::bspline(4).unwrap();
        assert_eq!(k.support_radius(), Some(2.0));
        assert_eq!(k.eval(2.0), 0.0);
        assert_eq!(k.decay(), KernelDecay::Compact);
        assert!(Kernel::sinc().is_interpolatory());
        assert!(!Kernel::gaussian().is_interpolatory());
        let r = Kernel::gaussian().truncation_radius(1e-16);
        assert!(gaussian_eval(r) <= 1.0000001e-16);
        assert_eq!(Kernel::sinc().fourier_eval(0.2), Some(1.0));
    }
}
