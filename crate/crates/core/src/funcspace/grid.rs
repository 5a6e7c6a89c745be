use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::Interval;
use crate::error::{Error, Result};

/// Separation constant used when the caller does not pick one.
pub const DEFAULT_GAMMA: f64 = 0.49;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    Uniform,
    /// Base points `j + u_j` with `|u_j| <= epsilon < 1/4`, drawn from a
    /// ChaCha8 stream seeded with `seed`.
    KadecPerturbed {
        epsilon: f64,
        seed: u64,
    },
}

/// A finite sampling set `X_σ`: the points of `σ⁻¹(j + u_j)` that fall in the
/// enumeration window, `j` running over consecutive integers.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSet {
    points: Vec<f64>,
    sigma: f64,
    gamma: f64,
    kind: GridKind,
    first_index: i64,
}

impl GridSet {
    fn checked(points: Vec<f64>, sigma: f64, gamma: f64, kind: GridKind, first_index: i64) -> Result<Self> {
        let grid = GridSet {
            points,
            sigma,
            gamma,
            kind,
            first_index,
        };
        let required = 2.0 * gamma / sigma;
        let min_gap = grid.min_gap();
        if !(min_gap > required) {
            return Err(Error::Separation { min_gap, required });
        }
        Ok(grid)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Integer label `j` of the first point.
    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.kind == GridKind::Uniform
    }

    /// Smallest distance between neighbours; `+∞` for fewer than two points.
    pub fn min_gap(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// `[first point, last point]`.
    pub fn hull(&self) -> Option<Interval> {
        Some(Interval::new(*self.points.first()?, *self.points.last()?))
    }

    /// Points in the dilated coordinate `σξ` (the σ = 1 base grid).
    pub fn base_points(&self) -> Vec<f64> {
        self.points.iter().map(|x| x * self.sigma).collect()
    }
}

fn index_range(sigma: f64, window: Interval) -> Result<(i64, i64)> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::invalid("sigma", "must be positive and finite"));
    }
    let lo = (window.lo * sigma).ceil() as i64;
    let hi = (window.hi * sigma).floor() as i64;
    Ok((lo, hi))
}

/// `{σ⁻¹k : k ∈ ℤ, σ⁻¹k ∈ window}`.
pub fn make_uniform_grid(sigma: f64, window: Interval, gamma: f64) -> Result<GridSet> {
    if !(gamma > 0.0) {
        return Err(Error::invalid("gamma", "must be positive"));
    }
    if gamma >= 0.5 {
        return Err(Error::Separation {
            min_gap: 1.0 / sigma,
            required: 2.0 * gamma / sigma,
        });
    }
    let (lo, hi) = index_range(sigma, window)?;
    let points = (lo..=hi).map(|k| k as f64 / sigma).collect();
    GridSet::checked(points, sigma, gamma, GridKind::Uniform, lo)
}

/// Kadec-type grid `σ⁻¹(j + u_j)` with `u_j` uniform on `[-ε, ε]`. The
/// indices `j` are those of the uniform grid on the same window; the
/// separation constant is `DEFAULT_GAMMA·(1 - 2ε)`.
pub fn make_kadec_grid(sigma: f64, window: Interval, epsilon: f64, seed: u64) -> Result<GridSet> {
    if !(0.0..0.25).contains(&epsilon) {
        return Err(Error::KadecBound { epsilon });
    }
    let (lo, hi) = index_range(sigma, window)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (lo..=hi)
        .map(|j| {
            let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let u = epsilon * (2.0 * unit - 1.0);
            (j as f64 + u) / sigma
        })
        .collect();
    let gamma = DEFAULT_GAMMA * (1.0 - 2.0 * epsilon);
    GridSet::checked(points, sigma, gamma, GridKind::KadecPerturbed { epsilon, seed }, lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_examples() {
        let g = make_uniform_grid(2.0, Interval::new(-1.0, 1.0), DEFAULT_GAMMA).unwrap();
        assert_eq!(g.points(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(g.first_index(), -2);
        let g = make_uniform_grid(1.0, Interval::new(0.0, 3.5), DEFAULT_GAMMA).unwrap();
        assert_eq!(g.points(), &[0.0, 1.0, 2.0, 3.0]);
        let g = make_uniform_grid(4.0, Interval::new(0.0, 1.0), DEFAULT_GAMMA).unwrap();
        assert!(g.min_gap() == 0.25 && 0.25 > 2.0 * 0.49 / 4.0);
    }

    #[test]
    fn uniform_rejects_half_gamma() {
        let err = make_uniform_grid(1.0, Interval::new(0.0, 3.0), 0.5).unwrap_err();
        assert!(matches!(err, Error::Separation { .. }));
    }

    #[test]
    fn kadec_zero_perturbation_is_uniform() {
        let w = Interval::new(-3.0, 3.0);
        let k = make_kadec_grid(4.0, w, 0.0, 7).unwrap();
        let u = make_uniform_grid(4.0, w, DEFAULT_GAMMA).unwrap();
        assert_eq!(k.points(), u.points());
        assert_eq!(k.gamma(), u.gamma());
    }

    #[test]
    fn kadec_is_reproducible_and_separated() {
        let w = Interval::new(-64.0, 64.0);
        let a = make_kadec_grid(2.0, w, 0.2, 11).unwrap();
        let b = make_kadec_grid(2.0, w, 0.2, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.min_gap() >= 0.6 / 2.0);
        for (i, x) in a.base_points().iter().enumerate() {
            let j = (a.first_index() + i as i64) as f64;
            assert!((x - j).abs() <= 0.2 + 1e-15);
        }
        assert!(matches!(
            make_kadec_grid(1.0, w, 0.25, 0),
            Err(Error::KadecBound { .. })
        ));
    }
}
