//! Symmetric positive-definite banded systems.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Symmetric matrix stored by its lower band: entry `(i, j)` with
/// `i - bw <= j <= i`.
#[derive(Debug, Clone)]
pub struct SymBanded {
    n: usize,
    bw: usize,
    lower: Vec<f64>,
}

impl SymBanded {
    pub fn zeros(n: usize, bw: usize) -> Self {
        SymBanded {
            n,
            bw,
            lower: vec![0.0; n * (bw + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.bw
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        (i - j <= self.bw).then(|| i * (self.bw + 1) + (i - j))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.lower[s])
    }

    /// Sets `(i, j)` and its mirror. Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.lower[s] = v;
    }

    fn row_range(&self, i: usize) -> core::ops::Range<usize> {
        i.saturating_sub(self.bw)..(i + self.bw + 1).min(self.n)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Banded Cholesky factorization; `None` when a pivot is not positive.
    pub fn cholesky(&self) -> Option<BandedCholesky> {
        let (n, bw) = (self.n, self.bw);
        let mut l = SymBanded::zeros(n, bw);
        for i in 0..n {
            let start = i.saturating_sub(bw);
            for j in start..=i {
                let k0 = start.max(j.saturating_sub(bw));
                let mut s = self.get(i, j);
                for k in k0..j {
                    s -= l.lower[i * (bw + 1) + (i - k)] * l.lower[j * (bw + 1) + (j - k)];
                }
                if i == j {
                    if !(s > 0.0) || !s.is_finite() {
                        return None;
                    }
                    l.lower[i * (bw + 1)] = s.sqrt();
                } else {
                    l.lower[i * (bw + 1) + (i - j)] = s / l.lower[j * (bw + 1)];
                }
            }
        }
        Some(BandedCholesky { l })
    }
}

/// Lower factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    l: SymBanded,
}

impl BandedCholesky {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.l.lower[i * (self.l.bw + 1) + (i - j)]
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, bw) = (self.l.n, self.l.bw);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(bw)..i {
                s -= self.at(i, k) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..(i + bw + 1).min(n) {
                s -= self.at(k, i) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        y
    }

    /// Hager's estimate of `‖A⁻¹‖₁` (exact for small systems in practice).
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.l.n;
        if n == 0 {
            return 0.0;
        }
        let mut x = vec![1.0 / n as f64; n];
        let mut estimate = 0.0;
        for _ in 0..5 {
            let y = self.solve(&x);
            estimate = y.iter().map(|v| v.abs()).sum();
            let signs: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve(&signs);
            let (jmax, zmax) =
                z.iter().enumerate().fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (j, v)| if v.abs() > acc.1 { (j, v.abs()) } else { acc },
                );
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![0.0; n];
            x[jmax] = 1.0;
        }
        estimate
    }
}
