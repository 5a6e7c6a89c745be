//! Iterative radix-2 FFT.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// In-place transform `X_m = Σ_n x_n e^{∓2πi mn/N}`; `inverse` selects the
/// `+` sign and does not rescale. Panics unless the length is a power of two.
pub fn fft_in_place(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} is not a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let angle = sign * 2.0 * PI / len as f64;
        // Twiddles from direct evaluation rather than repeated rotation to keep
        // the error flat for the long transforms used in projection.
        let twiddles: Vec<Complex64> = (0..len / 2)
            .map(|k| Complex64::from_polar(1.0, angle * k as f64))
            .collect();
        for chunk in data.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
}
