//! Iterated Aitken Δ² extrapolation of partial sums.

use alloc::vec::Vec;

use num_complex::Complex64;

fn aitken(s0: f64, s1: f64, s2: f64) -> f64 {
    let d1 = s1 - s0;
    let d2 = s2 - s1;
    let den = d2 - d1;
    if den == 0.0 || !den.is_finite() {
        return s2;
    }
    let v = s2 - d2 * d2 / den;
    if v.is_finite() {
        v
    } else {
        s2
    }
}

/// Applies Δ² repeatedly until a single value is left. An even-length
/// input drops its oldest element so every level stays well defined.
pub fn iterated_aitken(sums: &[f64]) -> f64 {
    let start = if sums.len().is_multiple_of(2) { 1 } else { 0 };
    let mut level: Vec<f64> = sums[start..].to_vec();
    while level.len() >= 3 {
        level = level.windows(3).map(|w| aitken(w[0], w[1], w[2])).collect();
    }
    level.last().copied().unwrap_or(f64::NAN)
}

/// Componentwise extrapolation of complex partial sums.
pub fn iterated_aitken_complex(sums: &[Complex64]) -> Complex64 {
    let re: Vec<f64> = sums.iter().map(|s| s.re).collect();
    let im: Vec<f64> = sums.iter().map(|s| s.im).collect();
    Complex64::new(iterated_aitken(&re), iterated_aitken(&im))
}
