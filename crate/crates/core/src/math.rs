//! Small numeric helpers shared across the solvers.

use alloc::vec::Vec;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

/// Turns unnormalized log weights into a probability vector with a single
/// exponentiation pass.
pub(crate) fn softmax(log_weights: &[f64]) -> Vec<f64> {
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = log_weights.iter().map(|&l| exp(l - max)).collect();
    let total: f64 = out.iter().sum();
    for v in &mut out {
        *v /= total;
    }
    out
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| f64::max(m, libm::fabs(*x)))
}
