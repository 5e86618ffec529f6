use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Standard normal CDF, `erfc(-x/√2)/2`.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `E[(b + beta·Z)^+]` for `Z ~ N(m, s²)`.
///
/// With `μ = b + beta·m` and `σ = |beta|·s` this is `μΦ(μ/σ) + σφ(μ/σ)`, and
/// `max(μ, 0)` when `σ = 0`.
pub fn positive_part_gaussian_mean(b: f64, beta: f64, m: f64, s: f64) -> Result<f64> {
    if s < 0.0 || s.is_nan() {
        return Err(Error::domain(format!("standard deviation must be >= 0, got {s}")));
    }
    let mu = b + beta * m;
    let sd = beta.abs() * s;
    Ok(positive_part_normal(mu, sd))
}

/// `E[(μ + σZ)^+]`, `Z` standard normal, `σ >= 0`. Unchecked variant for
/// inner loops.
#[inline]
pub(crate) fn positive_part_normal(mu: f64, sd: f64) -> f64 {
    if sd == 0.0 {
        return mu.max(0.0);
    }
    let d = mu / sd;
    mu * norm_cdf(d) + sd * norm_pdf(d)
}
