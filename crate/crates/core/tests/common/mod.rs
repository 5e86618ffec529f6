#![allow(dead_code)]

use statrs::distribution::{ContinuousCDF, Normal};

pub fn phi(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// `e^{-R_T} E(S0 e^{X} - K)^+` for `X ~ N(R_T - σ²T/2, σ²T)`.
pub fn black_scholes_call(s0: f64, k: f64, r_int: f64, sigma: f64, t: f64) -> f64 {
    let sd = sigma * t.sqrt();
    let fwd = s0 * r_int.exp();
    let d1 = ((fwd / k).ln() + 0.5 * sd * sd) / sd;
    (-r_int).exp() * (fwd * phi(d1) - k * phi(d1 - sd))
}

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// `Σ_ij w_i w_j min(u_i, u_j)` by the double sum.
pub fn brute_variance(u: &[f64], w: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..u.len() {
        for j in 0..u.len() {
            acc += w[i] * w[j] * u[i].min(u[j]);
        }
    }
    acc
}
