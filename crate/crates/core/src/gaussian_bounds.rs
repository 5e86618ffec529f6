//! Bounds for the Gaussian log-price model `X_u = R_u + σW_u - σ²u/2`.
//!
//! The pair `(X_{u_i}, X̄)` is jointly Gaussian with `Cov(X_{u_i}, X̄) = σ²κ_i`
//! and `Var X̄ = σ²V`, where `κ_i = Σ_j w_j min(u_i, u_j)` and
//! `V = Σ_ij w_i w_j min(u_i, u_j)` are computed from the grid's indicator
//! weights. All three bounds reduce to one-dimensional Gaussian integrals.

use crate::curves::RateCurve;
use crate::error::{Error, Result};
use crate::grids::{GridMode, MonitoringGrid};
use crate::numerics::{
    gaussian_expectation_panels, maximize_scalar, minimize_scalar, norm_cdf, QuadratureRule,
};
use crate::numerics::positive_part_normal;

/// Numerical knobs shared by the bound routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSettings {
    /// Gauss–Legendre nodes per panel for the outer Gaussian integrals.
    pub nodes: usize,
    /// Argument tolerance of the golden-section searches.
    pub opt_tol: f64,
    /// Search interval for the UB1 control parameter `a`.
    pub a_bracket: (f64, f64),
    /// Half-width of the initial LB1 search interval in standard deviations
    /// of `X̄`.
    pub z_sds: f64,
}

impl Default for BoundSettings {
    fn default() -> Self {
        Self { nodes: 64, opt_tol: 1e-8, a_bracket: (0.0, 1.5), z_sds: 6.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    /// `z*` for LB1, `a*` for UB1, none for LB2 or degenerate cases.
    pub argopt: Option<f64>,
    pub evaluations: usize,
}

/// Joint Gaussian description of the log-prices at the grid dates and their
/// indicator-weighted average.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianAvgModel {
    grid: MonitoringGrid,
    sigma: f64,
    integrated: Vec<f64>,
    integrated_maturity: f64,
    log_means: Vec<f64>,
    kappa: Vec<f64>,
    variance: f64,
    mean_avg: f64,
}

/// `Cov(W_u, W̄)` for the grid's indicator weights.
pub fn kappa_of(grid: &MonitoringGrid, u: f64) -> Result<f64> {
    let t = grid.maturity();
    if !(u > 0.0 && u <= t) {
        return Err(Error::domain(format!("date {u} outside (0, {t}]")));
    }
    Ok(match grid.mode() {
        GridMode::Discrete => grid
            .dates()
            .iter()
            .zip(grid.indicator_weights())
            .map(|(&d, &w)| w * d.min(u))
            .sum(),
        GridMode::ContinuousApprox => u - u * u / (2.0 * t),
    })
}

/// `Var W̄` for the grid's indicator weights.
pub fn avg_variance(grid: &MonitoringGrid) -> f64 {
    match grid.mode() {
        GridMode::Discrete => {
            // dates are sorted: Σ_ij w_i w_j min(u_i,u_j) = Σ_i w_i u_i (w_i + 2 Σ_{j>i} w_j)
            let w = grid.indicator_weights();
            let mut tail = 0.0;
            let mut acc = 0.0;
            for (&u, &wi) in grid.dates().iter().zip(w).rev() {
                acc += wi * u * (wi + 2.0 * tail);
                tail += wi;
            }
            acc
        }
        GridMode::ContinuousApprox => grid.maturity() / 3.0,
    }
}

fn all_kappas(grid: &MonitoringGrid) -> Vec<f64> {
    match grid.mode() {
        GridMode::Discrete => {
            let u = grid.dates();
            let w = grid.indicator_weights();
            let n = u.len();
            let mut tail = vec![0.0; n];
            for i in (0..n.saturating_sub(1)).rev() {
                tail[i] = tail[i + 1] + w[i + 1];
            }
            let mut head = 0.0;
            (0..n)
                .map(|i| {
                    head += w[i] * u[i];
                    head + u[i] * tail[i]
                })
                .collect()
        }
        GridMode::ContinuousApprox => {
            let t = grid.maturity();
            grid.dates().iter().map(|&u| u - u * u / (2.0 * t)).collect()
        }
    }
}

/// Builds the Gaussian model for volatility `sigma` on `grid`.
pub fn build_model(curve: &RateCurve, sigma: f64, grid: &MonitoringGrid) -> Result<GaussianAvgModel> {
    GaussianAvgModel::new(curve, sigma, grid)
}

impl GaussianAvgModel {
    pub fn new(curve: &RateCurve, sigma: f64, grid: &MonitoringGrid) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("volatility must be finite and >= 0, got {sigma}")));
        }
        let integrated =
            grid.dates().iter().map(|&u| curve.integrated_rate(u)).collect::<Result<Vec<_>>>()?;
        let integrated_maturity = curve.integrated_rate(grid.maturity())?;
        let log_means: Vec<f64> = integrated
            .iter()
            .zip(grid.dates())
            .map(|(r, u)| r - 0.5 * sigma * sigma * u)
            .collect();
        let mean_avg = log_means.iter().zip(grid.indicator_weights()).map(|(m, w)| m * w).sum();
        Ok(Self {
            kappa: all_kappas(grid),
            variance: avg_variance(grid),
            grid: grid.clone(),
            sigma,
            integrated,
            integrated_maturity,
            log_means,
            mean_avg,
        })
    }

    pub fn grid(&self) -> &MonitoringGrid {
        &self.grid
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `R_{u_i}` at each date.
    pub fn integrated_rates(&self) -> &[f64] {
        &self.integrated
    }

    /// `R_T`.
    pub fn integrated_maturity(&self) -> f64 {
        self.integrated_maturity
    }

    /// `E X_{u_i}`.
    pub fn log_means(&self) -> &[f64] {
        &self.log_means
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// `Var W̄`.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// `E X̄`.
    pub fn mean_avg(&self) -> f64 {
        self.mean_avg
    }

    fn discount(&self) -> f64 {
        (-self.integrated_maturity).exp()
    }

    /// `Σ p_i e^{R_{u_i}}`, the undiscounted expected payoff average per unit
    /// of spot.
    pub fn forward_average(&self) -> f64 {
        self.integrated.iter().zip(self.grid.payoff_weights()).map(|(r, p)| p * r.exp()).sum()
    }

    /// Price of the payoff `S̄` alone, `e^{-R_T} S0 Σ p_i e^{R_{u_i}}`: the
    /// common limit of every bound as `K → 0`.
    pub fn zero_strike_value(&self, s0: f64) -> f64 {
        self.discount() * s0 * self.forward_average()
    }

    fn deterministic_value(&self, c: f64, s0: f64) -> f64 {
        self.discount() * s0 * (self.forward_average() - c).max(0.0)
    }

    /// `LB1(z) = e^{-R_T} S0 E (Σ p_i e^{X_i} - c) 1{X̄ > z}` in closed form.
    pub fn lb1_objective(&self, c: f64, s0: f64, z: f64) -> f64 {
        let sd = self.sigma * self.variance.sqrt();
        let s2 = self.sigma * self.sigma;
        let mut acc = 0.0;
        for ((r, k), p) in self.integrated.iter().zip(&self.kappa).zip(self.grid.payoff_weights())
        {
            acc += p * r.exp() * norm_cdf((self.mean_avg + s2 * k - z) / sd);
        }
        acc -= c * norm_cdf((self.mean_avg - z) / sd);
        self.discount() * s0 * acc
    }

    /// LB1: maximum of [`lb1_objective`](Self::lb1_objective) over `z`.
    pub fn lb1(&self, c: f64, s0: f64, settings: &BoundSettings) -> Result<BoundResult> {
        check_prices(c, s0)?;
        let sd = self.sigma * self.variance.sqrt();
        if sd == 0.0 {
            return Ok(BoundResult {
                value: self.deterministic_value(c, s0),
                argopt: None,
                evaluations: 0,
            });
        }
        let mut lo = self.mean_avg - settings.z_sds * sd;
        let mut hi = self.mean_avg + settings.z_sds * sd;
        let mut evaluations = 0;
        // widen while the maximizer sits on a bracket end
        for _ in 0..8 {
            let r = maximize_scalar(|z| self.lb1_objective(c, s0, z), lo, hi, settings.opt_tol)?;
            evaluations += r.evaluations;
            let width = hi - lo;
            if r.argopt <= lo + settings.opt_tol {
                lo -= width;
            } else if r.argopt >= hi - settings.opt_tol {
                hi += width;
            } else {
                return Ok(BoundResult {
                    value: r.value.max(0.0),
                    argopt: Some(r.argopt),
                    evaluations,
                });
            }
        }
        let r = maximize_scalar(|z| self.lb1_objective(c, s0, z), lo, hi, settings.opt_tol)?;
        Ok(BoundResult {
            value: r.value.max(0.0),
            argopt: Some(r.argopt),
            evaluations: evaluations + r.evaluations,
        })
    }

    /// UB1 objective
    /// `U(a) = e^{-R_T} S0 Σ p_i E (e^{X_i} - c(1 + aX_i - aX̄))^+`.
    pub fn ub1_objective(&self, c: f64, s0: f64, a: f64, settings: &BoundSettings) -> Result<f64> {
        let rule = QuadratureRule::gauss_legendre(settings.nodes)?;
        self.ub1_objective_with(c, s0, a, &rule)
    }

    fn ub1_objective_with(&self, c: f64, s0: f64, a: f64, rule: &QuadratureRule) -> Result<f64> {
        let mut acc = 0.0;
        for i in 0..self.grid.len() {
            let p = self.grid.payoff_weights()[i];
            if p == 0.0 {
                continue;
            }
            acc += p * self.ub1_term(i, c, a, rule)?;
        }
        Ok(self.discount() * s0 * acc)
    }

    /// `E (e^{X_i} - c(1 + aX_i - aX̄))^+` by conditioning on `X_i`.
    fn ub1_term(&self, i: usize, c: f64, a: f64, rule: &QuadratureRule) -> Result<f64> {
        let u = self.grid.dates()[i];
        let m = self.log_means[i];
        let k = self.kappa[i];
        let s = self.sigma * u.sqrt();
        let m_bar = self.mean_avg;
        if s == 0.0 {
            return Ok((m.exp() - c * (1.0 + a * m - a * m_bar)).max(0.0));
        }
        let raw = self.variance - k * k / u;
        if raw < -1e-12 * self.variance.max(1.0) {
            return Err(Error::NegativeVariance(raw, i));
        }
        let cond_sd = self.sigma * raw.max(0.0).sqrt();
        let rho = k / u;
        // conditional mean of the positive-part argument as a function of x:
        // e^x - alpha·x - beta
        let alpha = c * a * (1.0 - rho);
        let beta = c - c * a * m_bar + c * a * rho * m;
        let smoothing = (c * a).abs() * cond_sd;

        let lo = -12.0;
        let hi = s + 12.0;
        let mut breaks = Vec::with_capacity(14);
        for x in convex_exp_linear_roots(alpha, beta) {
            let t = (x - m) / s;
            breaks.push(t);
            let slope = (x.exp() - alpha).abs() * s;
            if smoothing > 0.0 && slope > 0.0 {
                let width = smoothing / slope;
                for f in [0.5, 2.0, 8.0] {
                    breaks.push(t - f * width);
                    breaks.push(t + f * width);
                }
            }
        }
        let integrand = |t: f64| {
            let x = m + s * t;
            positive_part_normal(x.exp() - alpha * x - beta, smoothing)
        };
        gaussian_expectation_panels(integrand, lo, hi, &breaks, rule)
    }

    /// UB1: minimum of [`ub1_objective`](Self::ub1_objective) over `a` in the
    /// configured bracket.
    pub fn ub1(&self, c: f64, s0: f64, settings: &BoundSettings) -> Result<BoundResult> {
        check_prices(c, s0)?;
        let rule = QuadratureRule::gauss_legendre(settings.nodes)?;
        let (lo, hi) = settings.a_bracket;
        let mut failure = None;
        let r = minimize_scalar(
            |a| match self.ub1_objective_with(c, s0, a, &rule) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            hi,
            settings.opt_tol,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let r = r?;
        Ok(BoundResult { value: r.value.max(0.0), argopt: Some(r.argopt), evaluations: r.evaluations })
    }

    /// LB2 `= e^{-R_T} S0 E (E(Σ p_i e^{X_i} | X̄) - c)^+`.
    ///
    /// In units `X̄ = m̄ + σ√V t` the conditional mean is
    /// `g(t) = Σ p_i e^{R_i + d_i t - d_i²/2}` with `d_i = σκ_i/√V ≥ 0`, which
    /// increases in `t`; the positive part is active on `[t*, ∞)` where
    /// `g(t*) = c`, and only that branch is integrated.
    pub fn lb2(&self, c: f64, s0: f64, settings: &BoundSettings) -> Result<BoundResult> {
        check_prices(c, s0)?;
        let sd = self.sigma * self.variance.sqrt();
        if sd == 0.0 {
            return Ok(BoundResult {
                value: self.deterministic_value(c, s0),
                argopt: None,
                evaluations: 0,
            });
        }
        let p = self.grid.payoff_weights();
        let terms: Vec<(f64, f64)> = self
            .integrated
            .iter()
            .zip(&self.kappa)
            .zip(p)
            .filter(|(_, &pi)| pi > 0.0)
            .map(|((r, k), pi)| {
                let d = self.sigma * k / self.variance.sqrt();
                (pi * (r - 0.5 * d * d).exp(), d)
            })
            .collect();
        let g = |t: f64| terms.iter().map(|(w, d)| w * (d * t).exp()).sum::<f64>();
        let d_max = terms.iter().map(|(_, d)| *d).fold(0.0, f64::max);
        let floor: f64 = terms.iter().filter(|(_, d)| *d == 0.0).map(|(w, _)| w).sum();

        let lo = -13.0;
        let hi = d_max + 13.0;
        let start = if floor >= c {
            lo
        } else {
            let root = monotone_root(|t| g(t) - c, lo, hi);
            root.max(lo)
        };
        if start >= hi {
            return Ok(BoundResult { value: 0.0, argopt: None, evaluations: 0 });
        }
        let rule = QuadratureRule::gauss_legendre(settings.nodes)?;
        let v = gaussian_expectation_panels(|t| (g(t) - c).max(0.0), start, hi, &[], &rule)?;
        Ok(BoundResult { value: self.discount() * s0 * v, argopt: None, evaluations: 0 })
    }
}

fn check_prices(c: f64, s0: f64) -> Result<()> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("moneyness K/S0 must be finite and > 0, got {c}")));
    }
    if !(s0 > 0.0) || !s0.is_finite() {
        return Err(Error::domain(format!("spot S0 must be finite and > 0, got {s0}")));
    }
    Ok(())
}

/// Root of an increasing function on `[lo, hi]` by bisection; returns `hi` if
/// `f(hi) <= 0` and `lo` if `f(lo) >= 0`, after growing `hi` when needed.
fn monotone_root<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    while f(lo) > 0.0 {
        let w = hi - lo;
        hi = lo;
        lo -= w;
        if lo < -1e6 {
            return lo;
        }
    }
    while f(hi) < 0.0 {
        let w = hi - lo;
        lo = hi;
        hi += w;
        if hi > 1e6 {
            return hi;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots of `e^x - alpha·x - beta`, ascending.
pub(crate) fn convex_exp_linear_roots(alpha: f64, beta: f64) -> Vec<f64> {
    let h = |x: f64| x.exp() - alpha * x - beta;
    let dh = |x: f64| x.exp() - alpha;
    if alpha == 0.0 {
        return if beta > 0.0 { vec![beta.ln()] } else { vec![] };
    }
    if alpha < 0.0 {
        // strictly increasing, one root
        let guess = if beta > 0.0 { beta.ln().min(-beta / alpha) } else { -beta / alpha };
        let (lo, hi) = expand_bracket(&h, guess - 1.0, guess + 1.0);
        return vec![safeguarded_newton(&h, &dh, lo, hi)];
    }
    let xm = alpha.ln();
    let hm = alpha - alpha * xm - beta;
    if hm >= 0.0 {
        return vec![];
    }
    // h(xm) < 0; h -> +inf on both sides
    let mut left = xm - 1.0_f64.max((-beta / alpha - xm).abs());
    while h(left) <= 0.0 {
        left = xm - 2.0 * (xm - left);
    }
    let mut right = xm + 1.0;
    while h(right) <= 0.0 {
        right = xm + 2.0 * (right - xm);
    }
    vec![safeguarded_newton(&h, &dh, left, xm), safeguarded_newton(&h, &dh, xm, right)]
}

fn expand_bracket<F: Fn(f64) -> f64>(h: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut step = hi - lo;
    while h(lo) > 0.0 {
        lo -= step;
        step *= 2.0;
    }
    step = hi - lo;
    while h(hi) < 0.0 {
        hi += step;
        step *= 2.0;
    }
    (lo, hi)
}

/// Newton steps kept inside a sign-changing bracket, bisection fallback.
fn safeguarded_newton<F, D>(h: &F, dh: &D, mut lo: f64, mut hi: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let increasing = h(hi) > h(lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = h(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let d = dh(x);
        let mut next = x - fx / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) || hi - lo <= 1e-15 * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// Midpoint `(lb + ub)/2` and its worst-case relative error in percent,
/// `(ub/lb - 1)·50`.
pub fn midpoint_and_error(lb: &BoundResult, ub: &BoundResult) -> Result<(f64, f64)> {
    let (l, u) = (lb.value, ub.value);
    if !(l > 0.0) {
        return Err(Error::domain(format!("lower bound must be > 0 for a relative error, got {l}")));
    }
    if u < l - 1e-12 * l.max(1.0) {
        return Err(Error::Ordering { lb: l, ub: u });
    }
    let u = u.max(l);
    Ok((0.5 * (l + u), (u / l - 1.0) * 50.0))
}

/// LB2, LB1, UB1 and the midpoint summary for one contract.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub lb2: BoundResult,
    pub lb1: BoundResult,
    pub ub1: BoundResult,
    pub midpoint: f64,
    pub error_pct: f64,
}

pub fn compute_bounds(
    model: &GaussianAvgModel,
    strike: f64,
    s0: f64,
    settings: &BoundSettings,
) -> Result<BoundsReport> {
    if !(strike > 0.0) {
        return Err(Error::domain(format!("strike must be > 0, got {strike}")));
    }
    let c = strike / s0;
    let lb1 = model.lb1(c, s0, settings)?;
    let ub1 = model.ub1(c, s0, settings)?;
    let lb2 = model.lb2(c, s0, settings)?;
    let (midpoint, error_pct) = midpoint_and_error(&lb1, &ub1)?;
    Ok(BoundsReport { lb2, lb1, ub1, midpoint, error_pct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn brute_variance(grid: &MonitoringGrid) -> f64 {
        let (u, w) = (grid.dates(), grid.indicator_weights());
        let mut acc = 0.0;
        for i in 0..u.len() {
            for j in 0..u.len() {
                acc += w[i] * w[j] * u[i].min(u[j]);
            }
        }
        acc
    }

    #[test]
    fn kappa_examples() {
        let g = MonitoringGrid::uniform_discrete(1.0, 2).unwrap();
        assert_abs_diff_eq!(kappa_of(&g, 0.5).unwrap(), 0.5, epsilon = 1e-16);
        let g = MonitoringGrid::uniform_discrete(1.0, 1).unwrap();
        assert_eq!(kappa_of(&g, 1.0).unwrap(), 1.0);
        let g = MonitoringGrid::continuous_uniform_approx(1.0, 8).unwrap();
        assert_eq!(kappa_of(&g, 1.0).unwrap(), 0.5);
        assert!(kappa_of(&g, 0.0).is_err());
        assert!(kappa_of(&g, 1.5).is_err());
    }

    #[test]
    fn kappa_vector_matches_pointwise_sum() {
        let g = MonitoringGrid::from_dates(2.0, vec![0.1, 0.7, 1.2, 2.0], vec![3.0, 1.0, 0.5, 2.0])
            .unwrap();
        let all = all_kappas(&g);
        for (i, &u) in g.dates().iter().enumerate() {
            assert_abs_diff_eq!(all[i], kappa_of(&g, u).unwrap(), epsilon = 1e-15);
        }
    }

    #[test]
    fn variance_examples() {
        let g = MonitoringGrid::uniform_discrete(1.0, 1).unwrap();
        assert_eq!(avg_variance(&g), 1.0);
        let g = MonitoringGrid::uniform_discrete(1.0, 2).unwrap();
        assert_abs_diff_eq!(avg_variance(&g), 0.625, epsilon = 1e-16);
        assert_abs_diff_eq!(avg_variance(&g), brute_variance(&g), epsilon = 1e-16);
        let g = MonitoringGrid::uniform_discrete(9.0, 50).unwrap();
        assert_abs_diff_eq!(avg_variance(&g), 3.0906, epsilon = 1e-12);
    }

    #[test]
    fn continuous_variance_limit() {
        for t in [1.0, 9.0] {
            let g = MonitoringGrid::continuous_uniform_approx(t, 200).unwrap();
            assert_eq!(avg_variance(&g), t / 3.0);
            // quadrature of the brute-force double integral also lands on T/3
            let quad: f64 = {
                let (u, w) = (g.dates(), g.indicator_weights());
                let mut acc = 0.0;
                for i in 0..u.len() {
                    for j in 0..u.len() {
                        acc += w[i] * w[j] * u[i].min(u[j]);
                    }
                }
                acc
            };
            assert_abs_diff_eq!(quad, t / 3.0, epsilon = 1e-5 * t);
        }
    }

    #[test]
    fn build_model_examples() {
        let curve = RateCurve::constant(0.09);
        let g = MonitoringGrid::uniform_discrete(1.0, 1).unwrap();
        let m = build_model(&curve, 0.3, &g).unwrap();
        assert_abs_diff_eq!(m.log_means()[0], 0.045, epsilon = 1e-16);
        assert_eq!(m.kappa(), &[1.0]);
        assert_eq!(m.variance(), 1.0);

        let g = MonitoringGrid::uniform_discrete(1.0, 10).unwrap();
        let m = build_model(&curve, 0.3, &g).unwrap();
        assert_abs_diff_eq!(m.variance(), 0.385, epsilon = 1e-15);

        let m = build_model(&curve, 0.0, &g).unwrap();
        for (lm, r) in m.log_means().iter().zip(m.integrated_rates()) {
            assert_eq!(lm, r);
        }
        assert!(build_model(&curve, -0.1, &g).is_err());
    }

    #[test]
    fn roots_of_convex_exp_linear() {
        for &(alpha, beta) in
            &[(0.5, 2.0), (0.9, 1.2), (2.0, 5.0), (-0.5, 1.0), (-2.0, -3.0), (1e-6, 1.0)]
        {
            let roots = convex_exp_linear_roots(alpha, beta);
            assert!(!roots.is_empty(), "{alpha} {beta}");
            for r in roots {
                let v = r.exp() - alpha * r - beta;
                assert!(v.abs() < 1e-12 * (1.0 + (alpha * r).abs() + beta.abs()), "{alpha} {beta} {r} {v}");
            }
        }
        assert!(convex_exp_linear_roots(0.5, 0.1).is_empty());
        assert!(convex_exp_linear_roots(0.0, -1.0).is_empty());
    }

    #[test]
    fn midpoint_examples() {
        let b = |v| BoundResult { value: v, argopt: None, evaluations: 0 };
        let (mid, err) = midpoint_and_error(&b(12.162), &b(12.259)).unwrap();
        assert_abs_diff_eq!(mid, 12.2105, epsilon = 1e-12);
        assert_abs_diff_eq!(err, 0.398_783, epsilon = 1e-6);
        assert_eq!(midpoint_and_error(&b(3.0), &b(3.0)).unwrap(), (3.0, 0.0));
        let (mid, err) = midpoint_and_error(&b(56.073), &b(56.419)).unwrap();
        assert_abs_diff_eq!(mid, 56.246, epsilon = 1e-12);
        assert_abs_diff_eq!(err, 0.308_526_385, epsilon = 1e-6);
        assert!(matches!(
            midpoint_and_error(&b(2.0), &b(1.0)),
            Err(Error::Ordering { .. })
        ));
    }

    #[test]
    fn nonpositive_moneyness_is_rejected() {
        let g = MonitoringGrid::uniform_discrete(1.0, 4).unwrap();
        let m = build_model(&RateCurve::constant(0.05), 0.2, &g).unwrap();
        let s = BoundSettings::default();
        assert!(m.lb1(0.0, 100.0, &s).is_err());
        assert!(m.ub1(-1.0, 100.0, &s).is_err());
        assert!(m.lb2(0.0, 100.0, &s).is_err());
    }
}
