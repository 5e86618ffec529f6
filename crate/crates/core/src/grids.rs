//! Monitoring grids: the averaging measure as a finite set of dates with two
//! weight vectors.
//!
//! `payoff_weights` average the payoff terms `S_u - K`; `indicator_weights`
//! define the log-price average `X̄` used in the conditioning event. For plain
//! Asian options the two coincide. For VWAP the payoff weights carry the
//! expected volume profile while the indicator weights stay uniform.

use std::path::Path;

use crate::columns::parse_two_columns;
use crate::error::{Error, Result};
use crate::numerics::QuadratureRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    Discrete,
    /// Quadrature nodes standing in for uniform continuous averaging on
    /// `(0, T]`. Covariances use the exact continuous limit.
    ContinuousApprox,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonitoringGrid {
    maturity: f64,
    dates: Vec<f64>,
    payoff_weights: Vec<f64>,
    indicator_weights: Vec<f64>,
    mode: GridMode,
}

fn normalize(weights: &[f64], what: &str) -> Result<Vec<f64>> {
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::domain(format!("{what} must be finite and >= 0")));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::domain(format!("{what} are all zero")));
    }
    // Vectors already normalized up to rounding are kept as given.
    if (total - 1.0).abs() <= 1e-14 {
        return Ok(weights.to_vec());
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

impl MonitoringGrid {
    /// Dates `u_i = iT/N`, equal weights `1/N`.
    pub fn uniform_discrete(maturity: f64, n: usize) -> Result<Self> {
        check_maturity(maturity)?;
        if n == 0 {
            return Err(Error::domain("number of monitoring dates must be >= 1"));
        }
        let nf = n as f64;
        let dates = (1..=n).map(|i| i as f64 * maturity / nf).collect();
        let w = vec![1.0 / nf; n];
        Ok(Self {
            maturity,
            dates,
            payoff_weights: w.clone(),
            indicator_weights: w,
            mode: GridMode::Discrete,
        })
    }

    /// Dates at interval midpoints `u_i = (i - 1/2)T/N`, equal weights. The
    /// midpoint rule approximates continuous averaging to second order in
    /// `T/N`.
    pub fn uniform_midpoint(maturity: f64, n: usize) -> Result<Self> {
        check_maturity(maturity)?;
        if n == 0 {
            return Err(Error::domain("number of monitoring dates must be >= 1"));
        }
        let nf = n as f64;
        let dates = (1..=n).map(|i| (i as f64 - 0.5) * maturity / nf).collect();
        let w = vec![1.0 / nf; n];
        Ok(Self {
            maturity,
            dates,
            payoff_weights: w.clone(),
            indicator_weights: w,
            mode: GridMode::Discrete,
        })
    }

    /// Gauss–Legendre discretization of uniform averaging on `(0, T]` with
    /// `m` nodes.
    pub fn continuous_uniform_approx(maturity: f64, m: usize) -> Result<Self> {
        check_maturity(maturity)?;
        if m < 2 {
            return Err(Error::domain("continuous grid needs at least 2 nodes"));
        }
        let rule = QuadratureRule::gauss_legendre(m)?;
        let dates = rule.nodes.iter().map(|x| 0.5 * maturity * (x + 1.0)).collect();
        let w = normalize(&rule.weights, "quadrature weights")?;
        Ok(Self {
            maturity,
            dates,
            payoff_weights: w.clone(),
            indicator_weights: w,
            mode: GridMode::ContinuousApprox,
        })
    }

    /// Discrete grid from explicit dates and (unnormalized) weights, used for
    /// both payoff and indicator averaging.
    pub fn from_dates(maturity: f64, dates: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        check_maturity(maturity)?;
        if dates.is_empty() {
            return Err(Error::domain("grid has no dates"));
        }
        if dates.len() != weights.len() {
            return Err(Error::domain(format!(
                "{} dates but {} weights",
                dates.len(),
                weights.len()
            )));
        }
        if dates.iter().any(|d| !(*d > 0.0) || *d > maturity) {
            return Err(Error::domain(format!("dates must lie in (0, {maturity}]")));
        }
        if let Some(i) = dates.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::domain(format!(
                "dates must be strictly increasing; date {} repeats or goes back",
                i + 2
            )));
        }
        let w = normalize(&weights, "grid weights")?;
        Ok(Self {
            maturity,
            dates,
            payoff_weights: w.clone(),
            indicator_weights: w,
            mode: GridMode::Discrete,
        })
    }

    /// Parses rows of `date weight`. `maturity` defaults to the last date.
    pub fn from_table_str(text: &str, maturity: Option<f64>) -> Result<Self> {
        let rows = parse_two_columns(text)?;
        let (dates, weights): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let t = maturity.or_else(|| dates.last().copied()).unwrap_or(0.0);
        Self::from_dates(t, dates, weights)
    }

    pub fn load(path: impl AsRef<Path>, maturity: Option<f64>) -> Result<Self> {
        Self::from_table_str(&std::fs::read_to_string(path)?, maturity)
    }

    /// Replaces the payoff weights (renormalized to sum 1); indicator weights
    /// are kept.
    pub fn with_payoff_weights(&self, p: &[f64]) -> Result<Self> {
        if p.len() != self.dates.len() {
            return Err(Error::domain(format!(
                "payoff weights have length {}, grid has {} dates",
                p.len(),
                self.dates.len()
            )));
        }
        Ok(Self { payoff_weights: normalize(p, "payoff weights")?, ..self.clone() })
    }

    pub fn maturity(&self) -> f64 {
        self.maturity
    }

    pub fn dates(&self) -> &[f64] {
        &self.dates
    }

    pub fn payoff_weights(&self) -> &[f64] {
        &self.payoff_weights
    }

    pub fn indicator_weights(&self) -> &[f64] {
        &self.indicator_weights
    }

    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }
}

fn check_maturity(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("maturity must be finite and > 0, got {t}")))
    }
}
