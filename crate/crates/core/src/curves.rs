//! Deterministic short-rate curves `r_s`, their integrals `R_t = ∫_0^t r_s ds`
//! and discount factors `e^{-R_t}`. Time is in years throughout.

use std::f64::consts::PI;
use std::path::Path;

use crate::columns::parse_two_columns;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum RateCurve {
    /// `r_s = rate`.
    Constant { rate: f64 },
    /// `r_s = r0 (1 + c/2 · sin(2πs))`.
    Sinusoidal { r0: f64, c: f64 },
    /// Piecewise-linear rate through the knots, flat outside them.
    Tabulated(TabulatedCurve),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCurve {
    times: Vec<f64>,
    rates: Vec<f64>,
    /// `R` at each knot.
    cumulative: Vec<f64>,
}

impl TabulatedCurve {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::domain("rate table is empty"));
        }
        let (times, rates): (Vec<f64>, Vec<f64>) = knots.into_iter().unzip();
        if times.iter().chain(&rates).any(|v| !v.is_finite()) {
            return Err(Error::domain("rate table contains non-finite values"));
        }
        if times[0] < 0.0 {
            return Err(Error::domain("rate table times must be >= 0"));
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::domain(format!(
                "rate table times must be strictly increasing (row {})",
                i + 2
            )));
        }
        let mut cumulative = Vec::with_capacity(times.len());
        let mut acc = rates[0] * times[0];
        cumulative.push(acc);
        for i in 1..times.len() {
            acc += 0.5 * (rates[i] + rates[i - 1]) * (times[i] - times[i - 1]);
            cumulative.push(acc);
        }
        Ok(Self { times, rates, cumulative })
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.rates.iter().copied())
    }

    fn rate(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.rates[0];
        }
        if t >= self.times[n - 1] {
            return self.rates[n - 1];
        }
        let j = self.times.partition_point(|&x| x <= t);
        let (t0, t1) = (self.times[j - 1], self.times[j]);
        let (r0, r1) = (self.rates[j - 1], self.rates[j]);
        r0 + (r1 - r0) * (t - t0) / (t1 - t0)
    }

    fn integral(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.rates[0] * t;
        }
        if t >= self.times[n - 1] {
            return self.cumulative[n - 1] + self.rates[n - 1] * (t - self.times[n - 1]);
        }
        let j = self.times.partition_point(|&x| x <= t);
        let t0 = self.times[j - 1];
        self.cumulative[j - 1] + 0.5 * (self.rates[j - 1] + self.rate(t)) * (t - t0)
    }
}

impl RateCurve {
    pub fn constant(rate: f64) -> Self {
        RateCurve::Constant { rate }
    }

    pub fn sinusoidal(r0: f64, c: f64) -> Self {
        RateCurve::Sinusoidal { r0, c }
    }

    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        TabulatedCurve::new(knots).map(RateCurve::Tabulated)
    }

    /// Parses a two-column `time rate` table.
    pub fn from_table_str(text: &str) -> Result<Self> {
        Self::tabulated(parse_two_columns(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_table_str(&std::fs::read_to_string(path)?)
    }

    /// Instantaneous rate `r_t`.
    pub fn rate(&self, t: f64) -> f64 {
        match self {
            RateCurve::Constant { rate } => *rate,
            RateCurve::Sinusoidal { r0, c } => r0 * (1.0 + 0.5 * c * (2.0 * PI * t).sin()),
            RateCurve::Tabulated(tab) => tab.rate(t),
        }
    }

    /// `R_t = ∫_0^t r_s ds`, exact for every kind.
    pub fn integrated_rate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("time must be finite and >= 0, got {t}")));
        }
        Ok(match self {
            RateCurve::Constant { rate } => rate * t,
            RateCurve::Sinusoidal { r0, c } => {
                r0 * t + r0 * 0.5 * c * (1.0 - (2.0 * PI * t).cos()) / (2.0 * PI)
            }
            RateCurve::Tabulated(tab) => tab.integral(t),
        })
    }

    /// `e^{-R_t}`.
    pub fn discount_factor(&self, t: f64) -> Result<f64> {
        Ok((-self.integrated_rate(t)?).exp())
    }
}
