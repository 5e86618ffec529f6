//! Seeded Monte Carlo reference prices for Asian and VWAP payoffs.
//!
//! Log-prices are sampled exactly at the grid dates from Brownian increments,
//! volumes from exact OU transitions. The sample index space is cut into
//! fixed chunks; every chunk draws from its own ChaCha stream keyed by
//! `(seed, chunk)` and the chunk statistics are merged in chunk order, so
//! results do not depend on how many worker threads run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::curves::RateCurve;
use crate::error::{Error, Result};
use crate::grids::MonitoringGrid;
use crate::vwap::{OuStepper, VolumeModel};

/// Independent samples per chunk. With antithetic variates one sample is a
/// pair of paths.
pub(crate) const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSettings {
    pub paths: usize,
    pub seed: u64,
    pub antithetic: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl McSettings {
    pub fn new(paths: usize, seed: u64) -> Self {
        Self { paths, seed, antithetic: true, workers: None }
    }

    pub fn with_antithetic(self, antithetic: bool) -> Self {
        Self { antithetic, ..self }
    }

    pub fn with_workers(self, workers: Option<usize>) -> Self {
        Self { workers, ..self }
    }

    fn samples(&self) -> Result<usize> {
        let n = if self.antithetic { self.paths / 2 } else { self.paths };
        if n < 2 {
            return Err(Error::domain(format!(
                "need at least 2 independent samples for a standard error, got {} paths{}",
                self.paths,
                if self.antithetic { " (antithetic pairs)" } else { "" }
            )));
        }
        Ok(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub paths: usize,
    pub seed: u64,
}

/// Running mean and centred sum of squares (Welford), mergeable.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Stats {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Stats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Stats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        self.mean += d * other.n as f64 / n as f64;
        self.m2 += other.m2 + d * d * (self.n as f64) * (other.n as f64) / n as f64;
        self.n = n;
    }

    pub fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

/// Stream ids: price and volume draws of one chunk never share a stream.
pub(crate) fn chunk_rng(seed: u64, chunk: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * chunk as u64 + stream);
    rng
}

pub(crate) const PRICE_STREAM: u64 = 0;
pub(crate) const VOLUME_STREAM: u64 = 1;

/// Runs `body(chunk_index, samples_in_chunk)` over all chunks and merges the
/// per-chunk statistic vectors in chunk order.
pub(crate) fn run_chunked<F>(samples: usize, workers: Option<usize>, body: F) -> Result<Vec<Stats>>
where
    F: Fn(usize, usize) -> Result<Vec<Stats>> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let work = || -> Result<Vec<Vec<Stats>>> {
        (0..chunks)
            .into_par_iter()
            .map(|c| body(c, CHUNK.min(samples - c * CHUNK)))
            .collect()
    };
    let parts = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let mut total: Vec<Stats> = Vec::new();
    for part in parts {
        if total.is_empty() {
            total = vec![Stats::default(); part.len()];
        }
        for (t, p) in total.iter_mut().zip(&part) {
            t.merge(p);
        }
    }
    Ok(total)
}

fn check_inputs(sigma: f64, s0: f64, strike: f64) -> Result<()> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("volatility must be finite and >= 0, got {sigma}")));
    }
    if !(s0 > 0.0) {
        return Err(Error::domain(format!("spot must be > 0, got {s0}")));
    }
    if !(strike >= 0.0) {
        return Err(Error::domain(format!("strike must be >= 0, got {strike}")));
    }
    Ok(())
}

/// Per-date data for the Brownian driver.
struct PricePlan {
    /// `√(u_i - u_{i-1})`
    step_sd: Vec<f64>,
    discount: f64,
}

impl PricePlan {
    fn new(curve: &RateCurve, grid: &MonitoringGrid) -> Result<Self> {
        let mut prev = 0.0;
        let step_sd = grid
            .dates()
            .iter()
            .map(|&u| {
                let s = (u - prev).sqrt();
                prev = u;
                s
            })
            .collect();
        Ok(Self { step_sd, discount: curve.discount_factor(grid.maturity())? })
    }
}

/// `weights_i · e^{R_{u_i} - σ²u_i/2}`: the payoff coefficient of `e^{σW_{u_i}}`.
fn date_coefficients(curve: &RateCurve, sigma: f64, grid: &MonitoringGrid, weights: &[f64]) -> Result<Vec<f64>> {
    grid.dates()
        .iter()
        .zip(weights)
        .map(|(&u, &w)| Ok(w * (curve.integrated_rate(u)? - 0.5 * sigma * sigma * u).exp()))
        .collect()
}

/// Monte Carlo price of `e^{-R_T} (Σ p_i S_{u_i} - K)^+`.
pub fn mc_asian_price(
    curve: &RateCurve,
    sigma: f64,
    s0: f64,
    strike: f64,
    grid: &MonitoringGrid,
    settings: &McSettings,
) -> Result<McEstimate> {
    check_inputs(sigma, s0, strike)?;
    let samples = settings.samples()?;
    let plan = PricePlan::new(curve, grid)?;
    let coef = date_coefficients(curve, sigma, grid, grid.payoff_weights())?;
    let anti = settings.antithetic;

    let stats = run_chunked(samples, settings.workers, |chunk, count| {
        let mut rng = chunk_rng(settings.seed, chunk, PRICE_STREAM);
        let mut st = Stats::default();
        for _ in 0..count {
            let mut w = 0.0;
            let mut up = 0.0;
            let mut down = 0.0;
            for (sd, c) in plan.step_sd.iter().zip(&coef) {
                let z: f64 = StandardNormal.sample(&mut rng);
                w += sd * z;
                let e = (sigma * w).exp();
                up += c * e;
                if anti {
                    down += c / e;
                }
            }
            let mut pay = (s0 * up - strike).max(0.0);
            if anti {
                pay = 0.5 * (pay + (s0 * down - strike).max(0.0));
            }
            st.push(plan.discount * pay);
        }
        Ok(vec![st])
    })?;
    let st = stats[0];
    Ok(McEstimate {
        mean: st.mean,
        stderr: st.stderr(),
        paths: if anti { 2 * samples } else { samples },
        seed: settings.seed,
    })
}

/// Monte Carlo price of a call on the volume-weighted average
/// `Σ w_j S_j U_j / Σ w_j U_j`, with volume `U = Y²` for an OU process `Y`
/// independent of the price.
pub fn mc_vwap_price(
    curve: &RateCurve,
    sigma: f64,
    s0: f64,
    strike: f64,
    grid: &MonitoringGrid,
    volume: &VolumeModel,
    settings: &McSettings,
) -> Result<McEstimate> {
    Ok(mc_vwap_prices(curve, &[sigma], s0, strike, grid, volume, settings)?[0])
}

/// [`mc_vwap_price`] for several volatilities at once. All volatilities share
/// the same normal draws, so each entry equals the single-volatility call with
/// the same settings.
pub fn mc_vwap_prices(
    curve: &RateCurve,
    sigmas: &[f64],
    s0: f64,
    strike: f64,
    grid: &MonitoringGrid,
    volume: &VolumeModel,
    settings: &McSettings,
) -> Result<Vec<McEstimate>> {
    for &s in sigmas {
        check_inputs(s, s0, strike)?;
    }
    let samples = settings.samples()?;
    let plan = PricePlan::new(curve, grid)?;
    let stepper = OuStepper::new(volume, grid);
    let w = grid.indicator_weights();
    let coefs: Vec<Vec<f64>> = sigmas
        .iter()
        .map(|&s| date_coefficients(curve, s, grid, &vec![1.0; grid.len()]))
        .collect::<Result<_>>()?;
    let anti = settings.antithetic;
    let n = grid.len();

    let stats = run_chunked(samples, settings.workers, |chunk, count| {
        let mut price_rng = chunk_rng(settings.seed, chunk, PRICE_STREAM);
        let mut vol_rng = chunk_rng(settings.seed, chunk, VOLUME_STREAM);
        let mut st = vec![Stats::default(); sigmas.len()];
        let mut wu = vec![0.0; n];
        let mut bm = vec![0.0; n];
        for _ in 0..count {
            let den = stepper.fill_weighted_volumes(&mut vol_rng, w, &mut wu);
            if !(den > 0.0) {
                return Err(Error::DegenerateVolume);
            }
            let mut acc = 0.0;
            for (b, sd) in bm.iter_mut().zip(&plan.step_sd) {
                let z: f64 = StandardNormal.sample(&mut price_rng);
                acc += sd * z;
                *b = acc;
            }
            for ((stat, &sigma), coef) in st.iter_mut().zip(sigmas).zip(&coefs) {
                let mut up = 0.0;
                let mut down = 0.0;
                for ((b, c), v) in bm.iter().zip(coef).zip(&wu) {
                    let e = (sigma * b).exp();
                    up += c * v * e;
                    if anti {
                        down += c * v / e;
                    }
                }
                let mut pay = (s0 * up / den - strike).max(0.0);
                if anti {
                    pay = 0.5 * (pay + (s0 * down / den - strike).max(0.0));
                }
                stat.push(plan.discount * pay);
            }
        }
        Ok(st)
    })?;
    Ok(stats
        .iter()
        .map(|st| McEstimate {
            mean: st.mean,
            stderr: st.stderr(),
            paths: if anti { 2 * samples } else { samples },
            seed: settings.seed,
        })
        .collect())
}
