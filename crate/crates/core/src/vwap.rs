//! Squared OU volume model, the weight profile `g_t = E[U_t / Ū]`, and VWAP
//! bounds built on the Gaussian bound engine.
//!
//! With price and volume independent, the VWAP payoff expectation factors so
//! that the Asian bounds apply with payoff weights `p_i ∝ g_i w_i`.

use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::columns::parse_two_columns;
use crate::curves::RateCurve;
use crate::error::{Error, Result};
use crate::gaussian_bounds::{BoundResult, BoundSettings, GaussianAvgModel};
use crate::grids::MonitoringGrid;
use crate::mc_oracle::{chunk_rng, run_chunked, Stats, VOLUME_STREAM};

/// Volume `U_t = Y_t²` with `dY = λ(θ − Y)dt + η dB`, `Y_0 = x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeModel {
    lambda: f64,
    theta: f64,
    eta: f64,
    x0: f64,
}

impl VolumeModel {
    pub fn new(lambda: f64, theta: f64, eta: f64, x0: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!("mean-reversion rate must be > 0, got {lambda}")));
        }
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::domain(format!("volume diffusion must be >= 0, got {eta}")));
        }
        if !theta.is_finite() || !x0.is_finite() {
            return Err(Error::domain("volume level and start must be finite"));
        }
        Ok(Self { lambda, theta, eta, x0 })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `E[Y_t²]`
    pub fn mean_volume(&self, t: f64) -> f64 {
        let m = self.theta + (self.x0 - self.theta) * (-self.lambda * t).exp();
        let v = self.eta * self.eta * (-(-2.0 * self.lambda * t).exp_m1()) / (2.0 * self.lambda);
        m * m + v
    }

    pub fn stationary_mean_volume(&self) -> f64 {
        self.theta * self.theta + self.eta * self.eta / (2.0 * self.lambda)
    }
}

/// Exact OU transitions between consecutive grid dates.
pub(crate) struct OuStepper {
    theta: f64,
    x0: f64,
    decay: Vec<f64>,
    sd: Vec<f64>,
}

impl OuStepper {
    pub fn new(model: &VolumeModel, grid: &MonitoringGrid) -> Self {
        let mut prev = 0.0;
        let mut decay = Vec::with_capacity(grid.len());
        let mut sd = Vec::with_capacity(grid.len());
        for &u in grid.dates() {
            let dt = u - prev;
            prev = u;
            decay.push((-model.lambda * dt).exp());
            let var = -(-2.0 * model.lambda * dt).exp_m1() / (2.0 * model.lambda);
            sd.push(model.eta * var.sqrt());
        }
        Self { theta: model.theta, x0: model.x0, decay, sd }
    }

    fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        let mut y = self.x0;
        for ((o, d), s) in out.iter_mut().zip(&self.decay).zip(&self.sd) {
            let z: f64 = StandardNormal.sample(rng);
            y = self.theta + (y - self.theta) * d + s * z;
            *o = y * y;
        }
    }

    /// Writes `w_i U_i` into `out` and returns `Σ w_i U_i`.
    pub fn fill_weighted_volumes<R: Rng + ?Sized>(&self, rng: &mut R, w: &[f64], out: &mut [f64]) -> f64 {
        self.fill(rng, out);
        let mut den = 0.0;
        for (o, wi) in out.iter_mut().zip(w) {
            *o *= wi;
            den += *o;
        }
        den
    }
}

/// One volume path `U_i = Y_{u_i}²` at the grid dates.
pub fn simulate_volume_path(model: &VolumeModel, grid: &MonitoringGrid, seed: u64) -> Vec<f64> {
    let mut out = vec![0.0; grid.len()];
    OuStepper::new(model, grid).fill(&mut chunk_rng(seed, 0, VOLUME_STREAM), &mut out);
    out
}

/// Estimated weight profile on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GEstimate {
    pub dates: Vec<f64>,
    pub g: Vec<f64>,
    pub stderr: Vec<f64>,
    pub paths: usize,
    pub seed: u64,
}

impl GEstimate {
    /// Constant volume: `g ≡ 1`.
    pub fn constant(grid: &MonitoringGrid) -> Self {
        Self {
            dates: grid.dates().to_vec(),
            g: vec![1.0; grid.len()],
            stderr: vec![0.0; grid.len()],
            paths: 0,
            seed: 0,
        }
    }

    /// Two columns `date, g`; standard errors are not stored.
    pub fn to_table_string(&self) -> String {
        let mut s = String::from("# date, g\n");
        for (d, g) in self.dates.iter().zip(&self.g) {
            s.push_str(&format!("{d:.17e}, {g:.17e}\n"));
        }
        s
    }

    pub fn from_table_str(text: &str) -> Result<Self> {
        let rows = parse_two_columns(text)?;
        if rows.is_empty() {
            return Err(Error::domain("weight profile file has no rows"));
        }
        if let Some((_, g)) = rows.iter().find(|(_, g)| !(*g >= 0.0) || !g.is_finite()) {
            return Err(Error::domain(format!("weight profile values must be finite and >= 0, got {g}")));
        }
        let n = rows.len();
        Ok(Self {
            dates: rows.iter().map(|r| r.0).collect(),
            g: rows.iter().map(|r| r.1).collect(),
            stderr: vec![0.0; n],
            paths: 0,
            seed: 0,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_table_string())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_table_str(&std::fs::read_to_string(path)?)
    }

    /// `(1/N) Σ g_i`
    pub fn mean(&self) -> f64 {
        self.g.iter().sum::<f64>() / self.g.len() as f64
    }

    fn check_grid(&self, grid: &MonitoringGrid) -> Result<()> {
        if self.g.len() != grid.len() {
            return Err(Error::domain(format!(
                "weight profile has {} dates but the grid has {}",
                self.g.len(),
                grid.len()
            )));
        }
        for (a, b) in self.dates.iter().zip(grid.dates()) {
            if (a - b).abs() > 1e-9 * b.abs().max(1.0) {
                return Err(Error::domain(format!("weight profile date {a} does not match grid date {b}")));
            }
        }
        Ok(())
    }
}

/// Monte Carlo estimate of `g_i = E[U_i / Ū]` with `Ū = Σ_j w_j U_j`.
pub fn estimate_g(
    model: &VolumeModel,
    grid: &MonitoringGrid,
    paths: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<GEstimate> {
    if paths < 1 {
        return Err(Error::domain("need at least one volume path"));
    }
    let stepper = OuStepper::new(model, grid);
    let w = grid.indicator_weights();
    let n = grid.len();
    let stats = run_chunked(paths, workers, |chunk, count| {
        let mut rng = chunk_rng(seed, chunk, VOLUME_STREAM);
        let mut st = vec![Stats::default(); n];
        let mut u = vec![0.0; n];
        for _ in 0..count {
            stepper.fill(&mut rng, &mut u);
            let ubar: f64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
            if !(ubar > 0.0) {
                return Err(Error::DegenerateVolume);
            }
            for (s, ui) in st.iter_mut().zip(&u) {
                s.push(ui / ubar);
            }
        }
        Ok(st)
    })?;
    Ok(GEstimate {
        dates: grid.dates().to_vec(),
        g: stats.iter().map(|s| s.mean).collect(),
        stderr: stats.iter().map(|s| s.stderr()).collect(),
        paths,
        seed,
    })
}

/// The grid with payoff weights `∝ g_i w_i` used for VWAP bounds.
pub fn vwap_grid(grid: &MonitoringGrid, g: &GEstimate) -> Result<MonitoringGrid> {
    g.check_grid(grid)?;
    let p: Vec<f64> = g.g.iter().zip(grid.indicator_weights()).map(|(a, b)| a * b).collect();
    grid.with_payoff_weights(&p)
}

/// Lower and upper VWAP call bounds (LB1, UB1).
pub fn vwap_bounds(
    curve: &RateCurve,
    sigma: f64,
    s0: f64,
    strike: f64,
    grid: &MonitoringGrid,
    g: &GEstimate,
    settings: &BoundSettings,
) -> Result<(BoundResult, BoundResult)> {
    if !(s0 > 0.0) {
        return Err(Error::domain(format!("spot must be > 0, got {s0}")));
    }
    let c = strike / s0;
    let model = GaussianAvgModel::new(curve, sigma, &vwap_grid(grid, g)?)?;
    Ok((model.lb1(c, s0, settings)?, model.ub1(c, s0, settings)?))
}
