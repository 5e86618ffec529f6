//! Command implementations behind the `asian-bounds` binary. Every command
//! returns its CSV output as a string.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod request;

use std::fmt;

use asian_bounds::gaussian_bounds::compute_bounds;
use asian_bounds::mc_oracle::{mc_asian_price, mc_vwap_price, mc_vwap_prices};
use asian_bounds::vwap::{estimate_g, vwap_grid};
use asian_bounds::{
    BoundSettings, GaussianAvgModel, McSettings, MonitoringGrid, RateCurve, VolumeModel,
};

pub use request::PriceRequest;
use request::{CurveSpec, GridSpec, Payoff};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<asian_bounds::Error> for CliError {
    fn from(e: asian_bounds::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

/// Options shared by all commands.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    pub workers: Option<usize>,
    pub bounds: BoundSettings,
}

/// Six significant digits in plain decimal notation.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let mut decimals = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit
    let digits = s.chars().filter(|c| c.is_ascii_digit()).skip_while(|&c| c == '0').count();
    if digits > 6 && decimals > 0 {
        decimals -= 1;
        s = format!("{x:.decimals$}");
    }
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

pub const BOUNDS_HEADER: &str = "LB2,LB1,UB1,midpoint,error_pct,z_star,a_star";

/// Bounds for one request as a header plus one CSV record.
pub fn cmd_bounds(req: &PriceRequest, opts: &RunOptions) -> Result<String, CliError> {
    Ok(format!("{BOUNDS_HEADER}\n{}\n", bounds_record(req, opts)?.join(",")))
}

fn bounds_record(req: &PriceRequest, opts: &RunOptions) -> Result<Vec<String>, CliError> {
    let curve = req.curve()?;
    let mut grid = req.grid()?;
    if req.payoff == Payoff::Vwap {
        let g = req.g_profile(&grid, opts.workers)?;
        grid = vwap_grid(&grid, &g)?;
    }
    let model = GaussianAvgModel::new(&curve, req.sigma, &grid)?;
    let r = compute_bounds(&model, req.strike, req.s0, &opts.bounds)?;
    Ok(vec![
        sig6(r.lb2.value),
        sig6(r.lb1.value),
        sig6(r.ub1.value),
        sig6(r.midpoint),
        sig6(r.error_pct),
        opt(r.lb1.argopt),
        opt(r.ub1.argopt),
    ])
}

/// Monte Carlo price for one request with an `mc.*` block.
pub fn cmd_mc(req: &PriceRequest, opts: &RunOptions) -> Result<String, CliError> {
    let spec = req.mc.ok_or_else(|| CliError::Validation("missing key mc.paths".into()))?;
    let settings = McSettings::new(spec.paths, spec.seed)
        .with_antithetic(spec.antithetic)
        .with_workers(opts.workers);
    let curve = req.curve()?;
    let grid = req.grid()?;
    let est = match req.payoff {
        Payoff::Asian => mc_asian_price(&curve, req.sigma, req.s0, req.strike, &grid, &settings)?,
        Payoff::Vwap => {
            let vol = req
                .vwap
                .as_ref()
                .and_then(|v| v.volume)
                .ok_or_else(|| CliError::Validation("vwap: Monte Carlo needs the volume model keys".into()))?;
            mc_vwap_price(&curve, req.sigma, req.s0, req.strike, &grid, &vol, &settings)?
        }
    };
    Ok(format!(
        "mean,stderr,paths,seed\n{},{},{},{}\n",
        sig6(est.mean),
        sig6(est.stderr),
        est.paths,
        est.seed
    ))
}

/// The twelve cells of the plain Asian table: `(T, N, c)` with `N = None`
/// for continuous monitoring.
pub fn table1_cells() -> Vec<(f64, Option<usize>, f64)> {
    let mut cells = Vec::new();
    for t in [1.0, 9.0] {
        for n in [Some(10), Some(50), None] {
            for c in [0.0, 1.0] {
                cells.push((t, n, c));
            }
        }
    }
    cells
}

/// Nodes standing in for continuous monitoring.
pub const CONTINUOUS_NODES: usize = 200;

/// The request behind one table cell (S0 = K = 100, σ = 0.3,
/// `r_s = 0.09(1 + c/2 sin 2πs)`).
pub fn table1_request(t: f64, n: Option<usize>, c: f64) -> PriceRequest {
    PriceRequest {
        s0: 100.0,
        strike: 100.0,
        sigma: 0.3,
        maturity: t,
        curve: CurveSpec::Sinusoidal { r0: 0.09, c },
        grid: match n {
            Some(n) => GridSpec::Discrete(n),
            None => GridSpec::Continuous(CONTINUOUS_NODES),
        },
        payoff: Payoff::Asian,
        vwap: None,
        mc: None,
    }
}

pub fn cmd_table1(opts: &RunOptions) -> Result<String, CliError> {
    let mut out = String::from("T,N,c,LB1,UB1,error_pct\n");
    for (t, n, c) in table1_cells() {
        let rec = bounds_record(&table1_request(t, n, c), opts)?;
        let n = n.map(|n| n.to_string()).unwrap_or_else(|| "inf".into());
        out.push_str(&format!("{t},{n},{c},{},{},{}\n", rec[1], rec[2], rec[4]));
    }
    Ok(out)
}

pub const TABLE2_SIGMAS: [f64; 3] = [0.1, 0.5, 0.8];
pub const TABLE2_DATES: usize = 500;

/// Volume model of the VWAP table: `dY = 2(22 − Y)dt + 5dB`, `Y_0 = 22`.
pub fn table2_volume() -> VolumeModel {
    VolumeModel::new(2.0, 22.0, 5.0, 22.0).expect("valid constants")
}

/// 500 equally spaced dates at interval midpoints over one year.
pub fn table2_grid() -> MonitoringGrid {
    MonitoringGrid::uniform_midpoint(1.0, TABLE2_DATES).expect("valid constants")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2Options {
    pub g_paths: usize,
    pub mc_paths: usize,
    pub seed: u64,
}

impl Default for Table2Options {
    fn default() -> Self {
        Self { g_paths: 1_000_000, mc_paths: 10_000_000, seed: 1 }
    }
}

/// VWAP table rows `(σ, LB1, MC, MC stderr, UB1)` as numbers.
pub fn table2_values(t2: &Table2Options, opts: &RunOptions) -> Result<Vec<[f64; 5]>, CliError> {
    let (s0, strike) = (110.0, 100.0);
    let curve = RateCurve::constant(0.1);
    let grid = table2_grid();
    let volume = table2_volume();
    let g = estimate_g(&volume, &grid, t2.g_paths, t2.seed, opts.workers)?;
    let vgrid = vwap_grid(&grid, &g)?;
    // price and volume streams of the pricer are keyed apart from the g estimate
    let settings = McSettings::new(t2.mc_paths, t2.seed.wrapping_add(1)).with_workers(opts.workers);
    let mc = mc_vwap_prices(&curve, &TABLE2_SIGMAS, s0, strike, &grid, &volume, &settings)?;
    let mut rows = Vec::new();
    for (sigma, est) in TABLE2_SIGMAS.iter().zip(mc) {
        let model = GaussianAvgModel::new(&curve, *sigma, &vgrid)?;
        let c = strike / s0;
        let lb = model.lb1(c, s0, &opts.bounds)?;
        let ub = model.ub1(c, s0, &opts.bounds)?;
        rows.push([*sigma, lb.value, est.mean, est.stderr, ub.value]);
    }
    Ok(rows)
}

pub fn cmd_table2(t2: &Table2Options, opts: &RunOptions) -> Result<String, CliError> {
    let mut out = String::from("sigma,LB1,MC,MC_stderr,UB1\n");
    for r in table2_values(t2, opts)? {
        out.push_str(&format!("{},{},{},{},{}\n", r[0], sig6(r[1]), sig6(r[2]), sig6(r[3]), sig6(r[4])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(9.565431626816647), "9.56543");
        assert_eq!(sig6(30.647117125865574), "30.6471");
        assert_eq!(sig6(0.0587312), "0.0587312");
        assert_eq!(sig6(123456789.0), "123456789");
        assert_eq!(sig6(9.9999996), "10.0000");
        assert_eq!(sig6(-0.5), "-0.500000");
        assert_eq!(sig6(0.0), "0.00000");
    }

    #[test]
    fn twelve_cells() {
        let cells = table1_cells();
        assert_eq!(cells.len(), 12);
        assert!(cells.contains(&(9.0, None, 1.0)));
        assert!(cells.contains(&(1.0, Some(50), 1.0)));
    }

    #[test]
    fn error_codes() {
        let e: CliError = asian_bounds::Error::DegenerateVolume.into();
        assert_eq!(e.exit_code(), 3);
        assert_eq!(CliError::Validation("x".into()).exit_code(), 2);
    }
}
