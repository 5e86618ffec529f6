//! Browser entry points: bounds for one parameter set, the two objective
//! curves behind LB1 and UB1, and the expected volume profile.

use asian_bounds::gaussian_bounds::compute_bounds;
use asian_bounds::vwap::estimate_g;
use asian_bounds::{BoundSettings, GaussianAvgModel, MonitoringGrid, RateCurve, Result, VolumeModel};
use wasm_bindgen::prelude::*;

const CONTINUOUS_NODES: usize = 200;

fn grid(maturity: f64, dates: usize) -> Result<MonitoringGrid> {
    if dates == 0 {
        MonitoringGrid::continuous_uniform_approx(maturity, CONTINUOUS_NODES)
    } else {
        MonitoringGrid::uniform_discrete(maturity, dates)
    }
}

fn model(sigma: f64, maturity: f64, dates: usize, r0: f64, wave: f64) -> Result<GaussianAvgModel> {
    GaussianAvgModel::new(&RateCurve::sinusoidal(r0, wave), sigma, &grid(maturity, dates)?)
}

/// `[LB2, LB1, UB1, midpoint, error %, z*, a*]`
pub fn bounds_row(s0: f64, strike: f64, sigma: f64, maturity: f64, dates: usize, r0: f64, wave: f64) -> Result<Vec<f64>> {
    let m = model(sigma, maturity, dates, r0, wave)?;
    let r = compute_bounds(&m, strike, s0, &BoundSettings::default())?;
    Ok(vec![
        r.lb2.value,
        r.lb1.value,
        r.ub1.value,
        r.midpoint,
        r.error_pct,
        r.lb1.argopt.unwrap_or(f64::NAN),
        r.ub1.argopt.unwrap_or(f64::NAN),
    ])
}

/// LB1 as a function of the threshold `z` and UB1 as a function of the
/// control weight `a`, sampled on even grids.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Curves {
    z: Vec<f64>,
    lb1: Vec<f64>,
    a: Vec<f64>,
    ub1: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    pub fn z(&self) -> Vec<f64> {
        self.z.clone()
    }

    pub fn lb1(&self) -> Vec<f64> {
        self.lb1.clone()
    }

    pub fn a(&self) -> Vec<f64> {
        self.a.clone()
    }

    pub fn ub1(&self) -> Vec<f64> {
        self.ub1.clone()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn curves(
    s0: f64,
    strike: f64,
    sigma: f64,
    maturity: f64,
    dates: usize,
    r0: f64,
    wave: f64,
    points: usize,
) -> Result<Curves> {
    let m = model(sigma, maturity, dates, r0, wave)?;
    let s = BoundSettings::default();
    let c = strike / s0;
    let points = points.max(2);
    let sd = (sigma * m.variance().sqrt()).max(1e-6);
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (points - 1) as f64;
    let z: Vec<f64> = (0..points).map(|i| step(m.mean_avg() - 3.0 * sd, m.mean_avg() + 3.0 * sd, i)).collect();
    let lb1 = z.iter().map(|&z| m.lb1_objective(c, s0, z)).collect();
    let (lo, hi) = s.a_bracket;
    let a: Vec<f64> = (0..points).map(|i| step(lo, hi, i)).collect();
    let ub1 = a.iter().map(|&a| m.ub1_objective(c, s0, a, &s)).collect::<Result<_>>()?;
    Ok(Curves { z, lb1, a, ub1 })
}

/// `g_i = E[U_i / Ū]` on `dates` equally spaced dates over `[0, maturity]`.
#[allow(clippy::too_many_arguments)]
pub fn profile(lambda: f64, theta: f64, eta: f64, x0: f64, maturity: f64, dates: usize, paths: usize, seed: u64) -> Result<Vec<f64>> {
    let vm = VolumeModel::new(lambda, theta, eta, x0)?;
    let grid = MonitoringGrid::uniform_midpoint(maturity, dates)?;
    Ok(estimate_g(&vm, &grid, paths, seed, None)?.g)
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Asian call bounds with `r_s = r0(1 + wave/2 · sin 2πs)`; `dates = 0`
/// means continuous averaging.
#[wasm_bindgen(js_name = priceBounds)]
pub fn price_bounds(
    s0: f64,
    strike: f64,
    sigma: f64,
    maturity: f64,
    dates: usize,
    r0: f64,
    wave: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    js(bounds_row(s0, strike, sigma, maturity, dates, r0, wave))
}

#[wasm_bindgen(js_name = objectiveCurves)]
#[allow(clippy::too_many_arguments)]
pub fn objective_curves(
    s0: f64,
    strike: f64,
    sigma: f64,
    maturity: f64,
    dates: usize,
    r0: f64,
    wave: f64,
    points: usize,
) -> std::result::Result<Curves, JsError> {
    js(curves(s0, strike, sigma, maturity, dates, r0, wave, points))
}

#[wasm_bindgen(js_name = volumeProfile)]
#[allow(clippy::too_many_arguments)]
pub fn volume_profile(
    lambda: f64,
    theta: f64,
    eta: f64,
    x0: f64,
    maturity: f64,
    dates: usize,
    paths: usize,
    seed: u64,
) -> std::result::Result<Vec<f64>, JsError> {
    js(profile(lambda, theta, eta, x0, maturity, dates, paths, seed))
}
