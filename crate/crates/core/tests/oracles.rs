mod common;

use asian_bounds::gaussian_bounds::avg_variance;
use asian_bounds::{BoundSettings, GaussianAvgModel, GridMode, MonitoringGrid, RateCurve};
use common::{black_scholes_call, brute_variance, phi, simpson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn single_date_equals_black_scholes() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let s = BoundSettings::default();
    for _ in 0..50 {
        let t = rng.random_range(0.1..10.0);
        let sigma = rng.random_range(0.05..0.8);
        let s0 = rng.random_range(50.0..150.0);
        let k = rng.random_range(50.0..150.0);
        let curve = RateCurve::sinusoidal(rng.random_range(0.0..0.1), rng.random_range(-1.0..1.0));
        let grid = MonitoringGrid::uniform_discrete(t, 1).unwrap();
        let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
        let bs = black_scholes_call(s0, k, curve.integrated_rate(t).unwrap(), sigma, t);
        let c = k / s0;
        let lb1 = m.lb1(c, s0, &s).unwrap().value;
        let ub1 = m.ub1(c, s0, &s).unwrap().value;
        let lb2 = m.lb2(c, s0, &s).unwrap().value;
        assert!((lb1 - bs).abs() <= 1e-7, "lb1 {lb1} bs {bs}");
        assert!((ub1 - bs).abs() <= 1e-6, "ub1 {ub1} bs {bs}");
        assert!((lb2 - bs).abs() <= 1e-6, "lb2 {lb2} bs {bs}");
    }
}

#[test]
fn reference_black_scholes_value() {
    let bs = black_scholes_call(100.0, 100.0, 0.09, 0.3, 1.0);
    assert!((bs - 16.219271882539).abs() < 1e-9);
}

#[test]
fn no_control_reduces_to_dated_calls() {
    let curve = RateCurve::sinusoidal(0.09, 1.0);
    let (sigma, s0, k) = (0.3, 100.0, 95.0);
    let s = BoundSettings::default();
    for grid in [
        MonitoringGrid::uniform_discrete(1.0, 10).unwrap(),
        MonitoringGrid::uniform_discrete(9.0, 50).unwrap(),
        MonitoringGrid::from_dates(2.0, vec![0.3, 1.1, 2.0], vec![0.5, 0.2, 0.3]).unwrap(),
    ] {
        let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
        let t = grid.maturity();
        let rt = curve.integrated_rate(t).unwrap();
        let mut expected = 0.0;
        for (&u, &p) in grid.dates().iter().zip(grid.payoff_weights()) {
            // E(S0 e^{X_u} - K)^+ discounted to 0 from T
            let ru = curve.integrated_rate(u).unwrap();
            expected += p * (ru - rt).exp() * black_scholes_call(s0, k, ru, sigma, u);
        }
        let u0 = m.ub1_objective(k / s0, s0, 0.0, &s).unwrap();
        assert!((u0 - expected).abs() < 1e-9 * expected, "{u0} vs {expected}");
    }
}

#[test]
fn uniform_variance_formula() {
    for n in 1..=200usize {
        for t in [1.0, 9.0] {
            let g = MonitoringGrid::uniform_discrete(t, n).unwrap();
            let nf = n as f64;
            let expected = t / 3.0 * (1.0 + 3.0 / (2.0 * nf) + 1.0 / (2.0 * nf * nf));
            let v = avg_variance(&g);
            assert!((v - expected).abs() <= 1e-12 * expected, "n={n}: {v} vs {expected}");
        }
    }
}

#[test]
fn nonuniform_variance_matches_double_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.random_range(1..40);
        let t = rng.random_range(0.5..10.0);
        let mut dates: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..t)).collect();
        dates.sort_by(f64::total_cmp);
        dates.dedup();
        dates.retain(|&d| d > 0.0);
        let weights: Vec<f64> = dates.iter().map(|_| rng.random_range(0.01..1.0)).collect();
        let g = MonitoringGrid::from_dates(t, dates, weights).unwrap();
        let brute = brute_variance(g.dates(), g.indicator_weights());
        assert!((avg_variance(&g) - brute).abs() <= 1e-12 * brute);
    }
}

#[test]
fn continuous_variance_and_kappa() {
    for t in [0.5, 1.0, 9.0] {
        let g = MonitoringGrid::continuous_uniform_approx(t, 200).unwrap();
        assert!((avg_variance(&g) - t / 3.0).abs() < 1e-12 * t);
        let m = GaussianAvgModel::new(&RateCurve::constant(0.05), 0.2, &g).unwrap();
        for (&u, &k) in g.dates().iter().zip(m.kappa()) {
            assert!((k - (u - u * u / (2.0 * t))).abs() < 1e-12 * t);
        }
    }
}

/// LB2 recomputed from scratch: κ, V and the conditional mean built from the
/// dates directly (closed forms for continuous averaging), and the outer
/// expectation by a fine Simpson rule.
fn lb2_reference(curve: &RateCurve, sigma: f64, grid: &MonitoringGrid, s0: f64, k: f64) -> f64 {
    let (u, w, p) = (grid.dates(), grid.indicator_weights(), grid.payoff_weights());
    let t_mat = grid.maturity();
    let continuous = grid.mode() == GridMode::ContinuousApprox;
    let v = if continuous { t_mat / 3.0 } else { brute_variance(u, w) };
    let rt = curve.integrated_rate(t_mat).unwrap();
    let terms: Vec<(f64, f64, f64)> = u
        .iter()
        .zip(p)
        .map(|(&ui, &pi)| {
            let kappa: f64 = if continuous {
                ui - ui * ui / (2.0 * t_mat)
            } else {
                u.iter().zip(w).map(|(&uj, &wj)| wj * ui.min(uj)).sum()
            };
            (pi, curve.integrated_rate(ui).unwrap(), sigma * kappa / v.sqrt())
        })
        .collect();
    let g = |t: f64| -> f64 { terms.iter().map(|(p, r, d)| p * (r + d * t - 0.5 * d * d).exp()).sum() };
    let dens = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let integral = simpson(|t| (s0 * g(t) - k).max(0.0) * dens(t), -12.0, 14.0, 400_000);
    (-rt).exp() * integral
}

#[test]
fn lb2_matches_direct_integration() {
    let cases = [
        (RateCurve::sinusoidal(0.09, 0.0), 0.3, MonitoringGrid::uniform_discrete(1.0, 10).unwrap(), 100.0),
        (RateCurve::sinusoidal(0.09, 1.0), 0.3, MonitoringGrid::uniform_discrete(9.0, 50).unwrap(), 100.0),
        (RateCurve::constant(0.02), 0.6, MonitoringGrid::continuous_uniform_approx(2.0, 60).unwrap(), 130.0),
        (
            RateCurve::constant(0.05),
            0.15,
            MonitoringGrid::from_dates(1.0, vec![0.25, 0.5, 1.0], vec![0.6, 0.1, 0.3]).unwrap(),
            85.0,
        ),
    ];
    let s = BoundSettings::default();
    for (curve, sigma, grid, k) in cases {
        let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
        let lb2 = m.lb2(k / 100.0, 100.0, &s).unwrap().value;
        let reference = lb2_reference(&curve, sigma, &grid, 100.0, k);
        assert!((lb2 - reference).abs() < 1e-8 * reference.max(1.0), "{lb2} vs {reference}");
    }
}

#[test]
fn lb1_objective_matches_direct_integration() {
    // E[(Σ p e^{X_i} - c) 1{X̄ > z}] by conditioning each X_i on X̄
    let curve = RateCurve::sinusoidal(0.09, 1.0);
    let grid = MonitoringGrid::uniform_discrete(3.0, 7).unwrap();
    let sigma = 0.4;
    let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
    let (u, w) = (grid.dates(), grid.indicator_weights());
    let v = brute_variance(u, w);
    let mbar: f64 = u.iter().zip(w).map(|(&ui, &wi)| wi * (curve.integrated_rate(ui).unwrap() - 0.5 * sigma * sigma * ui)).sum();
    let rt = curve.integrated_rate(3.0).unwrap();
    for z in [mbar - 0.5, mbar, mbar + 0.3] {
        let tz = (z - mbar) / (sigma * v.sqrt());
        let mut expected = -0.9 * (1.0 - phi(tz));
        for (&ui, &pi) in u.iter().zip(grid.payoff_weights()) {
            let kappa: f64 = u.iter().zip(w).map(|(&uj, &wj)| wj * ui.min(uj)).sum();
            let d = sigma * kappa / v.sqrt();
            let r = curve.integrated_rate(ui).unwrap();
            let dens = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
            expected += pi * simpson(|t| (r + d * t - 0.5 * d * d).exp() * dens(t), tz, 14.0, 200_000);
        }
        let expected = (-rt).exp() * 100.0 * expected;
        let got = m.lb1_objective(0.9, 100.0, z);
        assert!((got - expected).abs() < 1e-9 * expected.abs().max(1.0), "{got} vs {expected}");
    }
}
