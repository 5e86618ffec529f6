mod common;

use asian_bounds::numerics::positive_part_gaussian_mean;
use asian_bounds::{BoundSettings, GaussianAvgModel, MonitoringGrid, RateCurve};
use common::simpson;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid_strategy() -> impl Strategy<Value = MonitoringGrid> {
    prop_oneof![
        (0.1f64..10.0, 1usize..40).prop_map(|(t, n)| MonitoringGrid::uniform_discrete(t, n).unwrap()),
        (0.1f64..10.0, 2usize..40).prop_map(|(t, m)| MonitoringGrid::continuous_uniform_approx(t, m).unwrap()),
        (0.1f64..10.0, prop::collection::vec((0.01f64..1.0, 0.01f64..1.0), 1..12)).prop_map(|(t, raw)| {
            let mut acc = 0.0;
            let total: f64 = raw.iter().map(|r| r.0).sum();
            let dates = raw.iter().map(|r| { acc += r.0; acc / total * t }).collect();
            MonitoringGrid::from_dates(t, dates, raw.iter().map(|r| r.1).collect()).unwrap()
        }),
    ]
}

fn curve_strategy() -> impl Strategy<Value = RateCurve> {
    prop_oneof![
        (-0.02f64..0.12).prop_map(RateCurve::constant),
        (0.0f64..0.12, -1.0f64..1.0).prop_map(|(r, c)| RateCurve::sinusoidal(r, c)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_are_ordered(
        grid in grid_strategy(),
        curve in curve_strategy(),
        sigma in 0.02f64..0.9,
        c in 0.6f64..1.5,
    ) {
        let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
        let s = BoundSettings::default();
        let lb1 = m.lb1(c, 100.0, &s).unwrap().value;
        let lb2 = m.lb2(c, 100.0, &s).unwrap().value;
        let ub1 = m.ub1(c, 100.0, &s).unwrap().value;
        prop_assert!(lb2 <= lb1 + 1e-9 * lb1.max(1.0), "lb2 {} lb1 {}", lb2, lb1);
        prop_assert!(lb1 <= ub1 + 1e-9 * ub1.max(1.0), "lb1 {} ub1 {}", lb1, ub1);
        // the payoff is dominated by the average itself
        prop_assert!(ub1 <= m.zero_strike_value(100.0) + 1e-9);
    }

    #[test]
    fn optimal_control_beats_any_other(
        grid in grid_strategy(),
        sigma in 0.05f64..0.8,
        c in 0.7f64..1.4,
        a in 0.0f64..1.5,
    ) {
        let m = GaussianAvgModel::new(&RateCurve::constant(0.05), sigma, &grid).unwrap();
        let s = BoundSettings::default();
        let best = m.ub1(c, 100.0, &s).unwrap().value;
        prop_assert!(best <= m.ub1_objective(c, 100.0, a, &s).unwrap() + 1e-9);
        let lb = m.lb1(c, 100.0, &s).unwrap();
        let z = lb.argopt.unwrap();
        prop_assert!(m.lb1_objective(c, 100.0, z + 0.01) <= lb.value + 1e-9);
        prop_assert!(m.lb1_objective(c, 100.0, z - 0.01) <= lb.value + 1e-9);
    }

    #[test]
    fn vanishing_strike_gives_the_forward(
        grid in grid_strategy(),
        curve in curve_strategy(),
        sigma in 0.02f64..0.9,
    ) {
        let m = GaussianAvgModel::new(&curve, sigma, &grid).unwrap();
        let s = BoundSettings::default();
        let fwd = m.zero_strike_value(100.0);
        let c = 1e-14;
        for v in [m.lb1(c, 100.0, &s).unwrap().value, m.ub1(c, 100.0, &s).unwrap().value, m.lb2(c, 100.0, &s).unwrap().value] {
            prop_assert!((v - fwd).abs() <= 1e-6 * fwd, "{} vs {}", v, fwd);
        }
    }

    #[test]
    fn bounds_fall_as_strike_rises(grid in grid_strategy(), sigma in 0.05f64..0.8, c in 0.6f64..1.4) {
        let m = GaussianAvgModel::new(&RateCurve::constant(0.03), sigma, &grid).unwrap();
        let s = BoundSettings::default();
        let hi = c + 0.05;
        prop_assert!(m.lb1(hi, 100.0, &s).unwrap().value <= m.lb1(c, 100.0, &s).unwrap().value + 1e-9);
        prop_assert!(m.ub1(hi, 100.0, &s).unwrap().value <= m.ub1(c, 100.0, &s).unwrap().value + 1e-9);
    }

    #[test]
    fn integrated_rate_is_additive(r in 0.0f64..0.12, c in -1.0f64..1.0, s in 0.0f64..5.0, t in 0.0f64..5.0) {
        let curve = RateCurve::sinusoidal(r, c);
        let whole = curve.integrated_rate(s + t).unwrap();
        let piece = simpson(|x| curve.rate(x), s, s + t, 2000);
        prop_assert!((whole - curve.integrated_rate(s).unwrap() - piece).abs() < 1e-10);
    }
}

#[test]
fn tabulated_curve_integrates_its_rate() {
    let curve = RateCurve::tabulated(vec![(0.0, 0.02), (0.5, 0.05), (2.0, 0.03), (3.0, 0.04)]).unwrap();
    for t in [0.1, 0.5, 1.3, 2.0, 2.7, 4.5] {
        // Simpson is exact on each linear piece
        let mut knots = vec![0.0];
        knots.extend([0.5, 2.0, 3.0].iter().copied().filter(|&k| k < t));
        knots.push(t);
        let q: f64 = knots.windows(2).map(|w| simpson(|x| curve.rate(x), w[0], w[1], 2)).sum();
        assert!((curve.integrated_rate(t).unwrap() - q).abs() < 1e-14, "t={t}");
    }
}

#[test]
fn positive_part_mean_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let b = rng.random_range(-3.0..3.0);
        let beta = rng.random_range(-2.0..2.0);
        let m = rng.random_range(-1.0..1.0);
        let s = rng.random_range(0.01..2.0);
        let got = positive_part_gaussian_mean(b, beta, m, s).unwrap();
        let dens = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let f = |z: f64| (b + beta * (m + s * z)).max(0.0) * dens(z);
        // split at the kink so Simpson stays high order
        let brute = if beta != 0.0 {
            let k = ((-b / beta) - m) / s;
            let k = k.clamp(-12.0, 12.0);
            simpson(f, -12.0, k, 4000) + simpson(f, k, 12.0, 4000)
        } else {
            simpson(f, -12.0, 12.0, 4000)
        };
        assert!((got - brute).abs() < 1e-10 * got.abs().max(1.0), "{b} {beta} {m} {s}: {got} vs {brute}");
    }
}

fn table1_curves() -> [(f64, f64); 4] {
    [(1.0, 0.0), (1.0, 1.0), (9.0, 0.0), (9.0, 1.0)]
}

#[test]
fn dense_discrete_monitoring_approaches_continuous() {
    let s = BoundSettings::default();
    for (t, c) in table1_curves() {
        let curve = RateCurve::sinusoidal(0.09, c);
        let lb1 = |g: MonitoringGrid| GaussianAvgModel::new(&curve, 0.3, &g).unwrap().lb1(1.0, 100.0, &s).unwrap().value;
        let cont = lb1(MonitoringGrid::continuous_uniform_approx(t, 200).unwrap());
        let mid = lb1(MonitoringGrid::uniform_midpoint(t, 2000).unwrap());
        assert!((mid - cont).abs() < 2e-3, "T={t} c={c}: {mid} vs {cont}");
        // right-endpoint dates carry an O(T/N) bias that halves with N
        let r2000 = lb1(MonitoringGrid::uniform_discrete(t, 2000).unwrap()) - cont;
        let r4000 = lb1(MonitoringGrid::uniform_discrete(t, 4000).unwrap()) - cont;
        assert!((1.9..2.1).contains(&(r2000 / r4000)), "T={t} c={c}: {r2000} {r4000}");
        // and the continuous grid is converged in its node count
        assert!((cont - lb1(MonitoringGrid::continuous_uniform_approx(t, 400).unwrap())).abs() < 1e-9);
    }
}

#[test]
fn plain_average_control_is_nearly_optimal() {
    let s = BoundSettings::default();
    for (t, c) in table1_curves() {
        let curve = RateCurve::sinusoidal(0.09, c);
        for grid in [
            MonitoringGrid::uniform_discrete(t, 10).unwrap(),
            MonitoringGrid::uniform_discrete(t, 50).unwrap(),
            MonitoringGrid::continuous_uniform_approx(t, 200).unwrap(),
        ] {
            let m = GaussianAvgModel::new(&curve, 0.3, &grid).unwrap();
            let best = m.ub1(1.0, 100.0, &s).unwrap();
            let a = best.argopt.unwrap();
            assert!((0.7..1.0).contains(&a), "a* = {a}");
            let gap = m.ub1_objective(1.0, 100.0, 1.0, &s).unwrap() - best.value;
            assert!(gap >= -1e-12);
            if t == 1.0 {
                assert!(gap <= 0.01, "T=1: gap {gap}");
            } else {
                assert!(gap <= 1e-3 * best.value, "T=9: gap {gap}");
            }
        }
    }
}
