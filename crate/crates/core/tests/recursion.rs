use std::sync::OnceLock;

use colour3_core::closedforms::{g2, g4};
use colour3_core::recursion::*;
use colour3_core::{Error, QuadratureRule};
use proptest::prelude::*;

// high-precision quadrature of the order-three coefficient
const G6_AT_1_HALF: f64 = 0.429_194_660_460_936_63;
const G6_DIAG_1: f64 = 0.154_908_596_571_035;
const G6_DIAG_HALF: f64 = 1.273_592_399_998_70;

fn solution() -> &'static Solution {
    static S: OnceLock<Solution> = OnceLock::new();
    S.get_or_init(|| Solver::new(SolverConfig::default()).unwrap().solve(3).unwrap())
}

#[test]
fn seed_is_free_propagator() {
    let s = solution();
    for &(p1, p2) in &[(0.0, 0.0), (0.37, 2.9), (11.0, 0.2)] {
        let v = s.orders[0].interpolate(p1, p2);
        assert!((v - 1.0 / (1.0 + p1 + p2)).abs() < 1e-14);
    }
}

#[test]
fn third_order_matches_quadrature_oracle() {
    let s = solution();
    assert!((s.value(3, 1.0, 0.5).unwrap() - G6_AT_1_HALF).abs() < 1e-9);
    assert!((s.diagonal(3, 1.0).unwrap() - G6_DIAG_1).abs() < 1e-8);
    assert!((s.diagonal(3, 0.5).unwrap() - G6_DIAG_HALF).abs() < 1e-8);
}

#[test]
fn zero_momentum_coefficients() {
    let s = solution();
    let pi2 = std::f64::consts::PI.powi(2);
    let c3 = pi2 * (514.0 / 3.0 - 224.0 * std::f64::consts::LN_2) + 120.0 * colour3_core::polylog::zeta3() - 266.0;
    assert!((s.diagonal(1, 0.0).unwrap() - 2.0).abs() < 1e-10);
    assert!((s.diagonal(2, 0.0).unwrap() - 2.0 * (pi2 - 6.0)).abs() < 1e-8);
    assert!((s.diagonal(3, 0.0).unwrap() - c3).abs() < 1e-7);
}

#[test]
fn series_table_shapes() {
    let t = g00_series(SolverConfig::default(), 0).unwrap();
    assert_eq!(t.coefficients, vec![1.0]);
    let t = g00_series(SolverConfig::default(), 2).unwrap();
    assert_eq!(t.coefficients.len(), 3);
    assert!(t.errors.iter().all(|e| *e >= 0.0 && *e < 1e-6));
    assert!(matches!(g00_series(SolverConfig::default(), 5), Err(Error::Parameter(_))));
}

#[test]
fn colour_factor_canary() {
    let config = SolverConfig { colour_factor: 1.0, ..Default::default() };
    let wrong = Solver::new(config).unwrap().solve(2).unwrap();
    assert!((wrong.value(2, 1.0, 0.0).unwrap() - g4(1.0, 0.0)).abs() > 1e-3);
}

#[test]
fn residual_scales_with_truncation() {
    let s = solution();
    let rule = QuadratureRule::default();
    for n in 1..=2 {
        let r = |lambda: f64| {
            eval_closed_equation_residual(|a, b| s.truncated(n, lambda, a, b), lambda, 1.0, 0.5, &rule).unwrap()
        };
        let exponent = (r(0.1) / r(0.05)).log2();
        assert!((exponent - (2 * n + 2) as f64).abs() < 0.2, "n = {n}: {exponent}");
    }
}

#[test]
fn diagonal_limit_of_smooth_function() {
    let f = |a: f64, b: f64| (a.ln_1p() - b.ln_1p()) / (a - b);
    for &p in &[0.0, 0.5, 3.0] {
        let v = cross_diagonal_limit(f, p, CROSS_SPAN * (1.0 + p), -0.25).unwrap();
        assert!((v - 1.0 / (1.0 + p)).abs() < 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn low_orders_match_closed_forms(p1 in 0.0f64..5.0, p2 in 0.0f64..5.0) {
        let s = solution();
        prop_assert!((s.value(1, p1, p2).unwrap() - g2(p1, p2)).abs() < 1e-8);
        prop_assert!((s.value(2, p1, p2).unwrap() - g4(p1, p2)).abs() < 1e-6);
    }

    #[test]
    fn symmetric_in_momenta(p1 in 0.0f64..20.0, p2 in 0.0f64..20.0) {
        let s = solution();
        for n in 1..=3 {
            let a = s.value(n, p1, p2).unwrap();
            let b = s.value(n, p2, p1).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-3));
        }
    }
}

#[test]
fn third_truncation_residual_is_small() {
    let s = solution();
    let rule = QuadratureRule::default();
    let r = eval_closed_equation_residual(|a, b| s.truncated(3, 0.05, a, b), 0.05, 1.0, 0.5, &rule).unwrap();
    assert!(r < 1e-8, "{r}");
    let free = eval_closed_equation_residual(|a, b| s.truncated(0, 0.0, a, b), 0.0, 1.0, 0.5, &rule).unwrap();
    assert!(free < 1e-15);
}

#[test]
fn steps_are_nearly_symmetric_and_bounded() {
    let s = solution();
    for coef in &s.orders[1..] {
        let max = coef.scaled().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(coef.asymmetry < 1e-7 * max, "order {}: {}", coef.order, coef.asymmetry);
        assert!(max.is_finite() && max < 1e3);
    }
}
