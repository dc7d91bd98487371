use colour3_core::quad::{eval_subtracted, make_rule};
use colour3_core::QuadratureRule;
use proptest::prelude::*;

proptest! {
    #[test]
    fn two_factor_integral(p1 in 0.0f64..50.0, p2 in 0.0f64..50.0) {
        prop_assume!((p1 - p2).abs() > 1e-6);
        let rule = QuadratureRule::default();
        let v = rule.integrate(|q| 1.0 / ((1.0 + q + p1) * (1.0 + q + p2))).unwrap();
        let exact = (p1.ln_1p() - p2.ln_1p()) / (p1 - p2);
        prop_assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn three_factor_integral(a in 0.0f64..20.0, b in 0.0f64..20.0, c in 0.0f64..20.0) {
        prop_assume!((a - b).abs() > 1e-3 && (b - c).abs() > 1e-3 && (a - c).abs() > 1e-3);
        let rule = QuadratureRule::default();
        let v = rule.integrate(|q| 1.0 / ((1.0 + q + a) * (1.0 + q + b) * (1.0 + q + c))).unwrap();
        let (la, lb, lc) = (a.ln_1p(), b.ln_1p(), c.ln_1p());
        let exact = la / ((a - b) * (c - a)) + lb / ((b - a) * (c - b)) + lc / ((c - a) * (b - c));
        prop_assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn polynomial_exactness_in_t(k in 0usize..20) {
        // ∫ t^k dt over [0,1] written as an integral in q with weight (1−t)²
        let rule = make_rule(6, 12).unwrap();
        let v = rule.integrate(|q| {
            let t = q / (1.0 + q);
            t.powi(k as i32) * (1.0 - t) * (1.0 - t)
        }).unwrap();
        prop_assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-13);
    }

    #[test]
    fn subtracted_quotient_is_smooth(q0 in 0.0f64..10.0, dq in -1e-3f64..1e-3) {
        let g = |q: f64| q.ln_1p();
        let v = eval_subtracted(g, q0, q0 + dq);
        let slope = 1.0 / (1.0 + q0);
        prop_assert!((v - slope).abs() < (dq.abs() + 1e-7) * slope);
    }
}
