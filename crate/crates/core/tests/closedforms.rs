use approx::assert_relative_eq;
use colour3_core::closedforms::*;
use proptest::prelude::*;

#[test]
fn zero_momentum_values() {
    let pi2 = std::f64::consts::PI.powi(2);
    assert_relative_eq!(g4(0.0, 0.0), 2.0 * (pi2 - 6.0), max_relative = 1e-12);
    assert_relative_eq!(c6_closed(), 36.835_233_195_134, max_relative = 1e-12);
}

#[test]
fn closed_third_order_is_not_regular_on_the_diagonal() {
    // a regular G6 would have zero residue; this one does not
    assert!(g6_diagonal_residue(0.5).abs() > 0.1);
    assert!((gp6_diag(0.0) - c6_closed()).abs() > 1.0);
}

#[test]
fn momentum_pair_rejects_bad_input() {
    assert!(MomentumPair::new(-1.0, 0.0).is_err());
    assert!(MomentumPair::new(f64::NAN, 0.0).is_err());
    assert!(closed_form(4, 1.0, 0.0).is_err());
}

proptest! {
    #[test]
    fn symmetric(p1 in 0.0f64..50.0, p2 in 0.0f64..50.0) {
        assert_relative_eq!(g2(p1, p2), g2(p2, p1), max_relative = 1e-13);
        assert_relative_eq!(g4(p1, p2), g4(p2, p1), max_relative = 1e-12);
    }

    #[test]
    fn continuous_across_diagonal(p in 0.0f64..20.0, h in 1e-7f64..1e-5) {
        assert_relative_eq!(g2(p + h, p), g2(p, p), max_relative = 1e-4);
        assert_relative_eq!(g4(p + h, p), g4(p, p), max_relative = 1e-4);
    }
}
