use colour3_core::polylog::*;
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn constants() {
    assert!((zeta3() - 1.202_056_903_159_594_3).abs() < 1e-15);
    assert!((li2(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-12);
    assert!((li3(-1.0).unwrap() + 0.75 * zeta3()).abs() < 1e-12);
    assert!((li2(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
}

#[test]
fn dense_grids() {
    for i in 0..=1000 {
        let x = 50.0 * i as f64 / 1000.0;
        assert!(dilog_identity_residual(x).unwrap().abs() < 1e-12, "{x}");
        if x > 0.0 {
            assert!(trilog_inversion_residual(x).unwrap().abs() < 1e-11, "{x}");
            assert!(landen_residual(x).unwrap().abs() < 1e-11, "{x}");
        }
    }
}

#[test]
fn two_term_landen_misses_one_trilog() {
    // the residual is exactly −Li3(1/(1+x))
    let r = trilog_two_term_residual(1.0).unwrap();
    assert!((r + li3(0.5).unwrap()).abs() < 1e-12);
}

proptest! {
    #[test]
    fn dilog_identity(x in 0.0f64..1e4) {
        prop_assert!(dilog_identity_residual(x).unwrap().abs() < 1e-11 * (1.0 + x.ln_1p().powi(2)));
    }

    #[test]
    fn trilog_inversion(x in 1e-6f64..1e6) {
        let scale = 1.0 + x.ln().abs().powi(3);
        prop_assert!(trilog_inversion_residual(x).unwrap().abs() < 1e-12 * scale);
    }

    #[test]
    fn li2_reflection(x in 1e-6f64..(1.0 - 1e-6)) {
        let lhs = li2(x).unwrap() + li2(1.0 - x).unwrap();
        let rhs = PI * PI / 6.0 - x.ln() * (1.0 - x).ln();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn li3_is_increasing(a in -100.0f64..1.0, b in -100.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(li3(lo).unwrap() < li3(hi).unwrap());
    }
}
