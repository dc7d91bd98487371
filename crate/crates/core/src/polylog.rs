//! Real dilogarithm and trilogarithm.
//!
//! Arguments with |x| <= 1/2 are summed directly; everything else is mapped
//! into that disc by inversion, Landen and reflection identities.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

const ZETA3: f64 = 1.202_056_903_159_594_3;
const PI2_6: f64 = PI * PI / 6.0;

/// Apéry's constant.
pub fn zeta3() -> f64 {
    ZETA3
}

fn check(x: f64) -> Result<()> {
    if !x.is_finite() || x > 1.0 {
        return Err(Error::Domain(x));
    }
    Ok(())
}

fn series(x: f64, power: i32) -> f64 {
    let mut sum = 0.0;
    let mut xk = x;
    for k in 1..200 {
        let term = xk / (k as f64).powi(power);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        xk *= x;
    }
    sum
}

/// Li2(x) for real x <= 1.
pub fn li2(x: f64) -> Result<f64> {
    check(x)?;
    Ok(li2_unchecked(x))
}

fn li2_unchecked(x: f64) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x.abs() <= 0.5 {
        series(x, 2)
    } else if x > 0.5 {
        // reflection
        PI2_6 - x.ln() * (-x).ln_1p() - series(1.0 - x, 2)
    } else if x >= -1.0 {
        // Landen: x/(x-1) lands in [1/3, 1/2]
        let l = (-x).ln_1p();
        -series(x / (x - 1.0), 2) - 0.5 * l * l
    } else {
        // inversion
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - li2_unchecked(1.0 / x)
    }
}

// zeta(3 - k) / k! for k >= 3, the regular part of the expansion about x = 1
const LOG_SERIES: [(i32, f64); 9] = [
    (3, -0.5 / 6.0),
    (4, -1.0 / 12.0 / 24.0),
    (6, 1.0 / 120.0 / 720.0),
    (8, -1.0 / 252.0 / 40_320.0),
    (10, 1.0 / 240.0 / 3_628_800.0),
    (12, -1.0 / 132.0 / 479_001_600.0),
    (14, 691.0 / 32_760.0 / 87_178_291_200.0),
    (16, -1.0 / 12.0 / 20_922_789_888_000.0),
    (18, 3617.0 / 8160.0 / 6_402_373_705_728_000.0),
];

/// Li3(x) for real x <= 1.
pub fn li3(x: f64) -> Result<f64> {
    check(x)?;
    Ok(li3_unchecked(x))
}

fn li3_unchecked(x: f64) -> f64 {
    if x == 1.0 {
        ZETA3
    } else if x.abs() <= 0.5 {
        series(x, 3)
    } else if x > 0.5 {
        // expansion in mu = ln x; Landen and reflection would cycle here
        let mu = x.ln();
        let mut sum = ZETA3 + PI2_6 * mu + 0.5 * mu * mu * (1.5 - (-mu).ln());
        for &(k, c) in LOG_SERIES.iter() {
            sum += c * mu.powi(k);
        }
        sum
    } else if x >= -1.0 {
        // Landen with 1/(1+y) in [1/2, 2/3), which takes the log-series branch
        let y = -x;
        let l = y.ln_1p();
        -series(y / (1.0 + y), 3) - li3_unchecked(1.0 / (1.0 + y)) + l * l * l / 3.0
            - 0.5 * y.ln() * l * l
            - PI2_6 * l
            + ZETA3
    } else {
        let l = (-x).ln();
        li3_unchecked(1.0 / x) - l * l * l / 6.0 - PI2_6 * l
    }
}

/// ln(1+p)/p, continuous at p = 0.
pub fn ln1p_over(p: f64) -> f64 {
    if p.abs() < 1e-4 {
        1.0 - p / 2.0 + p * p / 3.0 - p * p * p / 4.0
    } else {
        p.ln_1p() / p
    }
}

/// Li2(p/(1+p))/p, continuous at p = 0.
pub fn li2_ratio_over(p: f64) -> f64 {
    if p.abs() < 1e-4 {
        // Li2(x)/p with x = p/(1+p)
        let x = p / (1.0 + p);
        (1.0 + x / 4.0 + x * x / 9.0 + x * x * x / 16.0) / (1.0 + p)
    } else {
        li2_unchecked(p / (1.0 + p)) / p
    }
}

pub(crate) const LN2: f64 = LN_2;

/// Li2(−x) + ½ log²(1+x) + Li2(x/(1+x)) for x >= 0; zero in exact arithmetic.
pub fn dilog_identity_residual(x: f64) -> Result<f64> {
    let l = x.ln_1p();
    Ok(li2(-x)? + 0.5 * l * l + li2(x / (1.0 + x))?)
}

/// Li3(−x) − Li3(−1/x) + log³x/6 + π²/6 log x for x > 0; zero in exact arithmetic.
pub fn trilog_inversion_residual(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(x));
    }
    let l = x.ln();
    Ok(li3(-x)? - li3(-1.0 / x)? + l * l * l / 6.0 + PI2_6 * l)
}

/// Li3(−x) + Li3(x/(1+x)) − log³(1+x)/3 + log x log²(1+x)/2 + π²/6 log(1+x) − ζ(3),
/// the two-term Landen relation without the Li3(1/(1+x)) term. This does
/// not vanish; see `landen_residual` for the complete relation.
pub fn trilog_two_term_residual(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(x));
    }
    let l = x.ln_1p();
    Ok(li3(-x)? + li3(x / (1.0 + x))? - l * l * l / 3.0 + 0.5 * x.ln() * l * l + PI2_6 * l - ZETA3)
}

/// The same relation with Li3(1/(1+x)) restored; zero in exact arithmetic.
pub fn landen_residual(x: f64) -> Result<f64> {
    Ok(trilog_two_term_residual(x)? + li3(1.0 / (1.0 + x))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(li2(0.0).unwrap(), 0.0);
        assert!((li2(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        assert!((li2(0.5).unwrap() - (PI * PI / 12.0 - LN2 * LN2 / 2.0)).abs() < 1e-15);
        assert!((li3(-1.0).unwrap() + 0.75 * ZETA3).abs() < 1e-15);
        assert!((li3(0.5).unwrap() - 0.537_213_193_608_040_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(li2(f64::NAN).is_err());
        assert!(li2(1.5).is_err());
        assert!(li3(f64::INFINITY).is_err());
    }

    #[test]
    fn log_series_branch_is_continuous() {
        for &x in &[0.5, 0.75, 0.9, 0.999_999] {
            let below = li3(x - 1e-12).unwrap();
            let above = li3(x + 1e-12).unwrap();
            assert!((below - above).abs() < 1e-10, "{x}");
        }
        assert!((li3(1.0 - 1e-15).unwrap() - ZETA3).abs() < 1e-12);
    }

    #[test]
    fn small_argument_helpers() {
        for &p in &[0.0, 1e-9, 5e-5, 2e-4, 0.3] {
            let a = ln1p_over(p);
            let b = li2_ratio_over(p);
            if p > 1e-4 {
                assert!((a - p.ln_1p() / p).abs() < 1e-15);
            }
            assert!((a - 1.0).abs() <= p);
            assert!((b - 1.0).abs() <= 2.0 * p);
        }
    }
}
