//! Closed-form coefficient functions G0, G2, G4, G6 and the G6 diagonal.
//!
//! Every function is symmetric bitwise: arguments are sorted before use.
//! Near p1 = p2 the closed expressions are 0/0 and are replaced by an even
//! polynomial in the offset fitted through samples away from the diagonal.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polylog::{li2_ratio_over, ln1p_over, zeta3, LN2};
use crate::polylog::{li2 as li2_checked, li3 as li3_checked};

const PI2: f64 = PI * PI;

/// External face labels, both finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumPair {
    pub p1: f64,
    pub p2: f64,
}

impl MomentumPair {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for p in [p1, p2] {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Domain(p));
            }
        }
        Ok(MomentumPair { p1, p2 })
    }

    pub fn swapped(self) -> Self {
        MomentumPair { p1: self.p2, p2: self.p1 }
    }
}

fn sorted(p1: f64, p2: f64) -> (f64, f64) {
    if p1 >= p2 {
        (p1, p2)
    } else {
        (p2, p1)
    }
}

// Arguments below here are in (-1/2, 1], so the checked versions never fail.
fn li2(x: f64) -> f64 {
    li2_checked(x).expect("li2 argument <= 1")
}

fn li3(x: f64) -> f64 {
    li3_checked(x).expect("li3 argument <= 1")
}

/// Offset samples of an even function f(d) of the half-offset, and the
/// Lagrange basis in z = d² through them.
struct OffsetFit {
    z: Vec<f64>,
    y: Vec<f64>,
}

impl OffsetFit {
    /// Samples at d_k = k * step, k = 1..=n. With `pole`, z·f(z) is fitted
    /// instead of f, which admits a 1/d² term.
    fn new<F: Fn(f64) -> f64>(f: F, step: f64, n: usize, pole: bool) -> Self {
        let z: Vec<f64> = (1..=n).map(|k| (k as f64 * step).powi(2)).collect();
        let y = (1..=n)
            .map(|k| {
                let v = f(k as f64 * step);
                if pole {
                    v * z[k - 1]
                } else {
                    v
                }
            })
            .collect();
        OffsetFit { z, y }
    }

    fn value(&self, target: f64) -> f64 {
        let n = self.z.len();
        let mut sum = 0.0;
        for i in 0..n {
            let mut l = 1.0;
            for j in 0..n {
                if j != i {
                    l *= (target - self.z[j]) / (self.z[i] - self.z[j]);
                }
            }
            sum += l * self.y[i];
        }
        sum
    }

    fn slope_at_zero(&self) -> f64 {
        let n = self.z.len();
        let mut sum = 0.0;
        for i in 0..n {
            let mut denom = 1.0;
            for j in 0..n {
                if j != i {
                    denom *= self.z[i] - self.z[j];
                }
            }
            // derivative of prod_{j != i} (z - z_j) at z = 0
            let mut deriv = 0.0;
            for k in 0..n {
                if k == i {
                    continue;
                }
                let mut prod = 1.0;
                for j in 0..n {
                    if j != i && j != k {
                        prod *= -self.z[j];
                    }
                }
                deriv += prod;
            }
            sum += deriv / denom * self.y[i];
        }
        sum
    }
}

fn near_diagonal<F: Fn(f64, f64) -> f64>(raw: F, a: f64, b: f64, kappa: f64, n: usize) -> f64 {
    let s = 0.5 * (a + b);
    let d = 0.5 * (a - b);
    let step = kappa * (1.0 + s);
    if d >= step {
        raw(a, b)
    } else {
        OffsetFit::new(|e| raw(s + e, s - e), step, n, false).value(d * d)
    }
}

/// ln((1+a)/(1+b))/(a-b), stable for a ≈ b.
fn log_ratio_quotient(a: f64, b: f64) -> f64 {
    ln1p_over((a - b) / (1.0 + b)) / (1.0 + b)
}

pub fn g0(p1: f64, p2: f64) -> f64 {
    1.0 / (1.0 + p1 + p2)
}

pub fn g2(p1: f64, p2: f64) -> f64 {
    let (a, b) = sorted(p1, p2);
    let s = 1.0 + a + b;
    2.0 * log_ratio_quotient(a, b) / (s * s)
}

// 2 log(1+p)/(p(1+2p)(1+p))
fn g4_a(p: f64) -> f64 {
    2.0 * ln1p_over(p) / ((1.0 + 2.0 * p) * (1.0 + p))
}

// π²/6 + 2 Li2(p/(1+p))
fn g4_b(p: f64) -> f64 {
    PI2 / 6.0 + 2.0 * li2(p / (1.0 + p))
}

fn g4_raw(a: f64, b: f64) -> f64 {
    let s = 1.0 + a + b;
    let d = a - b;
    let lq = log_ratio_quotient(a, b);
    let bracket = 3.0 * lq * lq * d / s + g4_a(a) - g4_a(b)
        - (1.0 + 2.0 * b) * g4_b(a) / ((1.0 + 2.0 * a).powi(2) * s)
        + (1.0 + 2.0 * a) * g4_b(b) / ((1.0 + 2.0 * b).powi(2) * s);
    2.0 * bracket / (s * s * d)
}

pub fn g4(p1: f64, p2: f64) -> f64 {
    let (a, b) = sorted(p1, p2);
    near_diagonal(g4_raw, a, b, 1e-3, 4)
}

/// Which of f1..f12 carry a (p1−p2) pole, and the power of p1, p2 in their denominators.
fn f_poles(k: usize) -> (bool, i32, i32) {
    match k {
        1 | 4 => (true, 1, 0),
        3 => (true, 2, 0),
        9 => (true, 1, 1),
        10 => (false, 1, 1),
        2 | 5 | 6 | 7 | 8 => (true, 0, 0),
        _ => (false, 0, 0),
    }
}

/// f_k times p1^i p2^j, where p1^i p2^j is its momentum pole (see `f_poles`).
fn f_reduced(k: usize, p1: f64, p2: f64) -> f64 {
    let s = 1.0 + p1 + p2;
    let d = p1 - p2;
    let (u1, u2) = (1.0 + 2.0 * p1, 1.0 + 2.0 * p2);
    let (v1, v2) = (1.0 + p1, 1.0 + p2);
    match k {
        1 => -8.0 / (v1 * v1 * u1 * u1 * d * s * s),
        2 => {
            4.0 * (d.powi(3) + s * (7.0 * s * s - 3.0 * u2 * d))
                / (u1.powi(3) * d * s.powi(4) * u2 * u2)
        }
        3 => {
            6.0 * (s * (2.0 * d * (1.0 + 10.0 * p1 * v1) + 3.0 * v1 * u1) + 2.0 * p1 * v1 * u1 * u1)
                / (v1 * v1 * u1.powi(3) * d * d * s.powi(3))
        }
        4 => {
            -4.0 * (s * (2.0 * v2 + p1 * (11.0 + 43.0 * p1 + 38.0 * p1 * p1 - 6.0 * (3.0 + 4.0 * p1) * p2))
                - 2.0 * v1 * u1.powi(3))
                / (v1 * v1 * u1.powi(3) * d * d * s.powi(3))
        }
        5 => 12.0 * (2.0 * d * d + u2 * s) / (u1 * u1 * d.powi(3) * s.powi(4)),
        6 => {
            let w = 1.0 + 3.0 * p1 - p2;
            -24.0 * (s * (10.0 * d * d + w * w) - d.powi(3)) / (u1.powi(4) * d.powi(3) * s.powi(3))
        }
        7 => -12.0 * (5.0 + 6.0 * p1 + 4.0 * p2) / (u1.powi(4) * d * s.powi(3)),
        8 => 20.0 / (s.powi(4) * d.powi(3)),
        9 => {
            -24.0 * (2.0 * p1 * p1 - 2.0 * p1 * p2 + p1 + 2.0 * p2 * p2 + p2)
                / (v1 * u1 * d * d * v2 * u2 * s * s)
        }
        10 => {
            let inner = s
                * (48.0 * p1.powi(3)
                    + (-48.0 * p1 * p1 - 24.0 * p1 + 72.0) * p2 * p2
                    + (-40.0 * p1 * p1 - 12.0 * p1 + 56.0) * p2
                    + 88.0 * p1 * p1
                    + 56.0 * p1
                    + 32.0 * p2.powi(3)
                    + 24.0)
                - u1 * u1 * (4.0 * p1 * v1 - 1.0);
            let num = p1 * p2 * inner
                + 2.0 * u1 * u1 * u2 * u2 * s.powi(3)
                + p1 * v1 * u1 * u1
                + p2 * v2 * u2 * u2;
            4.0 * num / (3.0 * v1 * u1.powi(3) * v2 * u2.powi(3) * s.powi(3))
        }
        11 => -32.0 * (9.0 * d * d + 7.0 * s * s) / (u1.powi(4) * u2.powi(4) * s),
        12 => 24.0 * (d * d + 5.0 * s * s) / (u1.powi(3) * u2.powi(3) * s.powi(3)),
        _ => unreachable!("k checked by caller"),
    }
}

/// The coefficient function f_k(p1, p2), k = 1..=12, in closed form.
pub fn f_coeff(k: usize, p1: f64, p2: f64) -> Result<f64> {
    if !(1..=12).contains(&k) {
        return Err(Error::Parameter(format!("f_k index must be in 1..=12, got {k}")));
    }
    let (diag, i, j) = f_poles(k);
    if (diag && p1 == p2) || (i > 0 && p1 == 0.0) || (j > 0 && p2 == 0.0) {
        return Err(Error::Pole { k, p1, p2 });
    }
    Ok(f_reduced(k, p1, p2) / (p1.powi(i) * p2.powi(j)))
}

// π²(f4(p1,p2)/6 + f4(p2,p1)/6 + f10(p1,p2)) with the 1/p poles cancelled.
const PI2_NUMERATOR: [(i32, i32, f64); 49] = [
    (7, 2, 128.0), (7, 1, 768.0), (7, 0, 576.0), (6, 3, -64.0), (6, 2, 256.0),
    (6, 1, 3088.0), (6, 0, 2480.0), (5, 4, -64.0), (5, 3, -992.0), (5, 2, -1424.0),
    (5, 1, 4344.0), (5, 0, 4312.0), (4, 5, -64.0), (4, 4, -448.0), (4, 3, -3296.0),
    (4, 2, -5472.0), (4, 1, 1772.0), (4, 0, 3828.0), (3, 6, -64.0), (3, 5, -992.0),
    (3, 4, -3296.0), (3, 3, -7696.0), (3, 2, -9396.0), (3, 1, -2102.0), (3, 0, 1702.0),
    (2, 7, 128.0), (2, 6, 256.0), (2, 5, -1424.0), (2, 4, -5472.0), (2, 3, -9396.0),
    (2, 2, -8852.0), (2, 1, -3088.0), (2, 0, 216.0), (1, 7, 768.0), (1, 6, 3088.0),
    (1, 5, 4344.0), (1, 4, 1772.0), (1, 3, -2102.0), (1, 2, -3088.0), (1, 1, -1308.0),
    (1, 0, -78.0), (0, 7, 576.0), (0, 6, 2480.0), (0, 5, 4312.0), (0, 4, 3828.0),
    (0, 3, 1702.0), (0, 2, 216.0), (0, 1, -78.0), (0, 0, -12.0),
];

fn pi2_rational(p1: f64, p2: f64) -> f64 {
    let num: f64 = PI2_NUMERATOR
        .iter()
        .map(|&(i, j, c)| c * p1.powi(i) * p2.powi(j))
        .sum();
    let d = p1 - p2;
    let den = 3.0
        * (1.0 + p1).powi(2)
        * (1.0 + p2).powi(2)
        * (1.0 + 2.0 * p1).powi(3)
        * (1.0 + 2.0 * p2).powi(3)
        * (1.0 + p1 + p2).powi(3)
        * d
        * d;
    PI2 * num / den
}

/// Named contributions to G6; their sum is the closed expression.
pub fn g6_terms(p1: f64, p2: f64) -> Vec<(&'static str, f64)> {
    let mut terms = Vec::with_capacity(19);
    let half = |a: f64, b: f64, terms: &mut Vec<(&'static str, f64)>, tag: [&'static str; 7]| {
        let l = a.ln_1p();
        let r = ln1p_over(a);
        let x = a / (1.0 + a);
        let li2x = li2(x);
        let li3x = li3(x);
        let lq = (a - b) / (1.0 + b);
        let lq = lq.ln_1p();
        // the π²/6 part of the f4 term is folded into `pi2_rational`
        terms.push((tag[0], r * f_reduced(1, a, b)));
        terms.push((tag[1], PI2 * l * f_reduced(2, a, b)));
        terms.push((tag[2], r * r * f_reduced(3, a, b)));
        terms.push((tag[3], li2_ratio_over(a) * f_reduced(4, a, b)));
        terms.push((tag[4], li2x * lq * f_reduced(5, a, b)));
        let six = li3(-a) + li3x + li2x * l + l * l * l / 6.0 - PI2 * l / 6.0;
        terms.push((tag[5], six * f_reduced(6, a, b)));
        terms.push((tag[6], (li3x + PI2 * l / 3.0) * f_reduced(7, a, b)));
    };
    half(p1, p2, &mut terms, ["f1", "f2", "f3", "f4", "f5", "f6", "f7"]);
    half(p2, p1, &mut terms, ["f1'", "f2'", "f3'", "f4'", "f5'", "f6'", "f7'"]);
    let lq = ((p1 - p2) / (1.0 + p2)).ln_1p();
    terms.push(("f8", lq.powi(3) * f_reduced(8, p1, p2)));
    terms.push(("f9", ln1p_over(p1) * ln1p_over(p2) * f_reduced(9, p1, p2)));
    terms.push(("pi2", pi2_rational(p1, p2)));
    terms.push(("f11", PI2 * LN2 * f_reduced(11, p1, p2)));
    terms.push(("f12", zeta3() * f_reduced(12, p1, p2)));
    terms
}

fn g6_raw(a: f64, b: f64) -> f64 {
    g6_terms(a, b).iter().map(|(_, v)| v).sum()
}

const G6_KAPPA: f64 = 0.02;
const G6_SAMPLES: usize = 7;

fn g6_fit(s: f64) -> OffsetFit {
    OffsetFit::new(|e| g6_raw(s + e, s - e), G6_KAPPA * (1.0 + s), G6_SAMPLES, true)
}

/// The closed-form order-λ⁶ coefficient.
///
/// The closed expression keeps a 1/(p1−p2)² pole (see `g6_diagonal_residue`).
/// Near the diagonal the samples are fitted with that pole included, and on
/// the exact diagonal the finite part of the expansion is returned.
pub fn g6(p1: f64, p2: f64) -> f64 {
    let (a, b) = sorted(p1, p2);
    let s = 0.5 * (a + b);
    let d = 0.5 * (a - b);
    if d >= G6_KAPPA * (1.0 + s) {
        return g6_raw(a, b);
    }
    let fit = g6_fit(s);
    if d == 0.0 {
        fit.slope_at_zero()
    } else {
        fit.value(d * d) / (d * d)
    }
}

/// Coefficient r(p) of r/(p1−p2)² in the closed-form G6 about p1 = p2 = p.
/// A consistent diagonal limit requires r = 0.
pub fn g6_diagonal_residue(p: f64) -> f64 {
    // f ≈ A/d² with d = (p1−p2)/2, so r = 4A
    4.0 * g6_fit(p).value(0.0)
}

// Taylor coefficients of the last four diagonal terms about p = 0.
const GP6_TAIL_SERIES: [f64; 6] = [
    -320.0,
    73651.0 / 18.0,
    -269491.0 / 9.0,
    49472993.0 / 300.0,
    -1520115.0 / 2.0,
    91037448583.0 / 29400.0,
];

fn gp6_tail(p: f64) -> f64 {
    if p < 1e-4 {
        return GP6_TAIL_SERIES.iter().rev().fold(0.0, |acc, c| acc * p + c);
    }
    let l = p.ln_1p();
    let (v, u) = (1.0 + p, 1.0 + 2.0 * p);
    let x = p / v;
    2.0 * (9.0 + 10.0 * p) / (p * u.powi(7))
        + 4.0 * l * (5.0 + 7.0 * p) / (p * p * v * v * u.powi(5))
        - 2.0 * l * l * (p * v * (546.0 * p * v + 125.0) + 11.0) / (p.powi(3) * v.powi(3) * u.powi(6))
        + 4.0 * li2(x) * (7.0 + v * (176.0 * p.powi(3) + 75.0 * p * p - 44.0 * p - 11.0))
            / (p * p * v.powi(3) * u.powi(6))
}

/// Closed-form diagonal G6(p, p).
pub fn gp6_diag(p: f64) -> f64 {
    let l = p.ln_1p();
    let x = p / (1.0 + p);
    let u = 1.0 + 2.0 * p;
    let braces = li3(-p) + 93.0 / 74.0 * li3(x) + li2(x) * l + l.powi(3) / 6.0
        - 14.0 / 111.0 * PI2 * l
        - 14.0 / 111.0 * PI2 * LN2
        + 5.0 / 74.0 * zeta3();
    1776.0 / u.powi(7) * braces
        + 2.0 * PI2 * (10.0 * p * (p * (4.0 * p + 39.0) + 60.0) + 257.0)
            / (3.0 * (1.0 + p).powi(3) * u.powi(6))
        + gp6_tail(p)
}

/// Zero-momentum coefficient of λ⁶ in closed form: π²(514/3 − 224 ln 2) + 120 ζ(3) − 266.
pub fn c6_closed() -> f64 {
    PI2 * (514.0 / 3.0 - 224.0 * LN2) + 120.0 * zeta3() - 266.0
}

/// Closed form of order `n` (0..=3).
pub fn closed_form(n: usize, p1: f64, p2: f64) -> Result<f64> {
    match n {
        0 => Ok(g0(p1, p2)),
        1 => Ok(g2(p1, p2)),
        2 => Ok(g4(p1, p2)),
        3 => Ok(g6(p1, p2)),
        _ => Err(Error::Parameter(format!("no closed form for order {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_at_simple_points() {
        assert_eq!(g0(0.0, 0.0), 1.0);
        assert_eq!(g0(1.0, 0.0), 0.5);
        assert!((g2(0.0, 0.0) - 2.0).abs() < 1e-15);
        assert!((g2(1.0, 0.0) - LN2 / 2.0).abs() < 1e-15);
        assert!((g2(1.0, 1.0) - 1.0 / 9.0).abs() < 1e-15);
        assert!((g4(0.0, 0.0) - 2.0 * (PI2 - 6.0)).abs() < 1e-10);
    }

    #[test]
    fn reference_coefficients() {
        assert!((f_coeff(8, 1.0, 0.0).unwrap() - 1.25).abs() < 1e-15);
        assert!((f_coeff(12, 0.0, 0.0).unwrap() - 120.0).abs() < 1e-12);
        assert!((f_coeff(11, 0.0, 0.0).unwrap() + 224.0).abs() < 1e-12);
        assert!(matches!(f_coeff(8, 1.0, 1.0), Err(Error::Pole { k: 8, .. })));
        assert!(matches!(f_coeff(10, 0.0, 1.0), Err(Error::Pole { k: 10, .. })));
        assert!(f_coeff(13, 1.0, 0.0).is_err());
    }

    #[test]
    fn folded_pi2_term_matches_separate_pieces() {
        for &(a, b) in &[(0.3, 1.7), (2.0, 0.5), (4.0, 3.1)] {
            let direct = PI2
                * (f_coeff(4, a, b).unwrap() / 6.0
                    + f_coeff(4, b, a).unwrap() / 6.0
                    + f_coeff(10, a, b).unwrap());
            assert!((pi2_rational(a, b) - direct).abs() < 1e-11 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn g4_continuous_across_switch() {
        for &p in &[0.0, 0.1, 1.0, 5.0] {
            let step = 1e-3 * (1.0 + p);
            let inside = g4(p + step * 0.999_999, p - step * 0.999_999 + 2e-12);
            let outside = g4(p + step * 1.000_001, p - step * 1.000_001);
            assert!((inside - outside).abs() < 1e-9, "{p}: {inside} {outside}");
        }
    }

    #[test]
    fn tail_series_matches_direct_evaluation() {
        let p: f64 = 1e-4;
        let series = GP6_TAIL_SERIES.iter().rev().fold(0.0, |acc, c| acc * p + c);
        let direct = gp6_tail(p * (1.0 + 1e-12));
        assert!((series - direct).abs() < 1e-8, "{series} {direct}");
    }
}
