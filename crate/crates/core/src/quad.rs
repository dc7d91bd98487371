//! Gauss–Legendre quadrature on [0, ∞) through the map q = t/(1−t).

use std::cell::OnceCell;

use crate::error::{Error, Result};

pub const DEFAULT_PANELS: usize = 12;
pub const DEFAULT_POINTS: usize = 24;
pub const SUBTRACTION_THRESHOLD: f64 = 1e-4;

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite rule on t ∈ [0, 1]; panels halve in width toward t = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
    pub points_per_panel: usize,
    abscissae: Vec<f64>,
    mapped_weights: Vec<f64>,
}

pub fn make_rule(panels: usize, points: usize) -> Result<QuadratureRule> {
    if panels < 1 {
        return Err(Error::Parameter(format!("panels must be >= 1, got {panels}")));
    }
    if points < 2 {
        return Err(Error::Parameter(format!("points must be >= 2, got {points}")));
    }
    let mut bounds: Vec<f64> = (0..panels).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect();
    bounds.push(1.0);
    let (x, w) = gauss_legendre(points);
    let mut nodes = Vec::with_capacity(panels * points);
    let mut weights = Vec::with_capacity(panels * points);
    for pair in bounds.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(a + half * (xi + 1.0));
            weights.push(half * wi);
        }
    }
    let abscissae = nodes.iter().map(|&t| t / (1.0 - t)).collect();
    let mapped_weights = nodes
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| w / ((1.0 - t) * (1.0 - t)))
        .collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        panels,
        points_per_panel: points,
        abscissae,
        mapped_weights,
    })
}

impl Default for QuadratureRule {
    fn default() -> Self {
        make_rule(DEFAULT_PANELS, DEFAULT_POINTS).expect("default rule")
    }
}

impl QuadratureRule {
    /// Same panels, twice the points per panel.
    pub fn doubled(&self) -> QuadratureRule {
        make_rule(self.panels, 2 * self.points_per_panel).expect("doubling a valid rule")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Mapped abscissae q_i in [0, ∞).
    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    /// Weights including the Jacobian 1/(1−t)².
    pub fn mapped_weights(&self) -> &[f64] {
        &self.mapped_weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut sum = 0.0;
        for (i, (&q, &w)) in self.abscissae.iter().zip(&self.mapped_weights).enumerate() {
            let v = f(q);
            if !v.is_finite() {
                return Err(Error::Integration { t: self.nodes[i], q });
            }
            sum += w * v;
        }
        Ok(sum)
    }

    /// Integral together with |I(doubled) − I(self)|; the finer value is returned.
    pub fn integrate_checked<F: Fn(f64) -> f64>(&self, f: F) -> Result<(f64, f64)> {
        let coarse = self.integrate(&f)?;
        let fine = self.doubled().integrate(&f)?;
        Ok((fine, (fine - coarse).abs()))
    }
}

/// (g(q) − g(q0))/(q − q0) with a Taylor fallback near q0.
pub struct SubtractedQuotient<F: Fn(f64) -> f64> {
    pub base: f64,
    pub threshold: f64,
    g: F,
    g_base: f64,
    slope: OnceCell<(f64, f64, f64)>,
}

impl<F: Fn(f64) -> f64> SubtractedQuotient<F> {
    pub fn new(g: F, base: f64) -> Self {
        Self::with_threshold(g, base, SUBTRACTION_THRESHOLD)
    }

    pub fn with_threshold(g: F, base: f64, threshold: f64) -> Self {
        let g_base = g(base);
        SubtractedQuotient {
            base,
            threshold,
            g,
            g_base,
            slope: OnceCell::new(),
        }
    }

    /// Use a known g(q0) instead of sampling it.
    pub fn with_base_value(g: F, base: f64, g_base: f64) -> Self {
        SubtractedQuotient {
            base,
            threshold: SUBTRACTION_THRESHOLD,
            g,
            g_base,
            slope: OnceCell::new(),
        }
    }

    fn derivatives(&self) -> (f64, f64, f64) {
        *self.slope.get_or_init(|| {
            let h = self.threshold * (1.0 + self.base.abs());
            let g = &self.g;
            let (m2, m1) = (g(self.base - 2.0 * h), g(self.base - h));
            let (p1, p2) = (g(self.base + h), g(self.base + 2.0 * h));
            let d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
            let d2 = (-p2 + 16.0 * p1 - 30.0 * self.g_base + 16.0 * m1 - m2) / (12.0 * h * h);
            let d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
            (d1, d2, d3)
        })
    }

    pub fn eval(&self, q: f64) -> f64 {
        let dq = q - self.base;
        if dq.abs() > self.threshold * (1.0 + self.base.abs()) {
            ((self.g)(q) - self.g_base) / dq
        } else {
            // the cubic term keeps the switch error at O(threshold³)
            let (d1, d2, d3) = self.derivatives();
            d1 + dq * (0.5 * d2 + dq * d3 / 6.0)
        }
    }
}

pub fn eval_subtracted<F: Fn(f64) -> f64>(g: F, at: f64, q: f64) -> f64 {
    SubtractedQuotient::new(g, at).eval(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn legendre_weights_sum_to_two() {
        for n in [2, 5, 24, 48] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_rule(0, 4).is_err());
        assert!(make_rule(3, 1).is_err());
    }

    #[test]
    fn basic_integrals() {
        let rule = make_rule(8, 16).unwrap();
        let v = rule.integrate(|q| 1.0 / ((1.0 + q) * (2.0 + q))).unwrap();
        assert!((v - LN_2).abs() < 1e-12);
        let rule = QuadratureRule::default();
        assert!((rule.integrate(|q| (1.0 + q).powi(-3)).unwrap() - 0.5).abs() < 1e-13);
        assert_eq!(rule.integrate(|_| 0.0).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_integrand_names_node() {
        let rule = make_rule(2, 4).unwrap();
        match rule.integrate(|q| if q > 1.0 { f64::NAN } else { 0.0 }) {
            Err(Error::Integration { q, .. }) => assert!(q > 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subtracted_quotient() {
        let g = |q: f64| 1.0 / (1.0 + q);
        assert!((eval_subtracted(g, 1.0, 3.0) + 0.125).abs() < 1e-15);
        assert!((eval_subtracted(g, 1.0, 1.0) + 0.25).abs() < 1e-9);
        let s = SubtractedQuotient::new(g, 1.0);
        let edge = 1e-4 * 2.0;
        let jump = s.eval(1.0 + edge * (1.0 + 1e-9)) - s.eval(1.0 + edge * (1.0 - 1e-9));
        assert!(jump.abs() < 1e-8);
    }
}
