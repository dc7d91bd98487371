//! Chebyshev–Lobatto grid with barycentric interpolation.
//!
//! Nodes live in x = 1 − (1+p)^(−1/2). Near p = ∞ the coefficient functions
//! behave like (1−x)⁴ log(1−x) in this coordinate, which interpolates far
//! better than the (1−u)² log(1−u) seen in u = p/(1+p). The last Lobatto
//! point x = 1 (p = ∞) is a boundary node carrying a known limit.
//!
//! The interval starts slightly below p = 0 so that p = 0 is an interior
//! node (for m divisible by 4) instead of a clustered endpoint.

use crate::error::{Error, Result};

/// Lower end of the grid in x, −tan²(π/8).
pub const LOWER_X: f64 = -0.171_572_875_253_809_9;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    m: usize,
    x: Vec<f64>,
    weights: Vec<f64>,
}

/// u = p/(1+p), the quadrature variable.
pub fn to_u(p: f64) -> f64 {
    p / (1.0 + p)
}

pub fn to_p(u: f64) -> f64 {
    u / (1.0 - u)
}

/// Grid coordinate of a momentum.
pub fn to_x(p: f64) -> f64 {
    // 1 − 1/√(1+p) without cancellation at small p
    let r = (1.0 + p).sqrt();
    p / (r * (1.0 + r))
}

pub fn from_x(x: f64) -> f64 {
    let r = 1.0 - x;
    x * (2.0 - x) / (r * r)
}

impl MomentumGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(Error::Parameter(format!("grid size must be >= 4, got {m}")));
        }
        let mf = m as f64;
        let width = 1.0 - LOWER_X;
        let x: Vec<f64> = (0..=m)
            .map(|k| {
                if 4 * k == m {
                    return 0.0;
                }
                if k == m {
                    return 1.0;
                }
                let s = (std::f64::consts::FRAC_PI_2 * k as f64 / mf).sin();
                LOWER_X + width * s * s
            })
            .collect();
        let weights = (0..=m)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                if k == 0 || k == m {
                    0.5 * sign
                } else {
                    sign
                }
            })
            .collect();
        Ok(MomentumGrid { m, x, weights })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Finite nodes in x, strictly increasing, all < 1; the first is negative.
    pub fn nodes(&self) -> &[f64] {
        &self.x[..self.m]
    }

    /// All m + 1 interpolation nodes including x = 1.
    pub fn all_nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn momenta(&self) -> Vec<f64> {
        self.nodes().iter().map(|&x| from_x(x)).collect()
    }

    /// Smallest momentum on the grid.
    pub fn lower(&self) -> f64 {
        from_x(self.x[0])
    }

    /// Lagrange basis values at coordinate `x`, one per node (m + 1 entries).
    pub fn basis(&self, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.m + 1];
        if let Some(k) = self.x.iter().position(|&v| v == x) {
            out[k] = 1.0;
            return out;
        }
        let mut total = 0.0;
        for (k, (&v, &w)) in self.x.iter().zip(&self.weights).enumerate() {
            let c = w / (x - v);
            out[k] = c;
            total += c;
        }
        for v in out.iter_mut() {
            *v /= total;
        }
        out
    }

    /// Lagrange basis values at momentum `p`.
    pub fn basis_at(&self, p: f64) -> Vec<f64> {
        self.basis(to_x(p))
    }

    /// Interpolate values given at all m + 1 nodes.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        self.basis(x).iter().zip(values).map(|(b, v)| b * v).sum()
    }
}
