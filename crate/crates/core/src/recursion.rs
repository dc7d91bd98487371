//! Order-by-order solution of the closed two-point equation on a momentum grid.
//!
//! Values are stored scaled, K_n = G_n · (1+p1+p2), on a tensor grid in
//! u = p/(1+p). Off-grid values are obtained by evaluating the recursion
//! itself with interpolated lower orders inside the integrals.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{to_p, to_x, MomentumGrid};
use crate::quad::{make_rule, QuadratureRule, SubtractedQuotient};

pub const DEFAULT_GRID_SIZE: usize = 48;
pub const COLOUR_FACTOR: f64 = 3.0;
const DIVERGENCE_LIMIT: f64 = 1e12;
/// Relative floor added to doubling-based error estimates.
pub const ROUNDING_FLOOR: f64 = 1e-12;
/// Accepted extrapolation disagreement on grid diagonals, relative to the
/// largest off-diagonal value of the same order.
const DIAGONAL_FLOOR: f64 = 1e-9;
/// Largest relative offset sampled when extrapolating to the diagonal.
pub const CROSS_SPAN: f64 = 0.1;
/// Below this relative distance from the diagonal `Solution::value` uses the
/// interpolant.
const NEAR_DIAGONAL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid_size: usize,
    pub panels: usize,
    pub points: usize,
    pub colour_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_size: DEFAULT_GRID_SIZE,
            panels: crate::quad::DEFAULT_PANELS,
            points: crate::quad::DEFAULT_POINTS,
            colour_factor: COLOUR_FACTOR,
        }
    }
}

impl SolverConfig {
    /// Twice the grid size and twice the points per panel.
    pub fn doubled(&self) -> Self {
        SolverConfig {
            grid_size: 2 * self.grid_size,
            points: 2 * self.points,
            ..*self
        }
    }
}

/// One coefficient function G_2n sampled on the grid.
#[derive(Debug, Clone)]
pub struct OrderCoefficient {
    pub order: usize,
    pub grid: Arc<MomentumGrid>,
    /// (m+1)² scaled values, row-major, last row/column at p = ∞.
    scaled: Vec<f64>,
    /// Largest |G(a,b) − G(b,a)| before symmetrisation.
    pub asymmetry: f64,
    pub error_estimate: f64,
}

impl OrderCoefficient {
    /// Sample a known function on the grid (the boundary row and column are 0).
    pub fn from_function<F: Fn(f64, f64) -> f64>(order: usize, grid: Arc<MomentumGrid>, f: F) -> Self {
        let p = grid.momenta();
        let m = grid.size();
        let w = m + 1;
        let mut scaled = vec![0.0; w * w];
        for i in 0..m {
            for j in 0..m {
                scaled[i * w + j] = f(p[i], p[j]) * (1.0 + p[i] + p[j]);
            }
        }
        OrderCoefficient {
            order,
            grid,
            scaled,
            asymmetry: 0.0,
            error_estimate: 0.0,
        }
    }

    fn width(&self) -> usize {
        self.grid.size() + 1
    }

    pub fn scaled(&self) -> &[f64] {
        &self.scaled
    }

    /// G values on the m×m finite nodes, row-major.
    pub fn values(&self) -> Vec<f64> {
        let p = self.grid.momenta();
        let m = self.grid.size();
        let w = self.width();
        let mut out = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                out.push(self.scaled[i * w + j] / (1.0 + p[i] + p[j]));
            }
        }
        out
    }

    fn scaled_row(&self, basis: &[f64]) -> Vec<f64> {
        let w = self.width();
        if let Some(i) = basis.iter().position(|&b| b == 1.0) {
            if basis.iter().filter(|&&b| b != 0.0).count() == 1 {
                return self.scaled[i * w..(i + 1) * w].to_vec();
            }
        }
        let mut row = vec![0.0; w];
        for (i, &b) in basis.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            for (r, k) in row.iter_mut().zip(&self.scaled[i * w..(i + 1) * w]) {
                *r += b * k;
            }
        }
        row
    }

    /// Tensor-product interpolant of G at an arbitrary pair.
    pub fn interpolate(&self, p1: f64, p2: f64) -> f64 {
        let row = self.scaled_row(&self.grid.basis_at(p1));
        self.grid.interpolate(&row, to_x(p2)) / (1.0 + p1 + p2)
    }
}

/// G_i(p, q) for every order i < n at every quadrature abscissa.
struct Row {
    p: f64,
    basis: Vec<f64>,
    scaled: Vec<Vec<f64>>,
    values: Vec<Vec<f64>>,
}

pub struct Solver {
    pub config: SolverConfig,
    grid: Arc<MomentumGrid>,
    rule: QuadratureRule,
    /// Lagrange basis at each quadrature node; the node variable t equals u.
    lagrange: Vec<Vec<f64>>,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Result<Self> {
        if !config.colour_factor.is_finite() {
            return Err(Error::Parameter("colour factor must be finite".into()));
        }
        let grid = Arc::new(MomentumGrid::new(config.grid_size)?);
        let rule = make_rule(config.panels, config.points)?;
        let lagrange = rule.nodes.iter().map(|&t| grid.basis_at(to_p(t))).collect();
        Ok(Solver {
            config,
            grid,
            rule,
            lagrange,
        })
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Order 0: K ≡ 1, i.e. G0 = 1/(1+p1+p2) exactly.
    pub fn seed(&self) -> OrderCoefficient {
        let w = self.grid.size() + 1;
        OrderCoefficient {
            order: 0,
            grid: self.grid.clone(),
            scaled: vec![1.0; w * w],
            asymmetry: 0.0,
            error_estimate: 0.0,
        }
    }

    fn row(&self, history: &[OrderCoefficient], p: f64) -> Row {
        let basis = self.grid.basis_at(p);
        let q = self.rule.abscissae();
        let mut scaled = Vec::with_capacity(history.len());
        let mut values = Vec::with_capacity(history.len());
        for coef in history {
            if coef.order == 0 {
                // exact, keeps rounding out of the difference quotients
                scaled.push(vec![1.0; basis.len()]);
                values.push(q.iter().map(|&qs| 1.0 / (1.0 + p + qs)).collect());
                continue;
            }
            let k = coef.scaled_row(&basis);
            let v = self
                .lagrange
                .iter()
                .zip(q)
                .map(|(l, &qs)| l.iter().zip(&k).map(|(a, b)| a * b).sum::<f64>() / (1.0 + p + qs))
                .collect();
            scaled.push(k);
            values.push(v);
        }
        Row {
            p,
            basis,
            scaled,
            values,
        }
    }

    /// G_i(row.p, p) from the row interpolant.
    fn row_value(&self, row: &Row, order: usize, p: f64, basis: &[f64]) -> f64 {
        if order == 0 {
            return 1.0 / (1.0 + row.p + p);
        }
        let k: f64 = basis.iter().zip(&row.scaled[order]).map(|(a, b)| a * b).sum();
        k / (1.0 + row.p + p)
    }

    fn row_at(&self, row: &Row, order: usize, q: f64) -> f64 {
        self.row_value(row, order, q, &self.grid.basis_at(q))
    }

    /// Right-hand side of the recursion for order n at (a.p, b.p), a.p ≠ b.p.
    fn raw(&self, a: &Row, b: &Row, n: usize) -> f64 {
        let (pa, pb) = (a.p, b.p);
        let q = self.rule.abscissae();
        let w = self.rule.mapped_weights();
        let pair: Vec<f64> = (0..n).map(|i| self.row_value(a, i, pb, &b.basis)).collect();

        let mut conv = 0.0;
        for i in 0..n {
            let (va, vb) = (&a.values[i], &b.values[i]);
            let integral: f64 = (0..q.len()).map(|s| w[s] * (vb[s] - va[s])).sum();
            conv += pair[n - 1 - i] * integral;
        }

        let last = n - 1;
        let base_a = pair[last];
        let base_b = self.row_value(b, last, pa, &a.basis);
        let quot_a = SubtractedQuotient::with_base_value(|x| self.row_at(a, last, x), pb, base_a);
        let quot_b = SubtractedQuotient::with_base_value(|x| self.row_at(b, last, x), pa, base_b);
        let thresh_a = quot_a.threshold * (1.0 + pb.abs());
        let thresh_b = quot_b.threshold * (1.0 + pa.abs());
        let (va, vb) = (&a.values[last], &b.values[last]);
        let mut sub = 0.0;
        for s in 0..q.len() {
            let qs = q[s];
            let ta = if (qs - pb).abs() > thresh_a {
                (va[s] - base_a) / (qs - pb)
            } else {
                quot_a.eval(qs)
            };
            let tb = if (qs - pa).abs() > thresh_b {
                (vb[s] - base_b) / (qs - pa)
            } else {
                quot_b.eval(qs)
            };
            sub += w[s] * (tb - ta);
        }
        (self.config.colour_factor * conv + sub) / ((1.0 + pa + pb) * (pa - pb))
    }

    /// Limit of the recursion right-hand side as p2 → p1 = p.
    fn diagonal_limit(&self, history: &[OrderCoefficient], p: f64, rel: f64, floor: f64) -> Result<f64> {
        let n = history.len();
        let h = rel * (1.0 + p);
        let eval = |x: f64, y: f64| {
            let (a, b) = (self.row(history, x), self.row(history, y));
            0.5 * (self.raw(&a, &b, n) + self.raw(&b, &a, n))
        };
        cross_diagonal_limit_with_floor(eval, p, h, self.lower(), floor)
    }

    /// Smallest momentum covered by the grid.
    pub fn lower(&self) -> f64 {
        self.grid.lower()
    }

    /// One application of the recursion: order history.len() from orders 0..n−1.
    pub fn step(&self, history: &[OrderCoefficient]) -> Result<OrderCoefficient> {
        let n = history.len();
        if n == 0 {
            return Err(Error::Parameter("history must contain at least the seed".into()));
        }
        for (i, c) in history.iter().enumerate() {
            if c.order != i || (!Arc::ptr_eq(&c.grid, &self.grid) && *c.grid != *self.grid) {
                return Err(Error::Parameter(format!("history entry {i} is inconsistent")));
            }
        }
        let m = self.grid.size();
        let w = m + 1;
        let p = self.grid.momenta();
        let rows: Vec<Row> = p.par_iter().map(|&pa| self.row(history, pa)).collect();

        let mut upper: Vec<Vec<(f64, f64)>> = (0..m)
            .into_par_iter()
            .map(|a| {
                let mut out = Vec::with_capacity(m - a);
                out.push((f64::NAN, 0.0));
                for b in a + 1..m {
                    let ab = self.raw(&rows[a], &rows[b], n);
                    let ba = self.raw(&rows[b], &rows[a], n);
                    out.push((0.5 * (ab + ba), (ab - ba).abs()));
                }
                out
            })
            .collect();
        // size of this order away from the diagonal, in scaled units
        let magnitude = upper
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().skip(1).map(move |(o, v)| (a, a + o, v.0)))
            .fold(0.0f64, |acc, (a, b, v)| acc.max((v * (1.0 + p[a] + p[b])).abs()));
        let diagonal: Vec<Result<f64>> = (0..m)
            .into_par_iter()
            .map(|a| {
                let floor = DIAGONAL_FLOOR * magnitude / (1.0 + 2.0 * p[a]);
                self.diagonal_limit(history, p[a], CROSS_SPAN, floor)
            })
            .collect();
        for (row, v) in upper.iter_mut().zip(diagonal) {
            row[0].0 = v?;
        }

        let mut scaled = vec![0.0; w * w];
        let mut asymmetry: f64 = 0.0;
        for (a, row) in upper.into_iter().enumerate() {
            for (offset, (v, asym)) in row.into_iter().enumerate() {
                let b = a + offset;
                if !v.is_finite() || v.abs() > DIVERGENCE_LIMIT {
                    return Err(Error::Divergence {
                        order: n,
                        p1: p[a],
                        p2: p[b],
                        value: v,
                    });
                }
                asymmetry = asymmetry.max(asym);
                let k = v * (1.0 + p[a] + p[b]);
                scaled[a * w + b] = k;
                scaled[b * w + a] = k;
            }
        }
        Ok(OrderCoefficient {
            order: n,
            grid: self.grid.clone(),
            scaled,
            asymmetry,
            error_estimate: asymmetry,
        })
    }

    /// Orders 0..=max_order.
    pub fn solve(&self, max_order: usize) -> Result<Solution> {
        match self.solve_partial(max_order) {
            (solution, None) => Ok(solution),
            (_, Some(e)) => Err(e),
        }
    }

    /// Like `solve`, but keeps the orders computed before a failure.
    pub fn solve_partial(&self, max_order: usize) -> (Solution, Option<Error>) {
        let mut orders = vec![self.seed()];
        let mut failure = None;
        for _ in 0..max_order {
            match self.step(&orders) {
                Ok(next) => orders.push(next),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        let solution = Solution {
            solver: self.clone_shallow(),
            orders,
        };
        (solution, failure)
    }

    fn clone_shallow(&self) -> Solver {
        Solver {
            config: self.config,
            grid: self.grid.clone(),
            rule: self.rule.clone(),
            lagrange: self.lagrange.clone(),
        }
    }
}

// samples per cross-diagonal extrapolation, minus one
const CROSS_DEGREE: usize = 6;
const ONE_SIDED_DEGREE: usize = 10;

/// Value at 0 of the polynomial through (x_k, y_k).
fn neville_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut t = y.to_vec();
    let n = x.len();
    for level in 1..n {
        for i in 0..n - level {
            let (a, b) = (x[i], x[i + level]);
            t[i] = (b * t[i] - a * t[i + 1]) / (b - a);
        }
    }
    t[0]
}

/// Chebyshev–Lobatto points on [a, b].
fn lobatto(a: f64, b: f64, degree: usize) -> Vec<f64> {
    (0..=degree)
        .map(|k| {
            let c = (std::f64::consts::PI * k as f64 / degree as f64).cos();
            a + 0.5 * (b - a) * (1.0 - c)
        })
        .collect()
}

/// lim_{e→0} f(p+e, p−e) by polynomial extrapolation in e² from samples
/// with e between span/8 and span. When p − span would leave the grid
/// (below `lower`), f(p+e, p) is extrapolated in e from e ∈ [span/20, span]
/// instead.
pub fn cross_diagonal_limit<F: Fn(f64, f64) -> f64>(f: F, p: f64, span: f64, lower: f64) -> Result<f64> {
    cross_diagonal_limit_with_floor(f, p, span, lower, 0.0)
}

/// As `cross_diagonal_limit`, accepting disagreements up to `floor` as well.
pub fn cross_diagonal_limit_with_floor<F: Fn(f64, f64) -> f64>(
    f: F,
    p: f64,
    span: f64,
    lower: f64,
    floor: f64,
) -> Result<f64> {
    let centred = p - span >= lower;
    let (nodes, samples) = if centred {
        let tau = lobatto(span * span / 64.0, span * span, CROSS_DEGREE);
        let samples: Vec<f64> = tau
            .iter()
            .map(|&t| {
                let e = t.sqrt();
                f(p + e, p - e)
            })
            .collect();
        (tau, samples)
    } else {
        let offsets = lobatto(span / 20.0, span, ONE_SIDED_DEGREE);
        let samples = offsets.iter().map(|&e| f(p + e, p)).collect();
        (offsets, samples)
    };
    let full = neville_at_zero(&nodes, &samples);
    let n = nodes.len();
    let reduced = neville_at_zero(&nodes[..n - 1], &samples[..n - 1]);
    let scale = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // absolute floor on the natural 1/(1+2p) scale of every order; the
    // one-sided fit (only below p = 0) amplifies rounding more
    let absolute = if centred { 1e-12 } else { 1e-10 };
    let floor = (1e-7 * scale).max(absolute / (1.0 + 2.0 * p).abs()).max(floor);
    if !full.is_finite() || (full - reduced).abs() > floor {
        return Err(Error::Extrapolation {
            p,
            detail: format!("extrapolants {full:e} and {reduced:e} disagree"),
        });
    }
    Ok(full)
}

/// The solved orders together with the machinery to evaluate them anywhere.
pub struct Solution {
    solver: Solver,
    pub orders: Vec<OrderCoefficient>,
}

impl Solution {
    pub fn config(&self) -> SolverConfig {
        self.solver.config
    }

    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n >= self.orders.len() {
            return Err(Error::Parameter(format!(
                "order {n} not computed (max {})",
                self.max_order()
            )));
        }
        Ok(())
    }

    /// G_2n(p1, p2) from the recursion with interpolated lower orders.
    /// Within 1e-3·(1+p1+p2) of the diagonal the grid interpolant is used.
    pub fn value(&self, n: usize, p1: f64, p2: f64) -> Result<f64> {
        self.check_order(n)?;
        if n == 0 {
            return Ok(1.0 / (1.0 + p1 + p2));
        }
        if (p1 - p2).abs() < NEAR_DIAGONAL * (1.0 + p1 + p2) {
            return Ok(self.orders[n].interpolate(p1, p2));
        }
        let history = &self.orders[..n];
        let a = self.solver.row(history, p1);
        let b = self.solver.row(history, p2);
        let ab = self.solver.raw(&a, &b, n);
        let ba = self.solver.raw(&b, &a, n);
        Ok(0.5 * (ab + ba))
    }

    /// The recursion right-hand side at (p1, p2), p1 ≠ p2, symmetrised.
    pub fn rhs(&self, n: usize, p1: f64, p2: f64) -> Result<f64> {
        self.check_order(n)?;
        if n == 0 || p1 == p2 {
            return Err(Error::Parameter("rhs needs n >= 1 and p1 != p2".into()));
        }
        let history = &self.orders[..n];
        let a = self.solver.row(history, p1);
        let b = self.solver.row(history, p2);
        Ok(0.5 * (self.solver.raw(&a, &b, n) + self.solver.raw(&b, &a, n)))
    }

    /// lim_{p2→p} G_2n(p, p2), extrapolated along the cross-diagonal.
    pub fn diagonal(&self, n: usize, p: f64) -> Result<f64> {
        self.check_order(n)?;
        if n == 0 {
            return Ok(1.0 / (1.0 + 2.0 * p));
        }
        let history = &self.orders[..n];
        let eval = |x: f64, y: f64| {
            let a = self.solver.row(history, x);
            let b = self.solver.row(history, y);
            0.5 * (self.solver.raw(&a, &b, n) + self.solver.raw(&b, &a, n))
        };
        cross_diagonal_limit(eval, p, CROSS_SPAN * (1.0 + p), self.solver.lower())
    }

    /// Σ_{k≤n} λ^{2k} G_2k(p1, p2) from the grid interpolants.
    pub fn truncated(&self, n: usize, lambda: f64, p1: f64, p2: f64) -> f64 {
        let l2 = lambda * lambda;
        let mut sum = 0.0;
        let mut power = 1.0;
        for coef in self.orders.iter().take(n + 1) {
            sum += power * coef.interpolate(p1, p2);
            power *= l2;
        }
        sum
    }
}

/// |LHS − RHS| of the closed equation
/// G = G0 + λ²/((1+p1+p2)(p1−p2)) · [3 G ∫(G(q,p2) − G(p1,q))
///        − ∫ (G(p1,q) − G(p1,p2))/(q−p2) + ∫ (G(p2,q) − G(p1,p2))/(q−p1)]
/// for an arbitrary two-point function `g`.
pub fn eval_closed_equation_residual<G: Fn(f64, f64) -> f64>(
    g: G,
    lambda: f64,
    p1: f64,
    p2: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    if p1 == p2 {
        return Err(Error::Parameter("residual needs p1 != p2".into()));
    }
    let g12 = g(p1, p2);
    let g21 = g(p2, p1);
    let conv = rule.integrate(|q| g(q, p2) - g(p1, q))?;
    let left = SubtractedQuotient::with_base_value(|q| g(p1, q), p2, g12);
    let right = SubtractedQuotient::with_base_value(|q| g(p2, q), p1, g21);
    let sub = rule.integrate(|q| right.eval(q) - left.eval(q))?;
    let s = 1.0 + p1 + p2;
    let rhs = 1.0 / s + lambda * lambda / (s * (p1 - p2)) * (COLOUR_FACTOR * g12 * conv + sub);
    Ok((g12 - rhs).abs())
}

/// Zero-momentum coupling series c_0..c_N of G(0,0) = Σ c_n λ^{2n}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub coefficients: Vec<f64>,
    pub errors: Vec<f64>,
    pub grid_size: usize,
    pub panels: usize,
    pub points: usize,
}

/// Series from the doubled configuration; errors are the change under doubling.
pub fn g00_series(config: SolverConfig, max_order: usize) -> Result<SeriesTable> {
    if max_order > 4 {
        return Err(Error::Parameter(format!("max order must be at most 4, got {max_order}")));
    }
    if max_order == 0 {
        return Ok(SeriesTable {
            coefficients: vec![1.0],
            errors: vec![0.0],
            grid_size: config.grid_size,
            panels: config.panels,
            points: config.points,
        });
    }
    let coarse = Solver::new(config)?.solve(max_order)?;
    let fine = Solver::new(config.doubled())?.solve(max_order)?;
    series_from_solutions(&coarse, &fine, max_order)
}

/// Series table from a solution and its doubled counterpart. The reported
/// values come from `fine`, the configuration recorded is that of `coarse`.
pub fn series_from_solutions(coarse: &Solution, fine: &Solution, max_order: usize) -> Result<SeriesTable> {
    let mut coefficients = vec![1.0];
    let mut errors = vec![0.0];
    for n in 1..=max_order {
        let c_fine = fine.diagonal(n, 0.0)?;
        let c_coarse = coarse.diagonal(n, 0.0)?;
        coefficients.push(c_fine);
        // doubling differences at rounding level are not an error estimate
        errors.push((c_fine - c_coarse).abs() + ROUNDING_FLOOR * c_fine.abs());
    }
    let config = coarse.config();
    Ok(SeriesTable {
        coefficients,
        errors,
        grid_size: config.grid_size,
        panels: config.panels,
        points: config.points,
    })
}
