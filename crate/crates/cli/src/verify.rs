//! The verification suite behind `colour3 verify` and the acceptance tests.

use std::f64::consts::PI;

use colour3_core::closedforms::{c6_closed, g2, g4, g6, gp6_diag};
use colour3_core::polylog::{
    dilog_identity_residual, li2, li3, trilog_inversion_residual, trilog_two_term_residual, zeta3,
};
use colour3_core::quad::make_rule;
use colour3_core::recursion::{
    eval_closed_equation_residual, series_from_solutions, Solution, Solver, ROUNDING_FLOOR,
};
use colour3_core::ribbon::{self, amplitude, enumerate_2pt, resum};
use colour3_core::{QuadratureRule, Result as CoreResult};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::config::RunConfig;

const SEED: u64 = 20_260_401;
const DIAGONAL_POINTS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Set when the reference formula itself is known to disagree with the
    /// numerics; the item still counts as a failure.
    pub known_discrepancy: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub items: Vec<Item>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn line(&self) -> String {
        let failed: Vec<&str> = self.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} [{}] {}", self.id, self.title);
        if !failed.is_empty() {
            line.push_str(&format!(" (failing: {})", failed.join(", ")));
        }
        line
    }
}

fn item(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Item {
    Item { name: name.into(), passed, detail: detail.into(), known_discrepancy: None }
}

fn within(name: &str, value: f64, target: f64, tol: f64) -> Item {
    let d = (value - target).abs();
    item(name, d <= tol, format!("{value:.12e} vs {target:.12e}, |diff| {d:.3e} (tol {tol:e})"))
}

fn failed(name: &str, e: impl std::fmt::Display) -> Item {
    item(name, false, format!("error: {e}"))
}

fn max_error<F: FnMut(f64, f64) -> CoreResult<f64>>(pairs: &[(f64, f64)], mut f: F) -> CoreResult<(f64, (f64, f64))> {
    let mut worst = (0.0, (0.0, 0.0));
    for &(a, b) in pairs {
        let e = f(a, b)?;
        // NaN counts as worst
        if e.is_nan() || e > worst.0 {
            worst = (e, (a, b));
        }
    }
    Ok(worst)
}

fn random_pairs(rng: &mut StdRng, n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|_| (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0))).collect()
}

struct Solutions {
    base: Solution,
    doubled: Solution,
    quadrupled: Solution,
    /// Failures that stopped a solve early; lower orders remain usable.
    failures: Vec<String>,
}

fn solve(config: &RunConfig) -> CoreResult<Solutions> {
    let c = config.solver();
    let mut failures = Vec::new();
    let mut run = |c, label: &str| -> CoreResult<Solution> {
        let (s, e) = Solver::new(c)?.solve_partial(4);
        if let Some(e) = e {
            failures.push(format!("{label} grid stopped after order {}: {e}", s.max_order()));
        }
        Ok(s)
    };
    let base = run(c, "base")?;
    let doubled = run(c.doubled(), "doubled")?;
    let quadrupled = run(c.doubled().doubled(), "quadrupled")?;
    Ok(Solutions { base, doubled, quadrupled, failures })
}

/// Run every criterion. Engine failures turn into failed items.
pub fn run(config: &RunConfig) -> Vec<Criterion> {
    let solutions = solve(config);
    let rule = make_rule(config.panels, config.points);
    let mut out = Vec::new();
    let with = |id, title, f: &dyn Fn(&Solutions) -> Vec<Item>| Criterion {
        id,
        title,
        items: match &solutions {
            Ok(s) if id == 1 => s.failures.iter().map(|e| failed("solve", e)).chain(f(s)).collect(),
            Ok(s) => f(s),
            Err(e) => vec![failed("solve", e)],
        },
    };
    out.push(with(1, "zero-momentum series", &series));
    out.push(with(2, "recursion against closed forms", &oracle));
    out.push(Criterion {
        id: 3,
        title: "graph resummation",
        items: match &rule {
            Ok(r) => graphs(r),
            Err(e) => vec![failed("rule", e)],
        },
    });
    out.push(Criterion {
        id: 4,
        title: "worked graph examples",
        items: match &rule {
            Ok(r) => examples(r),
            Err(e) => vec![failed("rule", e)],
        },
    });
    out.push(with(5, "third-order diagonal", &diagonal));
    out.push(Criterion { id: 6, title: "polylogarithm identities", items: polylog() });
    out.push(with(7, "residual scaling", &|s| residual(s, config)));
    out.push(with(8, "stability under doubling", &stability));
    out
}

fn series(s: &Solutions) -> Vec<Item> {
    let table = match series_from_solutions(&s.base, &s.doubled, 4) {
        Ok(t) => t,
        Err(e) => return vec![failed("series", e)],
    };
    let c = &table.coefficients;
    let pi2 = PI * PI;
    vec![
        item("c0", c[0] == 1.0, format!("{}", c[0])),
        within("c1", c[1], 2.0, 1e-6),
        within("c2", c[2], 2.0 * (pi2 - 6.0), 1e-4),
        within("c3", c[3], c6_closed(), 5e-3),
        within("c4", c[4], 194.612, 1.0),
    ]
}

fn oracle(s: &Solutions) -> Vec<Item> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let pairs = random_pairs(&mut rng, 50);
    let closed: [fn(f64, f64) -> f64; 3] = [g2, g4, g6];
    let tol = [1e-8, 1e-6, 5e-5];
    (1..=3)
        .map(|n| {
            let name = format!("order {n}");
            let mut inside = 0;
            let worst = max_error(&pairs, |a, b| {
                let e = (s.base.value(n, a, b)? - closed[n - 1](a, b)).abs();
                inside += usize::from(e <= tol[n - 1]);
                Ok(e)
            });
            match worst {
                Ok((e, (a, b))) => {
                    let mut it = item(
                        &name,
                        e <= tol[n - 1],
                        format!(
                            "max |diff| {e:.3e} at ({a:.4}, {b:.4}), {inside}/{} pairs within tol {:e}",
                            pairs.len(),
                            tol[n - 1]
                        ),
                    );
                    if n == 3 {
                        it.known_discrepancy =
                            Some("the closed third-order form has a 1/(p1-p2)^2 pole the recursion does not have");
                    }
                    it
                }
                Err(e) => failed(&name, e),
            }
        })
        .collect()
}

fn graphs(rule: &QuadratureRule) -> Vec<Item> {
    let mut items = Vec::new();
    match enumerate_2pt(1) {
        Ok(c) => {
            let s: Vec<usize> = c.iter().map(|c| c.multiplicity).collect();
            items.push(item("order 1 classes", s == [2], format!("multiplicities {s:?}")));
        }
        Err(e) => items.push(failed("order 1 classes", e)),
    }
    let classes = match enumerate_2pt(2) {
        Ok(c) => c,
        Err(e) => {
            items.push(failed("order 2 classes", e));
            return items;
        }
    };
    let s: Vec<usize> = classes.iter().map(|c| c.multiplicity).collect();
    items.push(item("order 2 classes", s == [2, 4, 4, 4], format!("multiplicities {s:?}")));
    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let pairs = random_pairs(&mut rng, 20);
    items.push(match max_error(&pairs, |a, b| Ok((resum(&classes, a, b, rule)? - g4(a, b)).abs())) {
        Ok((e, (a, b))) => item(
            "order 2 resummation",
            e <= 1e-7,
            format!("max |diff| {e:.3e} at ({a:.4}, {b:.4}) (tol 1e-7)"),
        ),
        Err(e) => failed("order 2 resummation", e),
    });
    items
}

fn examples(rule: &QuadratureRule) -> Vec<Item> {
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    let g1 = ribbon::worked_example_1();
    let g2_ = ribbon::worked_example_2();
    let g3 = ribbon::worked_example_3();
    let mut worst = [0.0f64; 3];
    for _ in 0..10 {
        let (a, b) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
        let triple = loop {
            let t: [f64; 3] = [rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0)];
            if (t[0] - t[1]).abs().min((t[1] - t[2]).abs()).min((t[0] - t[2]).abs()) > 0.05 {
                break t;
            }
        };
        let results = [
            amplitude(&g1, &[a, b], rule).map(|v| v - ribbon::worked_example_1_closed(a, b)),
            amplitude(&g2_, &[a, b], rule).map(|v| v - ribbon::worked_example_2_closed(a, b)),
            amplitude(&g3, &triple, rule)
                .map(|v| v - ribbon::worked_example_3_closed(triple[0], triple[1], triple[2])),
        ];
        for (k, r) in results.into_iter().enumerate() {
            match r {
                Ok(d) => worst[k] = worst[k].max(d.abs()),
                Err(e) => return vec![failed(&format!("example {}", k + 1), e)],
            }
        }
    }
    (0..3)
        .map(|k| {
            item(
                format!("example {}", k + 1),
                worst[k] <= 1e-9,
                format!("max |diff| {:.3e} (tol 1e-9)", worst[k]),
            )
        })
        .collect()
}

fn diagonal(s: &Solutions) -> Vec<Item> {
    let mut items: Vec<Item> = DIAGONAL_POINTS
        .iter()
        .map(|&p| {
            let name = format!("p = {p}");
            match s.base.diagonal(3, p) {
                Ok(v) => {
                    let mut it = within(&name, v, gp6_diag(p), 1e-5);
                    it.known_discrepancy = Some("the closed diagonal formula disagrees with the recursion");
                    it
                }
                Err(e) => failed(&name, e),
            }
        })
        .collect();
    let limit = s.base.diagonal(3, 0.0).and_then(|a| Ok((a, s.base.diagonal(3, 1e-8)?)));
    items.push(match limit {
        Ok((a, b)) => item(
            "finite p -> 0 limit",
            a.is_finite() && (a - b).abs() < 1e-5,
            format!("G6(0,0) = {a:.12e}, G6(1e-8,1e-8) = {b:.12e}"),
        ),
        Err(e) => failed("finite p -> 0 limit", e),
    });
    items
}

fn polylog() -> Vec<Item> {
    let grid: Vec<f64> = (0..=1000).map(|i| 50.0 * i as f64 / 1000.0).collect();
    let worst = |f: fn(f64) -> CoreResult<f64>, skip_zero: bool| -> CoreResult<f64> {
        let mut w = 0.0f64;
        for &x in grid.iter().filter(|&&x| !(skip_zero && x == 0.0)) {
            w = w.max(f(x)?.abs());
        }
        Ok(w)
    };
    let mut items = Vec::new();
    for (name, f, skip) in [
        ("dilogarithm identity", dilog_identity_residual as fn(f64) -> CoreResult<f64>, false),
        ("trilogarithm inversion", trilog_inversion_residual, true),
        ("trilogarithm two-term relation", trilog_two_term_residual, true),
    ] {
        items.push(match worst(f, skip) {
            Ok(w) => {
                let mut it = item(name, w <= 1e-11, format!("max residual {w:.3e} on [0, 50] (tol 1e-11)"));
                if name.ends_with("two-term relation") {
                    it.known_discrepancy = Some("the relation omits Li3(1/(1+x)); the residual equals -Li3(1/(1+x))");
                }
                it
            }
            Err(e) => failed(name, e),
        });
    }
    items.push(within("zeta(3)", zeta3(), 1.202_056_903_159_594_3, 1e-12));
    items.push(match li2(-1.0) {
        Ok(v) => within("Li2(-1)", v, -PI * PI / 12.0, 1e-12),
        Err(e) => failed("Li2(-1)", e),
    });
    items.push(match li3(-1.0) {
        Ok(v) => within("Li3(-1)", v, -0.75 * zeta3(), 1e-12),
        Err(e) => failed("Li3(-1)", e),
    });
    items
}

fn residual(s: &Solutions, config: &RunConfig) -> Vec<Item> {
    let rule = match make_rule(config.panels, config.points) {
        Ok(r) => r,
        Err(e) => return vec![failed("rule", e)],
    };
    let (p1, p2) = (1.0, 0.5);
    (1..=2)
        .map(|n| {
            let r = |lambda: f64| {
                eval_closed_equation_residual(|a, b| s.base.truncated(n, lambda, a, b), lambda, p1, p2, &rule)
            };
            let name = format!("truncation {n}");
            match (r(0.05), r(0.1)) {
                (Ok(a), Ok(b)) => {
                    let exponent = (b / a).log2();
                    let target = (2 * n + 2) as f64;
                    item(
                        &name,
                        (exponent - target).abs() <= 0.2,
                        format!("exponent {exponent:.4} (expected {target} +- 0.2)"),
                    )
                }
                (Err(e), _) | (_, Err(e)) => failed(&name, e),
            }
        })
        .collect()
}

fn stability(s: &Solutions) -> Vec<Item> {
    let mut items = Vec::new();
    match (
        series_from_solutions(&s.base, &s.doubled, 4),
        series_from_solutions(&s.doubled, &s.quadrupled, 4),
    ) {
        (Ok(a), Ok(b)) => {
            for n in 1..=4 {
                let change = (b.coefficients[n] - a.coefficients[n]).abs();
                items.push(item(
                    format!("c{n}"),
                    change < a.errors[n],
                    format!("change {change:.3e}, reported error {:.3e}", a.errors[n]),
                ));
            }
        }
        (Err(e), _) | (_, Err(e)) => items.push(failed("series", e)),
    }
    for &p in &DIAGONAL_POINTS {
        let name = format!("G6 diagonal at p = {p}");
        let values = s
            .base
            .diagonal(3, p)
            .and_then(|a| Ok((a, s.doubled.diagonal(3, p)?, s.quadrupled.diagonal(3, p)?)));
        items.push(match values {
            Ok((a, b, c)) => {
                let error = (b - a).abs() + ROUNDING_FLOOR * b.abs();
                let change = (c - b).abs();
                item(&name, change < error, format!("change {change:.3e}, reported error {error:.3e}"))
            }
            Err(e) => failed(&name, e),
        });
    }
    items
}
