//! The four subcommands. Each returns the text to emit.

use clap::ValueEnum;
use colour3_core::closedforms::{closed_form, g2, g4, gp6_diag};
use colour3_core::quad::make_rule;
use colour3_core::recursion::{g00_series, Solution, Solver};
use colour3_core::ribbon::{self, amplitude, amplitude_closed, enumerate_2pt, resum};
use colour3_core::MomentumPair;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Closed,
    Recursion,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad arguments or configuration.
    Usage(String),
    /// The engine failed or a verification item failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

fn engine(e: colour3_core::Error) -> CliError {
    CliError::Failure(e.to_string())
}

/// Round to 12 significant digits.
pub fn sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn num(x: f64) -> Value {
    json!(sig(x))
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn meta(config: &RunConfig) -> Value {
    json!({
        "grid": { "size": config.grid_size },
        "quadrature": { "panels": config.panels, "points": config.points },
        "version": VERSION,
    })
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serialises") + "\n"
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn cell(x: Option<f64>) -> String {
    x.map_or(String::new(), |v| format!("{:.11e}", v))
}

pub fn series(config: &RunConfig) -> Result<String, CliError> {
    let table = g00_series(config.solver(), config.max_order).map_err(engine)?;
    let rows: Vec<(usize, f64, f64)> =
        table.coefficients.iter().zip(&table.errors).enumerate().map(|(n, (&v, &e))| (n, v, e)).collect();
    Ok(match config.format {
        Format::Json => to_json(&json!({
            "meta": meta(config),
            "coefficients": rows.iter().map(|&(n, v, e)| json!({"order": n, "value": num(v), "error": num(e)})).collect::<Vec<_>>(),
            "diagnostics": {
                "momenta": [0.0, 0.0],
                "error_estimate": "change under doubling grid size and quadrature points",
                "reference": { "grid": { "size": 2 * config.grid_size }, "quadrature": { "panels": config.panels, "points": 2 * config.points } },
            },
        })),
        Format::Csv => to_csv(
            &["order", "value", "error", "grid_size", "panels", "points", "version"],
            &rows
                .iter()
                .map(|&(n, v, e)| {
                    vec![
                        n.to_string(),
                        cell(Some(v)),
                        cell(Some(e)),
                        config.grid_size.to_string(),
                        config.panels.to_string(),
                        config.points.to_string(),
                        VERSION.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

fn recursion_value(s: &Solution, n: usize, p1: f64, p2: f64) -> colour3_core::Result<f64> {
    if p1 == p2 {
        s.diagonal(n, p1)
    } else {
        s.value(n, p1, p2)
    }
}

pub fn eval(config: &RunConfig, p1: f64, p2: f64, order: usize, source: Source) -> Result<String, CliError> {
    MomentumPair::new(p1, p2).map_err(|e| CliError::Usage(e.to_string()))?;
    if order > 4 {
        return Err(CliError::Usage(format!("order must be at most 4, got {order}")));
    }
    if source != Source::Recursion && order > 3 {
        return Err(CliError::Usage(format!("no closed form at order {order}; use --source recursion")));
    }
    let closed = if source == Source::Recursion {
        None
    } else if order == 3 && p1 == p2 {
        Some(gp6_diag(p1))
    } else {
        Some(closed_form(order, p1, p2).map_err(engine)?)
    };
    let (recursion, error) = if source == Source::Closed {
        (None, None)
    } else {
        let c = config.solver();
        let coarse = Solver::new(c).and_then(|s| s.solve(order)).map_err(engine)?;
        let fine = Solver::new(c.doubled()).and_then(|s| s.solve(order)).map_err(engine)?;
        let a = recursion_value(&coarse, order, p1, p2).map_err(engine)?;
        let b = recursion_value(&fine, order, p1, p2).map_err(engine)?;
        (Some(b), Some((b - a).abs()))
    };
    let discrepancy = closed.zip(recursion).map(|(a, b)| (a - b).abs());
    Ok(match config.format {
        Format::Json => to_json(&json!({
            "meta": meta(config),
            "p1": p1,
            "p2": p2,
            "order": order,
            "source": source,
            "closed": opt(closed),
            "recursion": opt(recursion),
            "recursion_error": opt(error),
            "discrepancy": opt(discrepancy),
        })),
        Format::Csv => to_csv(
            &["p1", "p2", "order", "closed", "recursion", "recursion_error", "discrepancy"],
            &[vec![
                p1.to_string(),
                p2.to_string(),
                order.to_string(),
                cell(closed),
                cell(recursion),
                cell(error),
                cell(discrepancy),
            ]],
        ),
    })
}

pub fn graphs(config: &RunConfig, order: usize, p1: f64, p2: f64) -> Result<String, CliError> {
    if !(1..=2).contains(&order) {
        return Err(CliError::Usage(format!("graph enumeration supports orders 1 and 2, got {order}")));
    }
    MomentumPair::new(p1, p2).map_err(|e| CliError::Usage(e.to_string()))?;
    let rule = make_rule(config.panels, config.points).map_err(|e| CliError::Usage(e.to_string()))?;
    let classes = enumerate_2pt(order).map_err(engine)?;
    let mut rows = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let g = &c.representative;
        let (name, closed) = match g.fourth_order_kind() {
            Some(kind) => (kind.name().to_string(), amplitude_closed(kind, p1, p2).ok()),
            None => (format!("class{}", i + 1), Some(ribbon::worked_example_2_closed(p1, p2))),
        };
        let numeric = amplitude(g, &[p1, p2], &rule).map_err(engine)?;
        rows.push((name, c.multiplicity, numeric, closed, g));
    }
    let total = resum(&classes, p1, p2, &rule).map_err(engine)?;
    let expected = if order == 1 { g2(p1, p2) } else { g4(p1, p2) };
    Ok(match config.format {
        Format::Json => to_json(&json!({
            "meta": meta(config),
            "order": order,
            "p1": p1,
            "p2": p2,
            "classes": rows.iter().map(|(name, s, a, c, g)| json!({
                "name": name,
                "multiplicity": s,
                "amplitude": num(*a),
                "closed": opt(*c),
                "graph": g,
            })).collect::<Vec<_>>(),
            "total": num(total),
            "closed_total": num(expected),
            "difference": num((total - expected).abs()),
        })),
        Format::Csv => {
            let mut out: Vec<Vec<String>> = rows
                .iter()
                .map(|(name, s, a, c, _)| vec![name.clone(), s.to_string(), cell(Some(*a)), cell(*c)])
                .collect();
            out.push(vec!["total".into(), String::new(), cell(Some(total)), cell(Some(expected))]);
            to_csv(&["class", "multiplicity", "amplitude", "closed"], &out)
        }
    })
}

/// The report and whether everything passed.
pub fn verify(config: &RunConfig) -> (String, bool) {
    let criteria = verify::run(config);
    let ok = criteria.iter().all(|c| c.passed());
    let text = match config.format {
        Format::Json => to_json(&json!({
            "meta": meta(config),
            "criteria": criteria.iter().map(|c| json!({
                "id": c.id,
                "title": c.title,
                "passed": c.passed(),
                "items": c.items,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => to_csv(
            &["criterion", "item", "passed", "detail"],
            &criteria
                .iter()
                .flat_map(|c| {
                    c.items.iter().map(move |i| {
                        vec![c.id.to_string(), i.name.clone(), i.passed.to_string(), i.detail.clone()]
                    })
                })
                .collect::<Vec<_>>(),
        ),
    };
    (text, ok)
}

/// Plain-text report, one line per criterion followed by its items.
pub fn report_lines(criteria: &[verify::Criterion]) -> Vec<String> {
    let mut lines = Vec::new();
    for c in criteria {
        lines.push(c.line());
        for i in &c.items {
            let mark = if i.passed { "ok  " } else { "FAIL" };
            lines.push(format!("    {mark} {}: {}", i.name, i.detail));
            if let (false, Some(note)) = (i.passed, i.known_discrepancy) {
                lines.push(format!("         note: {note}"));
            }
        }
    }
    lines
}
