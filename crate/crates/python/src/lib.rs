use colour3_core::closedforms;
use colour3_core::polylog;
use colour3_core::quad::make_rule;
use colour3_core::recursion::{self, Solution, Solver, SolverConfig};
use colour3_core::ribbon::{self, FourthOrder};
use colour3_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parameter(_) | Error::Pole { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn config(grid_size: usize, panels: usize, points: usize, colour_factor: f64) -> SolverConfig {
    SolverConfig { grid_size, panels, points, colour_factor }
}

#[pyfunction]
fn li2(x: f64) -> PyResult<f64> {
    polylog::li2(x).map_err(err)
}

#[pyfunction]
fn li3(x: f64) -> PyResult<f64> {
    polylog::li3(x).map_err(err)
}

#[pyfunction]
fn zeta3() -> f64 {
    polylog::zeta3()
}

/// Closed-form coefficient G_2n(p1, p2) for n = 0..=3.
#[pyfunction]
fn closed_form(n: usize, p1: f64, p2: f64) -> PyResult<f64> {
    closedforms::closed_form(n, p1, p2).map_err(err)
}

#[pyfunction]
fn gp6_diag(p: f64) -> f64 {
    closedforms::gp6_diag(p)
}

/// Coefficients and error estimates of G(0,0) up to `max_order`.
#[pyfunction]
#[pyo3(signature = (max_order=4, grid_size=recursion::DEFAULT_GRID_SIZE, panels=12, points=24))]
fn series(py: Python<'_>, max_order: usize, grid_size: usize, panels: usize, points: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let c = config(grid_size, panels, points, recursion::COLOUR_FACTOR);
    let t = py.detach(|| recursion::g00_series(c, max_order)).map_err(err)?;
    Ok((t.coefficients, t.errors))
}

/// Recursion solution up to a fixed order.
#[pyclass(name = "Solution", frozen)]
struct PySolution(Solution);

#[pymethods]
impl PySolution {
    #[new]
    #[pyo3(signature = (max_order, grid_size=recursion::DEFAULT_GRID_SIZE, panels=12, points=24, colour_factor=recursion::COLOUR_FACTOR))]
    fn new(py: Python<'_>, max_order: usize, grid_size: usize, panels: usize, points: usize, colour_factor: f64) -> PyResult<Self> {
        let c = config(grid_size, panels, points, colour_factor);
        let s = py.detach(|| Solver::new(c).and_then(|s| s.solve(max_order))).map_err(err)?;
        Ok(PySolution(s))
    }

    #[getter]
    fn max_order(&self) -> usize {
        self.0.max_order()
    }

    fn value(&self, n: usize, p1: f64, p2: f64) -> PyResult<f64> {
        self.0.value(n, p1, p2).map_err(err)
    }

    fn diagonal(&self, n: usize, p: f64) -> PyResult<f64> {
        self.0.diagonal(n, p).map_err(err)
    }
}

/// (multiplicity, graph as JSON) for each two-point class at order n.
#[pyfunction]
fn enumerate_2pt(n: usize) -> PyResult<Vec<(usize, String)>> {
    let classes = ribbon::enumerate_2pt(n).map_err(err)?;
    Ok(classes.into_iter().map(|c| (c.multiplicity, c.representative.to_json())).collect())
}

/// Σ s(Γ)·amplitude(Γ) over the classes of order n.
#[pyfunction]
#[pyo3(signature = (n, p1, p2, panels=12, points=24))]
fn resum(py: Python<'_>, n: usize, p1: f64, p2: f64, panels: usize, points: usize) -> PyResult<f64> {
    let rule = make_rule(panels, points).map_err(err)?;
    let classes = ribbon::enumerate_2pt(n).map_err(err)?;
    py.detach(|| ribbon::resum(&classes, p1, p2, &rule)).map_err(err)
}

/// Closed amplitude of a fourth-order class, named "Gamma1" … "Gamma4".
#[pyfunction]
fn amplitude_closed(name: &str, p1: f64, p2: f64) -> PyResult<f64> {
    let kind = FourthOrder::ALL
        .into_iter()
        .find(|k| k.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| PyValueError::new_err(format!("unknown class {name:?}")))?;
    ribbon::amplitude_closed(kind, p1, p2).map_err(err)
}

#[pymodule]
fn colour3(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(li2, m)?)?;
    m.add_function(wrap_pyfunction!(li3, m)?)?;
    m.add_function(wrap_pyfunction!(zeta3, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(gp6_diag, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_2pt, m)?)?;
    m.add_function(wrap_pyfunction!(resum, m)?)?;
    m.add_function(wrap_pyfunction!(amplitude_closed, m)?)?;
    m.add_class::<PySolution>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
