use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {0} outside the supported real domain")]
    Domain(f64),
    #[error("f_{k} has a pole at ({p1}, {p2})")]
    Pole { k: usize, p1: f64, p2: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("non-finite integrand at node t = {t} (q = {q})")]
    Integration { t: f64, q: f64 },
    #[error("order {order} diverged at ({p1}, {p2}): {value}")]
    Divergence { order: usize, p1: f64, p2: f64, value: f64 },
    #[error("extrapolation at p = {p} does not contract: {detail}")]
    Extrapolation { p: f64, detail: String },
    #[error("quadrature did not converge: estimate {estimate:e} exceeds {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
