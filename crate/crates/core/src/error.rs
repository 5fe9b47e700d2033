use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point outside chart domain: {0}")]
    Domain(String),
    #[error("singular metric: {0}")]
    SingularMetric(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("no potential registered for form {0}")]
    UnsupportedForm(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("inconsistent results: {0}")]
    Consistency(String),
    #[error("lattice sum diverges: {0}")]
    DivergentSum(String),
    #[error("tolerance {tol:e} not reachable within M = {max_m}")]
    ToleranceUnreachable { tol: f64, max_m: usize },
    #[error("gauge potential singular at this point: {0}")]
    GaugeChart(String),
}

pub type Result<T> = std::result::Result<T, Error>;
