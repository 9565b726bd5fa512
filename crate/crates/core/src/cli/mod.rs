//! Named verification suites, single-shot computations and their reports.
//!
//! The binary is a thin argument parser over [`run_suite`] and [`compute`].
//! Maps are given as zoo names or as inline JSON (the serde form of
//! [`RationalMap`]: `name`, `source`/`target` domains with `model` and `dim`,
//! numerator and denominator term lists over the polarized source chart).

mod compute;
mod report;
mod suites;

pub use compute::{compute, parse_point, Computation, COMPUTATIONS};
pub use report::{complex, complex_text, matrix, matrix_text, num, CheckRecord, Status, Summary, SuiteReport, SCHEMA, VERSION};
pub use suites::{run_suite, SUITES};

use crate::maps::{cayley_conjugate, map_zoo, MapError, RationalMap};
use crate::geometry::Model;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown suite `{0}` (expected one of: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unknown computation `{0}` (expected one of: {list})", list = COMPUTATIONS.join(", "))]
    UnknownComputation(String),
    #[error("bad map `{arg}`: {source}; use a zoo name such as whitney, dangelo:0.5, geodesic:2:3, identity:3 (append -siegel for the Cayley conjugate) or inline JSON")]
    BadMap { arg: String, source: MapError },
    #[error("bad point `{0}`: expected comma-separated complex coordinates like 0.5,0.1+0.2i")]
    BadPoint(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Failed(#[from] Box<dyn std::error::Error + Send + Sync>),
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for computations that failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

/// Knobs shared by suites and computations. `None` means the documented default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub map: Option<String>,
    pub cap: Option<u32>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub factors: Option<String>,
    pub k: Option<f64>,
    pub theta: Option<f64>,
    pub point: Option<String>,
    pub model: Option<String>,
    pub timings: bool,
}

/// A zoo name or an inline JSON map.
pub fn resolve_map(arg: &str, theta: Option<f64>) -> Result<RationalMap, CliError> {
    let bad = |source| CliError::BadMap { arg: arg.to_string(), source };
    if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map_err(|e| bad(MapError::Representation(e.to_string())))
    } else {
        map_zoo(arg, theta).map_err(bad)
    }
}

/// Like [`resolve_map`], but conjugated onto the Siegel model when given on the ball.
pub fn resolve_siegel_map(arg: &str, theta: Option<f64>) -> Result<RationalMap, CliError> {
    let f = resolve_map(arg, theta)?;
    if f.source.model == Model::Siegel {
        return Ok(f);
    }
    cayley_conjugate(&f).map_err(|source| CliError::BadMap { arg: arg.to_string(), source })
}

pub(crate) fn parse_model(s: Option<&str>) -> Result<Model, CliError> {
    match s.unwrap_or("ball") {
        "ball" => Ok(Model::Ball),
        "siegel" => Ok(Model::Siegel),
        other => Err(CliError::Usage(format!("unknown model `{other}` (expected ball or siegel)"))),
    }
}

#[cfg(test)]
mod tests;
