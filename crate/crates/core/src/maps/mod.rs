//! Proper rational maps between balls and Siegel domains: the reference zoo,
//! properness by exact division, the boundary factor φ, pulled-back metrics
//! and the semi-positive tensor `X = ds^2 - F^*(ds^2)`.

mod cayley;
mod factor;
mod proper;
mod rational;
mod zoo;

pub use cayley::{cayley_conjugate, siegel_defining_residual, target_alignment};
pub use factor::{closed_ball_samples, sphere_point, ConformalFactor};
pub use proper::{
    boundary_factor_phi, properness_residual, pullback_metric, tensor_x, LogPhiHessian, Properness,
    PullbackRoute, XRoute,
};
pub use rational::{Domain, RationalMap};
pub use zoo::{map_zoo, ZOO_NAMES};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::jetcalc::SeriesError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("unknown zoo map `{0}`")]
    UnknownMap(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("map components must be holomorphic polynomials")]
    NotHolomorphic,
    #[error("denominator vanishes")]
    Pole,
    #[error("operation needs a map out of the ball")]
    NotBallMap,
    #[error("1 - |F|^2 is not divisible by 1 - |z|^2 (residual {0:e})")]
    NotProper(f64),
    #[error("factor is not positive (minimum {0:e})")]
    NotPositive(f64),
    #[error("factor is not real (imaginary part {0:e})")]
    NotReal(f64),
    #[error("image point lies outside the target domain")]
    OutsideTarget,
    #[error("Cayley representation fails: {0}")]
    Representation(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, MapError>;
