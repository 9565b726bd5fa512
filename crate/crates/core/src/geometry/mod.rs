//! Ball and Siegel models, their normalized Bergman metrics, the Cayley
//! transform, Heisenberg translations and CR vector fields.

mod cayley;
mod crfields;
mod eigen;
mod heisenberg;
mod metric;

pub use cayley::{cayley, cayley_inverse, cayley_jacobian};
pub use crfields::{CrField, CrVectorField};
pub use eigen::{hermitian_eigenvalues, symmetric_eigenvalues};
pub use heisenberg::HeisenbergTranslation;
pub use metric::{bergman_ball, bergman_siegel, semipositivity, Frame, HermitianTensor};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `|defining function| < BOUNDARY_TOL` counts as a boundary point.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ball,
    Siegel,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point is not interior to the {model:?} model (defining value {value:e})")]
    NotInterior { model: Model, value: f64 },
    #[error("point is not on the boundary of the {model:?} model (defining value {value:e})")]
    NotOnBoundary { model: Model, value: f64 },
    #[error("expected a {expected:?} point, got {got:?}")]
    ModelMismatch { expected: Model, got: Model },
    #[error("Cayley transform has a pole here")]
    CayleyPole,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error(transparent)]
    Series(#[from] crate::jetcalc::SeriesError),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A point of `B^n` or of `H^n`; Siegel coordinates are `(z_1..z_{n-1}, w)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub model: Model,
    pub coords: Vec<Complex64>,
}

impl DomainPoint {
    pub fn ball(coords: Vec<Complex64>) -> Self {
        DomainPoint { model: Model::Ball, coords }
    }

    pub fn siegel(z: &[Complex64], w: Complex64) -> Self {
        let mut coords = z.to_vec();
        coords.push(w);
        DomainPoint { model: Model::Siegel, coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `z` part of a Siegel point (all coordinates for a ball point).
    pub fn z(&self) -> &[Complex64] {
        match self.model {
            Model::Ball => &self.coords,
            Model::Siegel => &self.coords[..self.coords.len() - 1],
        }
    }

    pub fn w(&self) -> Complex64 {
        *self.coords.last().expect("empty point")
    }

    /// `1 - |z|^2` on the ball, `t = Im w - |z|^2` on the Siegel domain.
    pub fn defining_value(&self) -> f64 {
        let z2: f64 = self.z().iter().map(|c| c.norm_sqr()).sum();
        match self.model {
            Model::Ball => 1.0 - z2,
            Model::Siegel => self.w().im - z2,
        }
    }

    pub fn location(&self) -> Location {
        let v = self.defining_value();
        if v.abs() < BOUNDARY_TOL {
            Location::Boundary
        } else if v > 0.0 {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    pub(crate) fn expect_model(&self, model: Model) -> Result<()> {
        if self.model == model {
            Ok(())
        } else {
            Err(GeometryError::ModelMismatch { expected: model, got: self.model })
        }
    }

    pub(crate) fn expect_interior(&self) -> Result<()> {
        if self.location() == Location::Interior {
            Ok(())
        } else {
            Err(GeometryError::NotInterior { model: self.model, value: self.defining_value() })
        }
    }
}
