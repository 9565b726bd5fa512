use std::sync::Arc;

use num_complex::Complex64;

use super::{DomainPoint, GeometryError, Location, Model, Result};
use crate::jetcalc::{TruncatedSeries, VarSet};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `σ(z, w) = (z + z0, w + w0 + 2i z·conj(z0))` for a boundary point `(z0, w0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergTranslation {
    pub z0: Vec<Complex64>,
    pub w0: Complex64,
}

impl HeisenbergTranslation {
    pub fn new(p0: &DomainPoint) -> Result<Self> {
        p0.expect_model(Model::Siegel)?;
        if p0.location() != Location::Boundary {
            return Err(GeometryError::NotOnBoundary { model: Model::Siegel, value: p0.defining_value() });
        }
        Ok(HeisenbergTranslation { z0: p0.z().to_vec(), w0: p0.w() })
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergTranslation { z0: vec![Complex64::default(); n - 1], w0: Complex64::default() }
    }

    pub fn base_point(&self) -> DomainPoint {
        DomainPoint::siegel(&self.z0, self.w0)
    }

    pub fn apply(&self, p: &DomainPoint) -> Result<DomainPoint> {
        p.expect_model(Model::Siegel)?;
        let z = p.z();
        let cross: Complex64 = z.iter().zip(&self.z0).map(|(a, b)| a * b.conj()).sum();
        let zs: Vec<_> = z.iter().zip(&self.z0).map(|(a, b)| a + b).collect();
        Ok(DomainPoint::siegel(&zs, p.w() + self.w0 + 2.0 * I * cross))
    }

    /// `self ∘ other`, again a Heisenberg translation.
    pub fn compose(&self, other: &Self) -> Self {
        let cross: Complex64 = other.z0.iter().zip(&self.z0).map(|(q, p)| q * p.conj()).sum();
        HeisenbergTranslation {
            z0: self.z0.iter().zip(&other.z0).map(|(a, b)| a + b).collect(),
            w0: self.w0 + other.w0 + 2.0 * I * cross,
        }
    }

    pub fn inverse(&self) -> Self {
        HeisenbergTranslation { z0: self.z0.iter().map(|z| -z).collect(), w0: -self.w0.conj() }
    }

    /// The map as exact polynomials in the holomorphic variables `z1.., w` of `vars`.
    pub fn polynomial(&self, vars: &Arc<VarSet>) -> Result<Vec<TruncatedSeries>> {
        let constant = |c: Complex64| TruncatedSeries::polynomial(vars, [(vec![0; vars.len()], c)]);
        let mut out = Vec::with_capacity(self.z0.len() + 1);
        let mut gw = exact_var(vars, "w")? + constant(self.w0);
        for (j, z0) in self.z0.iter().enumerate() {
            let zj = exact_var(vars, &format!("z{}", j + 1))?;
            gw = &gw + &zj.scale(2.0 * I * z0.conj());
            out.push(zj + constant(*z0));
        }
        out.push(gw);
        Ok(out)
    }
}

pub(crate) fn exact_var(vars: &Arc<VarSet>, name: &str) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::var(vars, crate::jetcalc::EXACT_CAP, name)?)
}
