use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MapError, Result};
use crate::geometry::{DomainPoint, Model};
use crate::jetcalc::{TruncatedSeries, VarSet, EXACT_CAP};

/// Model and complex dimension of a source or target domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub model: Model,
    pub dim: usize,
}

impl Domain {
    pub fn ball(dim: usize) -> Self {
        Domain { model: Model::Ball, dim }
    }

    pub fn siegel(dim: usize) -> Self {
        Domain { model: Model::Siegel, dim }
    }

    /// Polarized chart: `z1..zn` (ball) or `z1..z_{n-1}, w` (Siegel), plus conjugates.
    pub fn chart(&self) -> Arc<VarSet> {
        Arc::new(match self.model {
            Model::Ball => VarSet::ball(self.dim),
            Model::Siegel => VarSet::siegel(self.dim),
        })
    }

    pub fn point(&self, coords: Vec<Complex64>) -> DomainPoint {
        DomainPoint { model: self.model, coords }
    }
}

/// A holomorphic map `numerators / denominator` with a common denominator.
///
/// Numerators and denominator are exact polynomials in the holomorphic
/// variables of the source chart; nothing is reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    pub name: String,
    pub source: Domain,
    pub target: Domain,
    vars: Arc<VarSet>,
    numerators: Vec<TruncatedSeries>,
    denominator: TruncatedSeries,
}

impl RationalMap {
    pub fn new(
        name: impl Into<String>,
        source: Domain,
        target: Domain,
        numerators: Vec<TruncatedSeries>,
        denominator: TruncatedSeries,
    ) -> Result<Self> {
        let vars = source.chart();
        if numerators.len() != target.dim {
            return Err(MapError::Dimension { expected: target.dim, got: numerators.len() });
        }
        let h = vars.holomorphic_count();
        for p in numerators.iter().chain(std::iter::once(&denominator)) {
            if **p.vars() != *vars {
                return Err(MapError::Dimension { expected: vars.len(), got: p.vars().len() });
            }
            if p.terms().any(|(m, _)| m.exps()[h..].iter().any(|&e| e > 0)) {
                return Err(MapError::NotHolomorphic);
            }
        }
        if denominator.is_zero() {
            return Err(MapError::Pole);
        }
        let exact = |p: TruncatedSeries| {
            TruncatedSeries::polynomial(&vars, p.terms().map(|(m, c)| (m.exps().to_vec(), c)))
        };
        Ok(RationalMap {
            name: name.into(),
            source,
            target,
            numerators: numerators.into_iter().map(exact).collect(),
            denominator: exact(denominator),
            vars,
        })
    }

    pub fn polynomial(
        name: impl Into<String>,
        source: Domain,
        target: Domain,
        numerators: Vec<TruncatedSeries>,
    ) -> Result<Self> {
        let vars = source.chart();
        let one = TruncatedSeries::one(&vars, EXACT_CAP);
        Self::new(name, source, target, numerators, one)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn numerators(&self) -> &[TruncatedSeries] {
        &self.numerators
    }

    pub fn denominator(&self) -> &TruncatedSeries {
        &self.denominator
    }

    /// Component `l` as a (numerator, denominator) pair.
    pub fn component(&self, l: usize) -> (&TruncatedSeries, &TruncatedSeries) {
        (&self.numerators[l], &self.denominator)
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.len() == 1 && self.denominator.max_weight() == Some(0)
    }

    /// Every numerator and the denominator are constants.
    pub fn is_constant(&self) -> bool {
        self.numerators
            .iter()
            .chain(std::iter::once(&self.denominator))
            .all(|p| p.max_weight().unwrap_or(0) == 0)
    }

    /// Largest total degree among numerators and denominator.
    pub fn degree(&self) -> u32 {
        let h = self.vars.holomorphic_count();
        self.numerators
            .iter()
            .chain(std::iter::once(&self.denominator))
            .flat_map(|p| p.terms().map(|(m, _)| m.exps()[..h].iter().map(|&e| e as u32).sum::<u32>()))
            .max()
            .unwrap_or(0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn check_point(&self, p: &DomainPoint) -> Result<()> {
        if p.model != self.source.model || p.dim() != self.source.dim {
            return Err(MapError::Dimension { expected: self.source.dim, got: p.dim() });
        }
        Ok(())
    }

    fn eval_poly(&self, poly: &TruncatedSeries, p: &DomainPoint) -> Complex64 {
        poly.eval_polarized(&p.coords, &[]).expect("chart and point agree")
    }

    pub fn eval(&self, p: &DomainPoint) -> Result<Vec<Complex64>> {
        self.check_point(p)?;
        let d = self.eval_poly(&self.denominator, p);
        if d.norm() < 1e-300 {
            return Err(MapError::Pole);
        }
        Ok(self.numerators.iter().map(|n| self.eval_poly(n, p) / d).collect())
    }

    pub fn eval_point(&self, p: &DomainPoint) -> Result<DomainPoint> {
        Ok(self.target.point(self.eval(p)?))
    }

    /// `J[(target slot, source slot)]` by the quotient rule on exact derivatives.
    pub fn jacobian(&self, p: &DomainPoint) -> Result<DMatrix<Complex64>> {
        self.check_point(p)?;
        let d = self.eval_poly(&self.denominator, p);
        if d.norm() < 1e-300 {
            return Err(MapError::Pole);
        }
        let n = self.source.dim;
        let dd: Vec<Complex64> = (0..n)
            .map(|a| self.eval_poly(&self.denominator.partial_at(a, 1).expect("exact"), p))
            .collect();
        let mut j = DMatrix::zeros(self.target.dim, n);
        for (l, num) in self.numerators.iter().enumerate() {
            let v = self.eval_poly(num, p);
            for a in 0..n {
                let dn = self.eval_poly(&num.partial_at(a, 1).expect("exact"), p);
                j[(l, a)] = (dn * d - v * dd[a]) / (d * d);
            }
        }
        Ok(j)
    }

    /// Same rational function up to the unreduced representation: `N_l D' = N'_l D`.
    pub fn equivalent(&self, other: &RationalMap, tol: f64) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        self.numerators.iter().zip(&other.numerators).all(|(a, b)| {
            let lhs = a * &other.denominator;
            let rhs = b * &self.denominator;
            lhs.max_abs_diff(&rhs).map(|d| d <= tol).unwrap_or(false)
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exps: Vec<u16>,
    coef: Complex64,
}

/// JSON description: dims, model tags and coefficient lists over the holomorphic variables.
#[derive(Serialize, Deserialize)]
struct MapDescription {
    schema: u32,
    name: String,
    source: Domain,
    target: Domain,
    variables: Vec<String>,
    numerators: Vec<Vec<Term>>,
    denominator: Vec<Term>,
}

fn terms_of(p: &TruncatedSeries, h: usize) -> Vec<Term> {
    p.terms().map(|(m, c)| Term { exps: m.exps()[..h].to_vec(), coef: c }).collect()
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let h = self.vars.holomorphic_count();
        MapDescription {
            schema: 1,
            name: self.name.clone(),
            source: self.source,
            target: self.target,
            variables: self.vars.vars()[..h].iter().map(|v| v.name.clone()).collect(),
            numerators: self.numerators.iter().map(|p| terms_of(p, h)).collect(),
            denominator: terms_of(&self.denominator, h),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let desc = MapDescription::deserialize(d)?;
        if desc.schema != 1 {
            return Err(D::Error::custom(format!("unsupported map schema {}", desc.schema)));
        }
        let vars = desc.source.chart();
        let h = vars.holomorphic_count();
        let poly = |terms: &[Term]| -> std::result::Result<TruncatedSeries, D::Error> {
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                if t.exps.len() != h {
                    return Err(D::Error::custom(format!(
                        "term has {} exponents, source chart has {h} variables",
                        t.exps.len()
                    )));
                }
                let mut e = t.exps.clone();
                e.resize(vars.len(), 0);
                out.push((e, t.coef));
            }
            Ok(TruncatedSeries::polynomial(&vars, out))
        };
        let nums = desc.numerators.iter().map(|t| poly(t)).collect::<std::result::Result<Vec<_>, _>>()?;
        let den = poly(&desc.denominator)?;
        RationalMap::new(desc.name, desc.source, desc.target, nums, den).map_err(D::Error::custom)
    }
}
