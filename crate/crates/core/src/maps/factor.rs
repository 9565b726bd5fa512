use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{MapError, Result};
use crate::geometry::{DomainPoint, Model};
use crate::jetcalc::{TruncatedSeries, VarSet, EXACT_CAP};

/// A real positive weight `num / den`, both exact polarized polynomials on a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFactor {
    pub model: Model,
    num: TruncatedSeries,
    den: TruncatedSeries,
}

impl ConformalFactor {
    pub fn polynomial(model: Model, num: TruncatedSeries) -> Self {
        let den = TruncatedSeries::one(num.vars(), EXACT_CAP);
        Self::rational(model, num, den)
    }

    pub fn rational(model: Model, num: TruncatedSeries, den: TruncatedSeries) -> Self {
        let exact = |p: &TruncatedSeries| {
            TruncatedSeries::polynomial(p.vars(), p.terms().map(|(m, c)| (m.exps().to_vec(), c)))
        };
        ConformalFactor { model, num: exact(&num), den: exact(&den) }
    }

    pub fn constant(model: Model, vars: &Arc<VarSet>, c: f64) -> Self {
        Self::polynomial(model, TruncatedSeries::constant(vars, EXACT_CAP, Complex64::new(c, 0.0)))
    }

    pub fn numerator(&self) -> &TruncatedSeries {
        &self.num
    }

    pub fn denominator(&self) -> &TruncatedSeries {
        &self.den
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.num.vars()
    }

    pub fn is_constant(&self) -> bool {
        self.num.max_weight().unwrap_or(0) == 0 && self.den.max_weight().unwrap_or(0) == 0
    }

    /// Complex value with conjugate slots set to the conjugate coordinates.
    pub fn eval_complex(&self, coords: &[Complex64]) -> Result<Complex64> {
        let n = self.num.eval_polarized(coords, &[])?;
        let d = self.den.eval_polarized(coords, &[])?;
        Ok(n / d)
    }

    pub fn eval(&self, p: &DomainPoint) -> Result<f64> {
        Ok(self.eval_complex(&p.coords)?.re)
    }

    /// Smallest value and largest imaginary part over the sample points.
    pub fn sample_extremes(&self, points: &[DomainPoint]) -> Result<(f64, f64)> {
        let mut min = f64::INFINITY;
        let mut imag: f64 = 0.0;
        for p in points {
            let v = self.eval_complex(&p.coords)?;
            min = min.min(v.re);
            imag = imag.max(v.im.abs());
        }
        Ok((min, imag))
    }

    /// Real and positive at every sample point.
    pub fn check_positive(&self, points: &[DomainPoint]) -> Result<()> {
        let (min, imag) = self.sample_extremes(points)?;
        if imag > 1e-12 {
            return Err(MapError::NotReal(imag));
        }
        if min <= 0.0 {
            return Err(MapError::NotPositive(min));
        }
        Ok(())
    }
}

impl fmt::Display for ConformalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 && self.den.constant_term() == Complex64::new(1.0, 0.0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `count` points of the closed ball: half uniform in the interior, half on the sphere.
pub fn closed_ball_samples<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<DomainPoint> {
    (0..count)
        .map(|i| {
            let v = sphere_point(rng, n);
            let r = if i % 2 == 0 { 1.0 } else { rng.gen::<f64>().powf(1.0 / (2 * n) as f64) };
            DomainPoint::ball(v.into_iter().map(|c| c * r).collect())
        })
        .collect()
}

/// Uniform point of the unit sphere in `C^n` (normalized Gaussian).
pub fn sphere_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}
