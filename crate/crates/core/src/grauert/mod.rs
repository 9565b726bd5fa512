//! The tube hypersurfaces `S1 ⊂ U × T B^n` and `S2 ⊂ U × Π T B^{N_j}`, their
//! defining functions, complex Hessians at the distinguished points
//! `(0, 0, ξ_1, ..., 0, ξ_m)`, and the search for the smallest bending
//! constant `K` that makes the Hessian positive definite.

mod blocks;

pub use blocks::{certify_pseudoconvex, certify_rho1, hessian_blocks, minimal_k, Certificate, EstimateConstants, HessianBlocks, MinimalK};

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::jetcalc::{SeriesError, TruncatedSeries, VarSet};
use crate::maps::{ConformalFactor, MapError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrauertError {
    #[error("K must be finite and non-negative, got {0}")]
    BadK(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("base point {slot} lies outside its ball (1 - |z|^2 = {value:e})")]
    OutsideDomain { slot: String, value: f64 },
    #[error("no positive-definite K found up to {0:e}")]
    NoCertificate(f64),
    #[error("min eigenvalue decreases in K on the bracket ({0:e} -> {1:e})")]
    NotMonotone(f64, f64),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, GrauertError>;

/// Which defining function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// `(1 + K|t|^2) λ(t) ds^2_n(t)(ζ, ζ) - 1` in variables `(t, ζ)`.
    Rho1,
    /// `(1 + K|t|^2) Σ λ_j(t) ds^2_{N_j}(z_j)(ξ_j, ξ_j) - 1` in variables `(t, z_1, ξ_1, ..., z_m, ξ_m)`.
    Rho2,
}

/// Data of `S1` and `S2`: the bending constant, the factors and the target dimensions.
#[derive(Clone, Debug)]
pub struct TubeHypersurface {
    pub k: f64,
    pub n: usize,
    pub dims: Vec<usize>,
    pub lambda: ConformalFactor,
    pub lambdas: Vec<ConformalFactor>,
}

impl TubeHypersurface {
    pub fn new(k: f64, lambda: ConformalFactor, lambdas: Vec<ConformalFactor>, dims: Vec<usize>) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(GrauertError::BadK(k));
        }
        if lambdas.len() != dims.len() || dims.is_empty() {
            return Err(GrauertError::Dimension(format!("{} factors for {} targets", lambdas.len(), dims.len())));
        }
        let n = lambda.vars().holomorphic_count();
        for l in &lambdas {
            if l.vars().holomorphic_count() != n || l.vars().len() != 2 * n {
                return Err(GrauertError::Dimension("factors must live on the same ball chart".into()));
            }
        }
        Ok(TubeHypersurface { k, n, dims, lambda, lambdas })
    }

    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(k, self.lambda.clone(), self.lambdas.clone(), self.dims.clone())
    }

    pub fn variables(&self, which: Which) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("t{i}")).collect();
        match which {
            Which::Rho1 => v.extend((1..=self.n).map(|i| format!("zeta{i}"))),
            Which::Rho2 => {
                for (j, &nj) in self.dims.iter().enumerate() {
                    v.extend((1..=nj).map(|l| format!("z{}_{l}", j + 1)));
                    v.extend((1..=nj).map(|l| format!("xi{}_{l}", j + 1)));
                }
            }
        }
        v
    }

    pub fn dim(&self, which: Which) -> usize {
        self.n + match which {
            Which::Rho1 => self.n,
            Which::Rho2 => 2 * self.dims.iter().sum::<usize>(),
        }
    }

    fn check_point(&self, which: Which, p: &[Complex64]) -> Result<()> {
        if p.len() != self.dim(which) {
            return Err(GrauertError::Dimension(format!("point has {} coordinates, expected {}", p.len(), self.dim(which))));
        }
        let check = |slot: String, z: &[Complex64]| {
            let d = 1.0 - z.iter().map(|c| c.norm_sqr()).sum::<f64>();
            if d <= 0.0 {
                Err(GrauertError::OutsideDomain { slot, value: d })
            } else {
                Ok(())
            }
        };
        check("t".into(), &p[..self.n])?;
        if which == Which::Rho2 {
            let mut off = self.n;
            for (j, &nj) in self.dims.iter().enumerate() {
                check(format!("z{}", j + 1), &p[off..off + nj])?;
                off += 2 * nj;
            }
        }
        Ok(())
    }

    /// Value of the defining function at `p`.
    pub fn rho_eval(&self, which: Which, p: &[Complex64]) -> Result<f64> {
        self.check_point(which, p)?;
        Ok(self.rho_direct(which, p)?)
    }

    fn rho_direct(&self, which: Which, p: &[Complex64]) -> std::result::Result<f64, MapError> {
        let t = &p[..self.n];
        let bend = 1.0 + self.k * t.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let form = |base: &[Complex64], v: &[Complex64]| {
            let d = 1.0 - base.iter().map(|c| c.norm_sqr()).sum::<f64>();
            let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let s: Complex64 = v.iter().zip(base).map(|(a, b)| a * b.conj()).sum();
            vv / d + s.norm_sqr() / (d * d)
        };
        let sum = match which {
            Which::Rho1 => self.lambda.eval_complex(t)?.re * form(t, &p[self.n..]),
            Which::Rho2 => {
                let mut off = self.n;
                let mut acc = 0.0;
                for (l, &nj) in self.lambdas.iter().zip(&self.dims) {
                    acc += l.eval_complex(t)?.re * form(&p[off..off + nj], &p[off + nj..off + 2 * nj]);
                    off += 2 * nj;
                }
                acc
            }
        };
        Ok(bend * sum - 1.0)
    }

    /// `ρ(p + δ)` as a series in `δ` truncated at degree 2.
    fn rho_series(&self, which: Which, p: &[Complex64]) -> Result<TruncatedSeries> {
        let names = self.variables(which);
        let mut b = VarSet::builder();
        for nm in &names {
            b = b.z(nm);
        }
        let vars = Arc::new(b.build());
        let h = names.len();
        let cap = 2;
        let shifted: Vec<TruncatedSeries> =
            (0..h).map(|a| TruncatedSeries::var_at(&vars, cap, a) + TruncatedSeries::constant(&vars, cap, p[a])).collect();
        let conj: Vec<TruncatedSeries> = shifted.iter().map(TruncatedSeries::conj).collect();
        let n = self.n;
        let inner: Vec<TruncatedSeries> = shifted[..n].iter().chain(&conj[..n]).cloned().collect();
        let factor = |l: &ConformalFactor| -> Result<TruncatedSeries> {
            let num = l.numerator().compose(&inner)?.with_cap(cap);
            let den = l.denominator().compose(&inner)?.with_cap(cap);
            Ok(num.try_mul(&den.reciprocal()?)?)
        };
        let one = TruncatedSeries::one(&vars, cap);
        let form = |base: std::ops::Range<usize>, v: std::ops::Range<usize>| -> Result<TruncatedSeries> {
            let mut d = one.clone();
            let mut vv = TruncatedSeries::zero(&vars, cap);
            let mut s = TruncatedSeries::zero(&vars, cap);
            for (a, bb) in v.zip(base) {
                d = d - &shifted[bb] * &conj[bb];
                vv = vv + &shifted[a] * &conj[a];
                s = s + &shifted[a] * &conj[bb];
            }
            let di = d.reciprocal()?;
            Ok(&vv * &di + &(&s * &s.conj()) * &(&di * &di))
        };
        let mut bend = one.clone();
        for a in 0..n {
            bend = bend + (&shifted[a] * &conj[a]) * self.k;
        }
        let sum = match which {
            Which::Rho1 => &factor(&self.lambda)? * &form(0..n, n..2 * n)?,
            Which::Rho2 => {
                let mut off = n;
                let mut acc = TruncatedSeries::zero(&vars, cap);
                for (l, &nj) in self.lambdas.iter().zip(&self.dims) {
                    acc = acc + &factor(l)? * &form(off..off + nj, off + nj..off + 2 * nj)?;
                    off += 2 * nj;
                }
                acc
            }
        };
        Ok(&bend * &sum - one)
    }

    /// Complex Hessian `∂^2 ρ / ∂v_a ∂v̄_b` read off the degree-2 jet at `p`.
    pub fn hessian_numeric(&self, which: Which, p: &[Complex64]) -> Result<DMatrix<Complex64>> {
        self.check_point(which, p)?;
        let s = self.rho_series(which, p)?;
        let h = self.dim(which);
        Ok(DMatrix::from_fn(h, h, |a, b| {
            let mut e = vec![0u16; 2 * h];
            e[a] += 1;
            e[h + b] += 1;
            s.coeff(&e)
        }))
    }

    /// Central-difference Hessian `¼[ρ_xx + ρ_yy + i(ρ_xy - ρ_yx)]` with step `step`.
    pub fn hessian_fd(&self, which: Which, p: &[Complex64], step: f64) -> Result<DMatrix<Complex64>> {
        self.check_point(which, p)?;
        let h = self.dim(which);
        let dir = |k: usize| -> (usize, Complex64) {
            if k < h {
                (k, Complex64::new(1.0, 0.0))
            } else {
                (k - h, Complex64::new(0.0, 1.0))
            }
        };
        let second = |r: usize, s: usize| -> Result<f64> {
            let (ir, dr) = dir(r);
            let (is, ds) = dir(s);
            let mut acc = 0.0;
            for (sr, ss, sign) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
                let mut q = p.to_vec();
                q[ir] += dr * (sr * step);
                q[is] += ds * (ss * step);
                acc += sign * self.rho_direct(which, &q)?;
            }
            Ok(acc / (4.0 * step * step))
        };
        let mut m = DMatrix::zeros(h, h);
        for a in 0..h {
            for b in 0..h {
                let xx = second(a, b)?;
                let yy = second(h + a, h + b)?;
                let xy = second(a, h + b)?;
                let yx = second(h + a, b)?;
                m[(a, b)] = Complex64::new(xx + yy, xy - yx) * 0.25;
            }
        }
        Ok(m)
    }

    /// `(0, 0, ξ_1, ..., 0, ξ_m)` in the ρ2 variable order.
    pub fn distinguished_point(&self, xi: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
        if xi.len() != self.dims.len() || xi.iter().zip(&self.dims).any(|(x, &d)| x.len() != d) {
            return Err(GrauertError::Dimension("fiber vectors do not match the target dimensions".into()));
        }
        let mut p = vec![Complex64::default(); self.n];
        for x in xi {
            p.extend(std::iter::repeat_n(Complex64::default(), x.len()));
            p.extend_from_slice(x);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests;
