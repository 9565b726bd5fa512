use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{GrauertError, Result, TubeHypersurface, Which};
use crate::geometry::hermitian_eigenvalues;
use crate::maps::ConformalFactor;

/// Largest `K` tried before giving up on a certificate.
const K_CEILING: f64 = 1e12;

/// Closed-form Hessian blocks of ρ2 at `(0, 0, ξ_1, ..., 0, ξ_m)`.
#[derive(Clone, Debug)]
pub struct HessianBlocks {
    /// `(t, t̄)`: `K Σ λ_ν(0)|ξ_ν|^2 I + Σ ∂∂̄λ_ν(0)|ξ_ν|^2`.
    pub a: DMatrix<Complex64>,
    /// `(z_j, z̄_j)`: `λ_j(0)(|ξ_j|^2 δ_kl + conj(ξ_jk) ξ_jl)`.
    pub b: Vec<DMatrix<Complex64>>,
    /// `(ξ_j, ξ̄_j)`: `λ_j(0) I`.
    pub c: Vec<DMatrix<Complex64>>,
    /// `(t, ξ̄_j)`: `∂_{t_i}λ_j(0) ξ_jl`.
    pub d: Vec<DMatrix<Complex64>>,
}

impl HessianBlocks {
    /// Arrange the blocks in the variable order `(t, z_1, ξ_1, ..., z_m, ξ_m)`.
    pub fn assemble(&self) -> DMatrix<Complex64> {
        let n = self.a.nrows();
        let total = n + self.b.iter().map(|b| 2 * b.nrows()).sum::<usize>();
        let mut h = DMatrix::zeros(total, total);
        h.view_mut((0, 0), (n, n)).copy_from(&self.a);
        let mut off = n;
        for j in 0..self.b.len() {
            let nj = self.b[j].nrows();
            h.view_mut((off, off), (nj, nj)).copy_from(&self.b[j]);
            h.view_mut((off + nj, off + nj), (nj, nj)).copy_from(&self.c[j]);
            h.view_mut((0, off + nj), (n, nj)).copy_from(&self.d[j]);
            h.view_mut((off + nj, 0), (nj, n)).copy_from(&self.d[j].adjoint());
            off += 2 * nj;
        }
        h
    }
}

struct FactorJet {
    value: f64,
    grad: Vec<Complex64>,
    hess: DMatrix<Complex64>,
}

/// Value, `∂_{t_i}` and `∂_{t_i}∂_{t̄_j}` of a factor at `t = 0`.
fn factor_jet(l: &ConformalFactor, n: usize) -> Result<FactorJet> {
    let vars = l.vars();
    let num = l.numerator().with_cap(2);
    let den = l.denominator().with_cap(2);
    let s = num.try_mul(&den.reciprocal()?)?;
    let mono = |a: Option<usize>, b: Option<usize>| {
        let mut e = vec![0u16; vars.len()];
        if let Some(a) = a {
            e[a] += 1;
        }
        if let Some(b) = b {
            e[n + b] += 1;
        }
        e
    };
    Ok(FactorJet {
        value: s.coeff(&mono(None, None)).re,
        grad: (0..n).map(|i| s.coeff(&mono(Some(i), None))).collect(),
        hess: DMatrix::from_fn(n, n, |i, j| s.coeff(&mono(Some(i), Some(j)))),
    })
}

pub fn hessian_blocks(t: &TubeHypersurface, xi: &[Vec<Complex64>]) -> Result<HessianBlocks> {
    t.distinguished_point(xi)?;
    let n = t.n;
    let mut a = DMatrix::zeros(n, n);
    let (mut b, mut c, mut d) = (Vec::new(), Vec::new(), Vec::new());
    for (l, x) in t.lambdas.iter().zip(xi) {
        let fj = factor_jet(l, n)?;
        let nj = x.len();
        let x2: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        a += DMatrix::<Complex64>::identity(n, n) * Complex64::new(t.k * fj.value * x2, 0.0) + &fj.hess * Complex64::new(x2, 0.0);
        b.push(DMatrix::from_fn(nj, nj, |k, m| {
            let delta = if k == m { x2 } else { 0.0 };
            (Complex64::new(delta, 0.0) + x[k].conj() * x[m]) * fj.value
        }));
        c.push(DMatrix::identity(nj, nj) * Complex64::new(fj.value, 0.0));
        d.push(DMatrix::from_fn(n, nj, |i, m| fj.grad[i] * x[m]));
    }
    Ok(HessianBlocks { a, b, c, d })
}

/// `δ`, `ε`, `M_1`, `M` of the Cauchy–Schwarz lower bound for the Hessian form.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateConstants {
    pub delta: f64,
    pub epsilon: f64,
    pub m1: f64,
    pub m: f64,
}

impl EstimateConstants {
    /// `Σ_j [(δK - M)|ξ_j|^2|e|^2 + δ|ξ_j|^2|r_j|^2 + (δ - ε)|s_j|^2]`.
    pub fn lower_bound(&self, k: f64, xi: &[Vec<Complex64>], e: &[Complex64], r: &[Vec<Complex64>], s: &[Vec<Complex64>]) -> f64 {
        let nrm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let e2 = nrm(e);
        xi.iter()
            .zip(r.iter().zip(s))
            .map(|(x, (rj, sj))| {
                let x2 = nrm(x);
                (self.delta * k - self.m) * x2 * e2 + self.delta * x2 * nrm(rj) + (self.delta - self.epsilon) * nrm(sj)
            })
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub positive_definite: bool,
    pub min_eigenvalue: f64,
    /// Every fiber vector is nonzero; otherwise positivity is not claimed.
    pub fibers_nonzero: bool,
    pub rho: f64,
    pub constants: Option<EstimateConstants>,
}

fn min_eig(h: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(&((h + h.adjoint()) * Complex64::new(0.5, 0.0)))[0]
}

fn constants(t: &TubeHypersurface, blocks: &HessianBlocks, xi: &[Vec<Complex64>]) -> Result<EstimateConstants> {
    let nrm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let total: f64 = xi.iter().map(|x| nrm(x)).sum();
    let ma = min_eig(&blocks.a);
    let delta_a = if t.k > 0.0 && total > 0.0 { ma / (t.k * total) } else if ma >= 0.0 { f64::INFINITY } else { ma };
    let mut delta = delta_a;
    let mut m1: f64 = 0.0;
    for ((bj, cj), (x, l)) in blocks.b.iter().zip(&blocks.c).zip(xi.iter().zip(&t.lambdas)) {
        let x2 = nrm(x);
        if x2 > 0.0 {
            delta = delta.min(min_eig(bj) / x2);
        }
        delta = delta.min(min_eig(cj));
        let g = factor_jet(l, t.n)?.grad;
        m1 = m1.max(nrm(&g).sqrt());
    }
    let epsilon = delta / 2.0;
    Ok(EstimateConstants { delta, epsilon, m1, m: m1 * m1 / epsilon })
}

/// Positive-definiteness of the full complex Hessian of ρ2 at the distinguished point.
pub fn certify_pseudoconvex(t: &TubeHypersurface, xi: &[Vec<Complex64>]) -> Result<Certificate> {
    let p = t.distinguished_point(xi)?;
    let h = t.hessian_numeric(Which::Rho2, &p)?;
    let blocks = hessian_blocks(t, xi)?;
    let mu = min_eig(&h);
    Ok(Certificate {
        positive_definite: mu > 0.0,
        min_eigenvalue: mu,
        fibers_nonzero: xi.iter().all(|x| x.iter().any(|c| c.norm() > 0.0)),
        rho: t.rho_eval(Which::Rho2, &p)?,
        constants: Some(constants(t, &blocks, xi)?),
    })
}

/// The same certificate for ρ1 at `(0, ζ)`.
pub fn certify_rho1(t: &TubeHypersurface, zeta: &[Complex64]) -> Result<Certificate> {
    if zeta.len() != t.n {
        return Err(GrauertError::Dimension(format!("ζ has {} entries, expected {}", zeta.len(), t.n)));
    }
    let mut p = vec![Complex64::default(); t.n];
    p.extend_from_slice(zeta);
    let h = t.hessian_numeric(Which::Rho1, &p)?;
    let mu = min_eig(&h);
    Ok(Certificate {
        positive_definite: mu > 0.0,
        min_eigenvalue: mu,
        fibers_nonzero: zeta.iter().any(|c| c.norm() > 0.0),
        rho: t.rho_eval(Which::Rho1, &p)?,
        constants: None,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalK {
    /// Smallest certified `K` found, within `tol` of the threshold.
    pub k: f64,
    /// `(lo, hi)` bracket at termination.
    pub bracket: (f64, f64),
    pub iterations: u32,
}

/// Bisect on `K` for the threshold where the ρ2 Hessian becomes positive definite.
///
/// Returns 0 when the Hessian is already semi-definite at `K = 0` and
/// definite for every positive `K` tried.
pub fn minimal_k(t: &TubeHypersurface, xi: &[Vec<Complex64>], tol: f64) -> Result<MinimalK> {
    let p = t.distinguished_point(xi)?;
    let mu = |k: f64| -> Result<f64> { Ok(min_eig(&t.with_k(k)?.hessian_numeric(Which::Rho2, &p)?)) };
    let scale = mu(1.0)?.abs().max(1e-300);
    let m0 = mu(0.0)?;
    if m0 > 0.0 || (m0 >= -1e-12 * scale.max(1.0) && mu(tol)? > 0.0) {
        return Ok(MinimalK { k: 0.0, bracket: (0.0, 0.0), iterations: 0 });
    }
    let mut hi = 1.0;
    while mu(hi)? <= 0.0 {
        hi *= 2.0;
        if hi > K_CEILING {
            return Err(GrauertError::NoCertificate(K_CEILING));
        }
    }
    let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    // the K-dependence is K times a semi-definite block, so μ is nondecreasing
    let probes: Vec<f64> = (0..=8).map(|i| lo + (hi - lo) * i as f64 / 8.0).map(&mu).collect::<Result<_>>()?;
    for w in probes.windows(2) {
        if w[1] < w[0] - 1e-12 * w[0].abs().max(1.0) {
            return Err(GrauertError::NotMonotone(w[0], w[1]));
        }
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mu(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(MinimalK { k: hi, bracket: (lo, hi), iterations })
}
