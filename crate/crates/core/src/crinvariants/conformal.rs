use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normal_form_check, CrError, MapJet, Result};
use crate::geometry::{bergman_ball, bergman_siegel, DomainPoint, HermitianTensor, Model};
use crate::maps::{pullback_metric, sphere_point, ConformalFactor, MapError, PullbackRoute, RationalMap};

/// `λ ds^2 - Σ λ_j F_j^*(ds^2)` at an interior point of the common source.
pub fn conformal_residual(
    maps: &[RationalMap],
    lambda: &ConformalFactor,
    lambdas: &[ConformalFactor],
    p: &DomainPoint,
) -> Result<HermitianTensor> {
    if maps.is_empty() || maps.len() != lambdas.len() {
        return Err(CrError::EmptySystem);
    }
    let g = match p.model {
        Model::Ball => bergman_ball(p)?,
        Model::Siegel => bergman_siegel(p)?,
    };
    let l0 = lambda.eval(p)?;
    let mut m = g.matrix.map(|c| c * l0);
    for (f, l) in maps.iter().zip(lambdas) {
        let pb = pullback_metric(f, p, PullbackRoute::ChainRule)?;
        m -= pb.matrix * Complex64::new(l.eval(p)?, 0.0);
    }
    Ok(HermitianTensor::new(g.frame, m))
}

/// Fitted order of vanishing of `λ - Σ λ_j` (non-constant maps only) along a radial ray of the ball.
#[derive(Clone, Debug)]
pub struct DeficitOrder {
    /// `None` when the deficit vanishes identically along the ray.
    pub order: Option<f64>,
    /// `(δ, |deficit|)` with `δ = 1 - |z|^2`.
    pub samples: Vec<(f64, f64)>,
    /// The fitted order is below the required `2 - 0.05`.
    pub flagged: bool,
    /// Largest relative conformal residual over interior samples.
    pub residual_max: f64,
    /// The residual is negligible, so the order is meaningful.
    pub consistent: bool,
}

const MIN_ORDER: f64 = 1.95;

pub fn lambda_deficit_order(lambda: &ConformalFactor, lambdas: &[ConformalFactor], maps: &[RationalMap]) -> Result<DeficitOrder> {
    if maps.is_empty() || maps.len() != lambdas.len() {
        return Err(CrError::EmptySystem);
    }
    let n = maps[0].source.dim;
    if maps.iter().any(|f| f.source.model != Model::Ball || f.source.dim != n) {
        return Err(MapError::NotBallMap.into());
    }
    let mut samples = Vec::new();
    for k in 4..=14 {
        let delta = 2f64.powi(-k);
        let mut z = vec![Complex64::default(); n];
        z[0] = Complex64::new((1.0 - delta).sqrt(), 0.0);
        let p = DomainPoint::ball(z);
        let mut d = lambda.eval(&p)?;
        for (f, l) in maps.iter().zip(lambdas) {
            if !f.is_constant() {
                d -= l.eval(&p)?;
            }
        }
        samples.push((delta, d.abs()));
    }
    let scale = lambda.eval(&DomainPoint::ball(vec![Complex64::default(); n]))?.abs().max(1.0);
    let pts: Vec<(f64, f64)> = samples.iter().filter(|(_, d)| *d > 1e-14 * scale).map(|(x, d)| (x.ln(), d.ln())).collect();
    let order = if pts.len() < 2 {
        None
    } else {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        Some(sxy / sxx)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xdef1c17);
    let mut residual_max: f64 = 0.0;
    for _ in 0..20 {
        let r = 0.9 * rng.gen::<f64>();
        let p = DomainPoint::ball(sphere_point(&mut rng, n).into_iter().map(|c| c * r).collect());
        let res = conformal_residual(maps, lambda, lambdas, &p)?;
        let g = bergman_ball(&p)?;
        residual_max = residual_max.max(res.max_abs() / g.max_abs());
    }
    Ok(DeficitOrder {
        flagged: order.is_some_and(|o| o < MIN_ORDER),
        order,
        samples,
        residual_max,
        consistent: residual_max <= 1e-9,
    })
}

/// `Σ λ_j(0) a^j` over the normal-form matrices of the component jets.
pub fn weighted_a_sum(jets: &[MapJet], weights: &[f64]) -> Result<DMatrix<Complex64>> {
    if jets.is_empty() || jets.len() != weights.len() {
        return Err(CrError::EmptySystem);
    }
    let m = jets[0].n - 1;
    let mut sum = DMatrix::zeros(m, m);
    for (j, w) in jets.iter().zip(weights) {
        let nf = normal_form_check(j)?;
        if !nf.is_normal {
            return Err(CrError::NotNormalized(nf.offending.map(|o| o.1).unwrap_or_default()));
        }
        sum += nf.a * Complex64::new(*w, 0.0);
    }
    Ok(sum)
}
