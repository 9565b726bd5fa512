use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{closed_ball_samples, sphere_point, ConformalFactor, MapError, RationalMap, Result};
use crate::geometry::{bergman_ball, bergman_siegel, DomainPoint, Frame, HermitianTensor, Model};
use crate::jetcalc::{TruncatedSeries, EXACT_CAP};

/// Number of sphere points used for the sampled boundary residual.
const BOUNDARY_SAMPLES: usize = 1000;

/// Outcome of testing whether `|den|^2 - |num|^2` is divisible by `1 - |z|^2`.
#[derive(Clone, Debug)]
pub struct Properness {
    pub divisible: bool,
    /// Exact quotient in the polarized source chart when divisible.
    pub quotient: Option<TruncatedSeries>,
    /// Largest coefficient of the division remainder (the top two weights).
    pub remainder: f64,
    /// `max |1 - |F|^2|` over sphere samples.
    pub boundary_max: f64,
    pub samples: usize,
}

fn one_minus_norm(vars: &std::sync::Arc<crate::jetcalc::VarSet>) -> TruncatedSeries {
    let h = vars.holomorphic_count();
    (0..h).fold(TruncatedSeries::one(vars, EXACT_CAP), |acc, j| {
        let mut e = vec![0u16; vars.len()];
        e[j] = 1;
        e[h + j] = 1;
        acc - TruncatedSeries::polynomial(vars, [(e, Complex64::new(1.0, 0.0))])
    })
}

/// `|den|^2 - sum |num_l|^2` as an exact polarized polynomial.
fn cleared_defect(f: &RationalMap) -> TruncatedSeries {
    let den = f.denominator();
    let mut q = den * &den.conj();
    for n in f.numerators() {
        q = q - n * &n.conj();
    }
    q
}

/// Decide properness of a ball-to-ball rational map by exact division.
///
/// With `Q = |den|^2 - |num|^2` of weight `d`, the product `Q (1 - |z|^2)^{-1}`
/// expanded to weight `d` is a polynomial of weight `<= d - 2` exactly when
/// the division is exact; the weight `d-1` and `d` parts are the remainder.
pub fn properness_residual(f: &RationalMap) -> Result<Properness> {
    if f.source.model != Model::Ball || f.target.model != Model::Ball {
        return Err(MapError::NotBallMap);
    }
    let vars = f.vars();
    let q = cleared_defect(f);
    let scale = q.max_abs_coeff().max(1.0);
    let tol = 1e-12 * scale;
    let d = q.max_weight().unwrap_or(0);
    let (divisible, quotient, remainder) = if d < 2 {
        let r = q.max_abs_coeff();
        (r <= tol, (r <= tol).then(|| TruncatedSeries::zero(vars, EXACT_CAP)), r)
    } else {
        let series = q.with_cap(d).try_mul(&one_minus_norm(vars).with_cap(d).reciprocal()?)?;
        let rem = series.filter(|e| vars.weight_of(e) + 1 >= d).max_abs_coeff();
        let keep = series.filter(|e| vars.weight_of(e) + 2 <= d);
        let quot = TruncatedSeries::polynomial(vars, keep.terms().map(|(m, c)| (m.exps().to_vec(), c)));
        (rem <= tol, (rem <= tol).then_some(quot), rem)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut boundary_max: f64 = 0.0;
    for _ in 0..BOUNDARY_SAMPLES {
        let p = DomainPoint::ball(sphere_point(&mut rng, f.source.dim));
        if let Ok(v) = f.eval(&p) {
            let r = 1.0 - v.iter().map(|c| c.norm_sqr()).sum::<f64>();
            boundary_max = boundary_max.max(r.abs());
        }
    }
    Ok(Properness { divisible, quotient, remainder, boundary_max, samples: BOUNDARY_SAMPLES })
}

/// `φ` with `1 - |F|^2 = (1 - |z|^2) φ`; positivity is checked on closed-ball samples.
pub fn boundary_factor_phi(f: &RationalMap) -> Result<ConformalFactor> {
    let pr = properness_residual(f)?;
    let quot = pr.quotient.ok_or(MapError::NotProper(pr.remainder))?;
    let den = f.denominator();
    let phi = if f.is_polynomial() {
        let c = den.constant_term();
        ConformalFactor::polynomial(Model::Ball, quot.scale(Complex64::new(1.0 / c.norm_sqr(), 0.0)))
    } else {
        ConformalFactor::rational(Model::Ball, quot, den * &den.conj())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1);
    phi.check_positive(&closed_ball_samples(&mut rng, f.source.dim, 1000))?;
    Ok(phi)
}

/// How [`pullback_metric`] evaluates `F^*(ds^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullbackRoute {
    /// `J^T G(F(p)) conj(J)`.
    ChainRule,
    /// Gradient term plus rank-one term written directly in the components of `F`.
    Display,
}

/// Pullback of the target Bergman metric through `F` at an interior point.
pub fn pullback_metric(f: &RationalMap, p: &DomainPoint, route: PullbackRoute) -> Result<HermitianTensor> {
    p.expect_model(f.source.model)?;
    p.expect_interior()?;
    let image = f.eval_point(p)?;
    if image.defining_value() <= 0.0 {
        return Err(MapError::OutsideTarget);
    }
    let jac = f.jacobian(p)?;
    let frame = Frame::for_model(f.source.model, f.source.dim);
    let n = f.source.dim;
    match (route, f.target.model) {
        (PullbackRoute::ChainRule, Model::Ball) => Ok(bergman_ball(&image)?.pullback(&jac, frame)),
        (PullbackRoute::ChainRule, Model::Siegel) => Ok(bergman_siegel(&image)?.pullback(&jac, frame)),
        (PullbackRoute::Display, Model::Ball) => {
            let fv = &image.coords;
            let d = image.defining_value();
            let grad: Vec<Complex64> =
                (0..n).map(|a| fv.iter().enumerate().map(|(l, fl)| fl.conj() * jac[(l, a)]).sum()).collect();
            let m = DMatrix::from_fn(n, n, |a, b| {
                let first: Complex64 = (0..fv.len()).map(|l| jac[(l, a)] * jac[(l, b)].conj()).sum();
                first / d + grad[a] * grad[b].conj() / (d * d)
            });
            Ok(HermitianTensor::new(frame, m))
        }
        (PullbackRoute::Display, Model::Siegel) => {
            // H = Im g - |f~|^2 and the metric is ∂∂̄(-log H)
            let big = f.target.dim;
            let fv = &image.coords;
            let h = image.defining_value();
            let ha: Vec<Complex64> = (0..n)
                .map(|a| {
                    let s: Complex64 = (0..big - 1).map(|l| fv[l].conj() * jac[(l, a)]).sum();
                    jac[(big - 1, a)] / Complex64::new(0.0, 2.0) - s
                })
                .collect();
            let m = DMatrix::from_fn(n, n, |a, b| {
                let hab: Complex64 = -(0..big - 1).map(|l| jac[(l, a)] * jac[(l, b)].conj()).sum::<Complex64>();
                -hab / h + ha[a] * ha[b].conj() / (h * h)
            });
            Ok(HermitianTensor::new(frame, m))
        }
    }
}

/// How [`tensor_x`] evaluates `X = ds^2 - F^*(ds^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XRoute {
    /// Source metric minus the pullback; interior points only.
    MetricDifference,
    /// Complex Hessian of `log φ`; valid up to and across the sphere.
    LogPhi,
}

/// Precomputed derivatives of the division quotient `q` for the log-φ route.
///
/// `log φ` and `log q` differ by the pluriharmonic `log |den|^2`, so the
/// Hessian of `log q` is used directly.
#[derive(Clone, Debug)]
pub struct LogPhiHessian {
    n: usize,
    q: TruncatedSeries,
    qa: Vec<TruncatedSeries>,
    qb: Vec<TruncatedSeries>,
    qab: Vec<Vec<TruncatedSeries>>,
}

impl LogPhiHessian {
    pub fn new(f: &RationalMap) -> Result<Self> {
        let pr = properness_residual(f)?;
        let q = pr.quotient.ok_or(MapError::NotProper(pr.remainder))?;
        let n = f.source.dim;
        let d = |s: &TruncatedSeries, i: usize| s.partial_at(i, 1).expect("exact polynomial");
        let qa: Vec<_> = (0..n).map(|a| d(&q, a)).collect();
        let qb: Vec<_> = (0..n).map(|b| d(&q, n + b)).collect();
        let qab = qa.iter().map(|s| (0..n).map(|b| d(s, n + b)).collect()).collect();
        Ok(LogPhiHessian { n, q, qa, qb, qab })
    }

    /// `X_ab = q_{a b̄}/q - q_a q_{b̄}/q^2` at any point of the chart where `q > 0`.
    pub fn eval(&self, coords: &[Complex64]) -> Result<HermitianTensor> {
        if coords.len() != self.n {
            return Err(MapError::Dimension { expected: self.n, got: coords.len() });
        }
        let ev = |s: &TruncatedSeries| s.eval_polarized(coords, &[]).expect("chart arity checked");
        let q = ev(&self.q);
        if q.re <= 0.0 {
            return Err(MapError::NotPositive(q.re));
        }
        let qa: Vec<_> = self.qa.iter().map(ev).collect();
        let qb: Vec<_> = self.qb.iter().map(ev).collect();
        let m = DMatrix::from_fn(self.n, self.n, |a, b| ev(&self.qab[a][b]) / q - qa[a] * qb[b] / (q * q));
        Ok(HermitianTensor::new(Frame::Ball(self.n), m))
    }

    pub fn quotient(&self) -> &TruncatedSeries {
        &self.q
    }
}

/// `X = ds^2_n - F^*(ds^2_N)` for a proper ball map, by either route.
pub fn tensor_x(f: &RationalMap, p: &DomainPoint, route: XRoute) -> Result<HermitianTensor> {
    if f.source.model != Model::Ball || f.target.model != Model::Ball {
        return Err(MapError::NotBallMap);
    }
    p.expect_model(Model::Ball)?;
    match route {
        XRoute::MetricDifference => {
            let g = bergman_ball(p)?;
            let pb = pullback_metric(f, p, PullbackRoute::ChainRule)?;
            Ok(HermitianTensor::new(g.frame.clone(), &g.matrix - &pb.matrix))
        }
        XRoute::LogPhi => LogPhiHessian::new(f)?.eval(&p.coords),
    }
}
