use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DomainPoint, GeometryError, Model, Result};

const POLE_TOL: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(z, w) -> (2z / (1 - iw), (1 + iw) / (1 - iw))`, Siegel domain to ball.
pub fn cayley(p: &DomainPoint) -> Result<DomainPoint> {
    p.expect_model(Model::Siegel)?;
    let w = p.w();
    let den = 1.0 - I * w;
    if den.norm() < POLE_TOL {
        return Err(GeometryError::CayleyPole);
    }
    let mut coords: Vec<Complex64> = p.z().iter().map(|z| 2.0 * z / den).collect();
    coords.push((1.0 + I * w) / den);
    Ok(DomainPoint::ball(coords))
}

/// `(ζ, η) -> (ζ / (1 + η), i (1 - η) / (1 + η))`, ball to Siegel domain.
pub fn cayley_inverse(p: &DomainPoint) -> Result<DomainPoint> {
    p.expect_model(Model::Ball)?;
    let eta = *p.coords.last().expect("empty point");
    let den = 1.0 + eta;
    if den.norm() < POLE_TOL {
        return Err(GeometryError::CayleyPole);
    }
    let zeta = &p.coords[..p.dim() - 1];
    let z: Vec<Complex64> = zeta.iter().map(|x| x / den).collect();
    Ok(DomainPoint::siegel(&z, I * (1.0 - eta) / den))
}

/// Holomorphic Jacobian `J[(ball slot, siegel slot)]` of the Cayley transform.
pub fn cayley_jacobian(p: &DomainPoint) -> Result<DMatrix<Complex64>> {
    p.expect_model(Model::Siegel)?;
    let n = p.dim();
    let w = p.w();
    let den = 1.0 - I * w;
    if den.norm() < POLE_TOL {
        return Err(GeometryError::CayleyPole);
    }
    let z = p.z();
    let mut j = DMatrix::zeros(n, n);
    for a in 0..n - 1 {
        j[(a, a)] = 2.0 / den;
        j[(a, n - 1)] = 2.0 * I * z[a] / (den * den);
    }
    j[(n - 1, n - 1)] = 2.0 * I / (den * den);
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bergman_ball, bergman_siegel, Frame, Location};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_siegel<R: Rng>(rng: &mut R, n: usize, t: f64) -> DomainPoint {
        let z: Vec<_> = (0..n - 1).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let zz: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        DomainPoint::siegel(&z, c(rng.gen_range(-2.0..2.0), zz + t))
    }

    #[test]
    fn reference_points() {
        let centre = cayley(&DomainPoint::siegel(&[c(0.0, 0.0)], c(0.0, 1.0))).unwrap();
        assert!(centre.coords.iter().all(|x| x.norm() < 1e-15));
        let pole_image = cayley(&DomainPoint::siegel(&[c(0.0, 0.0)], c(0.0, 0.0))).unwrap();
        assert_eq!(pole_image.coords, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(
            cayley(&DomainPoint::siegel(&[c(0.0, 0.0)], c(0.0, -1.0))),
            Err(GeometryError::CayleyPole)
        );
    }

    #[test]
    fn round_trip_and_boundary_behaviour() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let t = rng.gen_range(0.01..3.0);
            let p = random_siegel(&mut rng, 3, t);
            let q = cayley(&p).unwrap();
            assert_eq!(q.location(), Location::Interior);
            let back = cayley_inverse(&q).unwrap();
            for (a, b) in back.coords.iter().zip(&p.coords) {
                assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
            }
            let b = cayley(&random_siegel(&mut rng, 3, 0.0)).unwrap();
            assert!(b.defining_value().abs() < 1e-12);
        }
    }

    #[test]
    fn jacobian_matches_difference_quotients() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let p = random_siegel(&mut rng, 3, 0.5);
        let j = cayley_jacobian(&p).unwrap();
        let h = 1e-6;
        for a in 0..3 {
            let mut plus = p.clone();
            let mut minus = p.clone();
            plus.coords[a] += h;
            minus.coords[a] -= h;
            let fp = cayley(&plus).unwrap();
            let fm = cayley(&minus).unwrap();
            for r in 0..3 {
                let fd = (fp.coords[r] - fm.coords[r]) / (2.0 * h);
                assert!((fd - j[(r, a)]).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn pullback_of_ball_metric_is_siegel_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for n in [2usize, 3] {
            for _ in 0..20 {
                let t = rng.gen_range(0.05..2.0);
                let p = random_siegel(&mut rng, n, t);
                let g = bergman_ball(&cayley(&p).unwrap()).unwrap();
                let pulled = g.pullback(&cayley_jacobian(&p).unwrap(), Frame::Siegel(n));
                let direct = bergman_siegel(&p).unwrap();
                let scale = direct.max_abs().max(1.0);
                assert!(pulled.max_abs_diff(&direct) <= 1e-10 * scale);
            }
        }
    }
}
