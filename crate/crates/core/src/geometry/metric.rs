use nalgebra::DMatrix;
use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use super::{DomainPoint, GeometryError, Model, Result};

/// Coordinate frame of a tensor: which slot is which differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `dz_1..dz_n`.
    Ball(usize),
    /// `dz_1..dz_{n-1}, dw`; the last slot is the `w` slot.
    Siegel(usize),
    Named(Vec<String>),
}

impl Frame {
    pub fn dim(&self) -> usize {
        match self {
            Frame::Ball(n) | Frame::Siegel(n) => *n,
            Frame::Named(v) => v.len(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        match self {
            Frame::Ball(n) => (1..=*n).map(|j| format!("z{j}")).collect(),
            Frame::Siegel(n) => (1..*n)
                .map(|j| format!("z{j}"))
                .chain(std::iter::once("w".to_string()))
                .collect(),
            Frame::Named(v) => v.clone(),
        }
    }

    pub fn for_model(model: Model, n: usize) -> Frame {
        match model {
            Model::Ball => Frame::Ball(n),
            Model::Siegel => Frame::Siegel(n),
        }
    }
}

/// Coefficients `G[(j,k)]` of `dζ_j ⊗ dζ̄_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianTensor {
    pub frame: Frame,
    pub matrix: DMatrix<Complex64>,
}

impl HermitianTensor {
    pub fn new(frame: Frame, matrix: DMatrix<Complex64>) -> Self {
        assert_eq!(frame.dim(), matrix.nrows());
        assert!(matrix.is_square());
        HermitianTensor { frame, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.matrix[(j, k)]
    }

    /// Largest entry of `G - G*`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Pull back along a Jacobian `J[(target, source)]`: `J^T G conj(J)`.
    pub fn pullback(&self, jac: &DMatrix<Complex64>, frame: Frame) -> HermitianTensor {
        let m = jac.transpose() * &self.matrix * jac.map(|c| c.conj());
        HermitianTensor::new(frame, m)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.hermitianized())
    }

    pub fn hermitianized(&self) -> DMatrix<Complex64> {
        (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0)
    }

    pub fn max_abs_diff(&self, other: &HermitianTensor) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: f64) -> HermitianTensor {
        HermitianTensor::new(self.frame.clone(), self.matrix.map(|c| c * k))
    }
}

/// Normalized Bergman metric of the ball, potential `-log(1 - |z|^2)`.
pub fn bergman_ball(p: &DomainPoint) -> Result<HermitianTensor> {
    p.expect_model(Model::Ball)?;
    p.expect_interior()?;
    let n = p.dim();
    let d = p.defining_value();
    let z = &p.coords;
    let m = DMatrix::from_fn(n, n, |j, k| {
        let delta = if j == k { d } else { 0.0 };
        (Complex64::new(delta, 0.0) + z[j].conj() * z[k]) / (d * d)
    });
    Ok(HermitianTensor::new(Frame::Ball(n), m))
}

/// Normalized Bergman metric of the Siegel domain, potential `-log t`.
pub fn bergman_siegel(p: &DomainPoint) -> Result<HermitianTensor> {
    p.expect_model(Model::Siegel)?;
    p.expect_interior()?;
    let n = p.dim();
    let t = p.defining_value();
    let t2 = t * t;
    let z = p.z();
    let two_i = Complex64::new(0.0, 2.0);
    let m = DMatrix::from_fn(n, n, |j, k| match (j + 1 == n, k + 1 == n) {
        (false, false) => {
            let delta = if j == k { t } else { 0.0 };
            (Complex64::new(delta, 0.0) + z[j].conj() * z[k]) / t2
        }
        (false, true) => z[j].conj() / (two_i * t2),
        (true, false) => -z[k] / (two_i * t2),
        (true, true) => Complex64::new(0.25 / t2, 0.0),
    });
    Ok(HermitianTensor::new(Frame::Siegel(n), m))
}

/// Hermitian defect tolerance, relative to the largest entry.
const HERMITIAN_TOL: f64 = 1e-10;

/// Smallest eigenvalue of `(G + G*)/2`.
pub fn semipositivity(g: &HermitianTensor) -> Result<f64> {
    let defect = g.hermitian_defect();
    if defect > HERMITIAN_TOL * g.max_abs().max(1.0) {
        return Err(GeometryError::NotHermitian(defect));
    }
    Ok(g.eigenvalues()[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ball_metric_examples() {
        let g = bergman_ball(&DomainPoint::ball(vec![c(0.0, 0.0); 3])).unwrap();
        assert!(g.max_abs_diff(&HermitianTensor::new(Frame::Ball(3), DMatrix::identity(3, 3))) == 0.0);
        let g = bergman_ball(&DomainPoint::ball(vec![c(0.5, 0.0), c(0.0, 0.0)])).unwrap();
        assert!((g.entry(0, 0) - c(16.0 / 9.0, 0.0)).norm() < 1e-14);
        assert!((g.entry(1, 1) - c(4.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!(g.entry(0, 1).norm() < 1e-15);
        let err = bergman_ball(&DomainPoint::ball(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        assert!(matches!(err, Err(GeometryError::NotInterior { .. })));
    }

    #[test]
    fn siegel_metric_at_reference_point() {
        let g = bergman_siegel(&DomainPoint::siegel(&[c(0.0, 0.0)], c(0.0, 1.0))).unwrap();
        assert!((g.entry(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(g.entry(0, 1).norm() < 1e-15 && g.entry(1, 0).norm() < 1e-15);
        assert!((g.entry(1, 1) - c(0.25, 0.0)).norm() < 1e-15);
        assert!(bergman_siegel(&DomainPoint::siegel(&[c(1.0, 0.0)], c(0.0, 1.0))).is_err());
    }

    #[test]
    fn metrics_are_hermitian_and_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let z: Vec<_> = (0..3).map(|_| c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4))).collect();
            let g = bergman_ball(&DomainPoint::ball(z.clone())).unwrap();
            assert!(g.hermitian_defect() < 1e-14);
            assert!(semipositivity(&g).unwrap() > 0.0);
            let zz: f64 = z[..2].iter().map(|x| x.norm_sqr()).sum();
            let w = c(rng.gen_range(-2.0..2.0), zz + rng.gen_range(0.01..2.0));
            let g = bergman_siegel(&DomainPoint::siegel(&z[..2], w)).unwrap();
            assert!(g.hermitian_defect() < 1e-12 * g.max_abs());
            assert!((g.entry(0, 2) - g.entry(2, 0).conj()).norm() < 1e-12 * g.max_abs());
            assert!(semipositivity(&g).unwrap() > 0.0);
        }
    }

    #[test]
    fn semipositivity_examples() {
        let id = HermitianTensor::new(Frame::Ball(2), DMatrix::identity(2, 2));
        assert_eq!(semipositivity(&id).unwrap(), 1.0);
        let d = HermitianTensor::new(
            Frame::Ball(2),
            DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
        );
        assert_eq!(semipositivity(&d).unwrap(), 0.0);
        let bad = HermitianTensor::new(
            Frame::Ball(2),
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        );
        assert!(matches!(semipositivity(&bad), Err(GeometryError::NotHermitian(_))));
    }
}
