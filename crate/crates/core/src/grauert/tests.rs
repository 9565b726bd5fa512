use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::geometry::Model;
use crate::maps::Domain;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn constant(n: usize, x: f64) -> ConformalFactor {
    ConformalFactor::constant(Model::Ball, &Domain::ball(n).chart(), x)
}

/// `1 + Re t1 = 1 + (t1 + conj t1)/2`.
fn tilted(n: usize) -> ConformalFactor {
    let vars = Domain::ball(n).chart();
    let mut e1 = vec![0u16; 2 * n];
    e1[0] = 1;
    let mut e2 = vec![0u16; 2 * n];
    e2[n] = 1;
    ConformalFactor::polynomial(
        Model::Ball,
        TruncatedSeries::polynomial(&vars, [(vec![0; 2 * n], c(1.0, 0.0)), (e1, c(0.5, 0.0)), (e2, c(0.5, 0.0))]),
    )
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn e1(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); n];
    v[0] = c(1.0, 0.0);
    v
}

#[test]
fn rho_examples() {
    let t = TubeHypersurface::new(3.0, constant(2, 2.0), vec![constant(2, 1.0)], vec![2]).unwrap();
    let zeta = [c(0.5_f64.sqrt(), 0.0), c(0.0, 0.0)];
    let p1 = [c(0.0, 0.0), c(0.0, 0.0), zeta[0], zeta[1]];
    assert!(t.rho_eval(Which::Rho1, &p1).unwrap().abs() < 1e-15);
    let xi = vec![vec![c(0.6, 0.0), c(0.0, 0.8)]];
    let p2 = t.distinguished_point(&xi).unwrap();
    assert!(t.rho_eval(Which::Rho2, &p2).unwrap().abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        let mut p: Vec<Complex64> = (0..6).map(|_| c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4))).collect();
        let base = t.rho_eval(Which::Rho2, &p).unwrap() + 1.0;
        let k = c(1.5, -0.7);
        for x in &mut p[4..] {
            *x *= k;
        }
        let scaled = t.rho_eval(Which::Rho2, &p).unwrap() + 1.0;
        assert!((scaled - k.norm_sqr() * base).abs() < 1e-12 * scaled);
    }
    let outside = [c(1.0, 0.0), c(0.0, 0.0), c(0.1, 0.0), c(0.0, 0.0)];
    assert!(matches!(t.rho_eval(Which::Rho1, &outside), Err(GrauertError::OutsideDomain { .. })));
    assert!(matches!(TubeHypersurface::new(-1.0, constant(2, 1.0), vec![constant(2, 1.0)], vec![2]), Err(GrauertError::BadK(_))));
}

#[test]
fn constant_factor_hessian_is_block_diagonal() {
    let k = 2.5;
    let t = TubeHypersurface::new(k, constant(2, 1.0), vec![constant(2, 1.0)], vec![2]).unwrap();
    let xi = vec![vec![c(0.3, 0.4), c(-0.5, 0.1)]];
    let x2: f64 = xi[0].iter().map(|v| v.norm_sqr()).sum();
    let h = t.hessian_numeric(Which::Rho2, &t.distinguished_point(&xi).unwrap()).unwrap();
    let bl = hessian_blocks(&t, &xi).unwrap();
    assert!(max_diff(&bl.a, &(DMatrix::identity(2, 2) * c(k * x2, 0.0))) < 1e-14);
    assert!(bl.d[0].iter().all(|x| x.norm() == 0.0));
    assert!(max_diff(&bl.c[0], &DMatrix::identity(2, 2)) == 0.0);
    assert!(max_diff(&h, &bl.assemble()) < 1e-12);
    let eig = crate::geometry::hermitian_eigenvalues(&bl.b[0]);
    assert!(eig[0] >= x2 - 1e-14);
}

#[test]
fn tilted_factor_d_block() {
    let t = TubeHypersurface::new(1.0, constant(2, 1.0), vec![tilted(2)], vec![2]).unwrap();
    let xi = vec![vec![c(0.3, 0.4), c(-0.5, 0.1)]];
    let bl = hessian_blocks(&t, &xi).unwrap();
    let expect = DMatrix::from_fn(2, 2, |i, l| if i == 0 { xi[0][l] * 0.5 } else { c(0.0, 0.0) });
    assert!(max_diff(&bl.d[0], &expect) < 1e-15);
    let h = t.hessian_numeric(Which::Rho2, &t.distinguished_point(&xi).unwrap()).unwrap();
    assert!(max_diff(&h, &bl.assemble()) < 1e-12);
}

#[test]
fn finite_difference_oracle_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..3 {
        let t = TubeHypersurface::new(rng.gen_range(0.0..3.0), tilted(2), vec![tilted(2), constant(2, 0.7)], vec![2, 3]).unwrap();
        let p: Vec<Complex64> = (0..t.dim(Which::Rho2)).map(|_| c(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))).collect();
        let a = t.hessian_numeric(Which::Rho2, &p).unwrap();
        let b = t.hessian_fd(Which::Rho2, &p, 1e-4).unwrap();
        assert!(max_diff(&a, &b) < 1e-6, "{}", max_diff(&a, &b));
        let q = &p[..4];
        let a = t.hessian_numeric(Which::Rho1, q).unwrap();
        let b = t.hessian_fd(Which::Rho1, q, 1e-4).unwrap();
        assert!(max_diff(&a, &b) < 1e-6);
    }
}

#[test]
fn certificates() {
    let xi = vec![e1(2)];
    let flat = TubeHypersurface::new(1.0, constant(2, 1.0), vec![constant(2, 1.0)], vec![2]).unwrap();
    let cert = certify_pseudoconvex(&flat, &xi).unwrap();
    assert!(cert.positive_definite && cert.fibers_nonzero && cert.rho.abs() < 1e-15);
    let tilt = TubeHypersurface::new(0.0, constant(2, 1.0), vec![tilted(2)], vec![2]).unwrap();
    assert!(!certify_pseudoconvex(&tilt, &xi).unwrap().positive_definite);
    assert!(certify_pseudoconvex(&tilt.with_k(1e6).unwrap(), &xi).unwrap().positive_definite);
    let zero = vec![vec![c(0.0, 0.0); 2]];
    assert!(!certify_pseudoconvex(&flat, &zero).unwrap().fibers_nonzero);
    let s1 = certify_rho1(&tilt.with_k(1e3).unwrap(), &e1(2)).unwrap();
    assert!(s1.positive_definite);
}

#[test]
fn estimate_chain_holds_for_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let t = TubeHypersurface::new(50.0, constant(2, 1.0), vec![tilted(2), constant(2, 2.0)], vec![2, 2]).unwrap();
    let xi = vec![vec![c(0.4, 0.1), c(0.2, -0.3)], vec![c(0.0, 0.5), c(0.1, 0.1)]];
    let cert = certify_pseudoconvex(&t, &xi).unwrap();
    let k = cert.constants.unwrap();
    assert!(k.delta > 0.0 && k.epsilon < k.delta);
    let h = hessian_blocks(&t, &xi).unwrap().assemble();
    let mut g = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    for _ in 0..200 {
        let e: Vec<Complex64> = (0..2).map(|_| g()).collect();
        let r: Vec<Vec<Complex64>> = (0..2).map(|_| (0..2).map(|_| g()).collect()).collect();
        let s: Vec<Vec<Complex64>> = (0..2).map(|_| (0..2).map(|_| g()).collect()).collect();
        let v: Vec<Complex64> = e.iter().chain(&r[0]).chain(&s[0]).chain(&r[1]).chain(&s[1]).copied().collect();
        let vv = nalgebra::DVector::from_vec(v);
        let form = (vv.transpose() * &h * vv.map(|x| x.conj()))[(0, 0)];
        assert!(form.im.abs() < 1e-12);
        assert!(form.re >= k.lower_bound(t.k, &xi, &e, &r, &s) - 1e-12);
    }
}

#[test]
fn minimal_k_examples() {
    let flat = TubeHypersurface::new(1.0, constant(2, 1.0), vec![constant(2, 1.0)], vec![2]).unwrap();
    assert_eq!(minimal_k(&flat, &[e1(2)], 1e-6).unwrap().k, 0.0);
    let tilt = TubeHypersurface::new(0.0, constant(2, 1.0), vec![tilted(2)], vec![2]).unwrap();
    let a = minimal_k(&tilt, &[e1(2)], 1e-6).unwrap();
    let b = minimal_k(&tilt, &[e1(2)], 1e-6).unwrap();
    assert_eq!(a, b);
    assert!((a.k - 0.25).abs() <= 1e-6, "{a:?}");
    let two: Vec<Complex64> = e1(2).into_iter().map(|x| x * 2.0).collect();
    let d = minimal_k(&tilt, &[two], 1e-6).unwrap();
    assert!(d.k <= a.k + 1e-6);
}
