//! Levi-form certificates for the bent tube hypersurfaces and the minimal bending constant.

use std::error::Error;

use bergman_rigidity::grauert::{certify_pseudoconvex, hessian_blocks, minimal_k, TubeHypersurface};
use bergman_rigidity::geometry::Model;
use bergman_rigidity::jetcalc::TruncatedSeries;
use bergman_rigidity::maps::{ConformalFactor, Domain};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let chart = Domain::ball(2).chart();
    let one = ConformalFactor::constant(Model::Ball, &chart, 1.0);
    let c = |x: f64| Complex64::new(x, 0.0);
    // λ1(t) = 1 + Re t1
    let tilted = ConformalFactor::polynomial(
        Model::Ball,
        TruncatedSeries::polynomial(&chart, [(vec![0, 0, 0, 0], c(1.0)), (vec![1, 0, 0, 0], c(0.5)), (vec![0, 0, 1, 0], c(0.5))]),
    );
    let xi = vec![vec![c(1.0), c(0.0)]];
    for k in [0.0, 0.2, 0.3, 1e6] {
        let t = TubeHypersurface::new(k, one.clone(), vec![tilted.clone()], vec![2])?;
        let cert = certify_pseudoconvex(&t, &xi)?;
        println!("K = {k:<9} definite: {:<5} smallest eigenvalue {:+.4}", cert.positive_definite, cert.min_eigenvalue);
    }
    let t = TubeHypersurface::new(0.0, one, vec![tilted], vec![2])?;
    let blocks = hessian_blocks(&t, &xi)?;
    println!("D block: {}", bergman_rigidity::cli::matrix_text(&blocks.d[0]));
    let m = minimal_k(&t, &xi, 1e-9)?;
    println!("minimal K = {:.9} after {} bisection steps", m.k, m.iterations);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
