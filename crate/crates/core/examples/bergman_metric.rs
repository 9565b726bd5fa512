//! Bergman metrics on the ball and the Siegel half-space, and their Cayley transport.

use std::error::Error;

use bergman_rigidity::cli::matrix_text;
use bergman_rigidity::geometry::{bergman_ball, bergman_siegel, cayley, cayley_jacobian, DomainPoint, Frame};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = DomainPoint::ball(vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)]);
    let g = bergman_ball(&p)?;
    println!("ball metric at (0.5, 0): {}", matrix_text(&g.matrix));
    println!("eigenvalues: {:?}", g.eigenvalues());

    let q = DomainPoint::siegel(&[Complex64::new(0.2, -0.1)], Complex64::new(0.4, 0.6));
    let direct = bergman_siegel(&q)?;
    let pulled = bergman_ball(&cayley(&q)?)?.pullback(&cayley_jacobian(&q)?, Frame::Siegel(2));
    println!("Siegel metric at {:?}: {}", q.coords, matrix_text(&direct.matrix));
    let diff = pulled.max_abs_diff(&direct);
    println!("Cayley pullback differs by {diff:.2e}");
    assert!(diff < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
