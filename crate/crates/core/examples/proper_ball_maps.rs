//! The map zoo: properness, the boundary factor φ and the tensor X.

use std::error::Error;

use bergman_rigidity::cli::matrix_text;
use bergman_rigidity::geometry::DomainPoint;
use bergman_rigidity::maps::{boundary_factor_phi, map_zoo, properness_residual, tensor_x, XRoute, ZOO_NAMES};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("zoo: {ZOO_NAMES:?}");
    for name in ["identity:2", "geodesic:2:3", "whitney", "dangelo:0.7", "scaled:0.5"] {
        let f = map_zoo(name, None)?;
        let pr = properness_residual(&f)?;
        match boundary_factor_phi(&f) {
            Ok(phi) => println!("{name:<14} proper, φ = {}", phi.numerator().chop(1e-12)),
            Err(e) => println!("{name:<14} {e} (boundary defect {:.3})", pr.boundary_max),
        }
    }

    let f = map_zoo("whitney", None)?;
    let p = DomainPoint::ball(vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)]);
    let a = tensor_x(&f, &p, XRoute::MetricDifference)?;
    let b = tensor_x(&f, &p, XRoute::LogPhi)?;
    println!("X(p) via metric difference: {}", matrix_text(&a.matrix));
    println!("routes differ by {:.2e}", a.max_abs_diff(&b));
    // the log φ route extends across the sphere
    let edge = DomainPoint::ball(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
    println!("X on the sphere: {}", matrix_text(&tensor_x(&f, &edge, XRoute::LogPhi)?.matrix));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
