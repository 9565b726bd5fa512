//! X at the base point of a normalized jet, by closed form and by t^2 extraction.

use std::error::Error;

use bergman_rigidity::crinvariants::{normalize_jet, x_origin_closed, x_origin_extraction, MapJet};
use bergman_rigidity::geometry::DomainPoint;
use bergman_rigidity::maps::map_zoo;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = DomainPoint::siegel(&[Complex64::new(0.5, 0.0)], Complex64::new(0.3, 0.25));
    for name in ["geodesic:2:3", "whitney", "dangelo:0.6"] {
        let f = map_zoo(&format!("{name}-siegel"), None)?;
        let j = normalize_jet(&MapJet::at_boundary(&f, &p, 8)?)?;
        let a = x_origin_closed(&j)?;
        let b = x_origin_extraction(&j)?;
        println!(
            "{name:<13} X_jk = {:.6}  |X_jn| = {:.6}  X_nn = {:.6}  routes differ by {:.1e}",
            a.xjk[(0, 0)].re,
            a.cross_term_size(),
            a.xnn.re,
            a.max_abs_diff(&b)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
