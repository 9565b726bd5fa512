//! Normalizing a boundary jet by target automorphisms and reading off a.

use std::error::Error;

use bergman_rigidity::cli::matrix_text;
use bergman_rigidity::crinvariants::{normal_form_check, normalize_jet, MapJet};
use bergman_rigidity::geometry::DomainPoint;
use bergman_rigidity::maps::map_zoo;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = map_zoo("whitney-siegel", None)?;
    for p in [
        DomainPoint::siegel(&[Complex64::new(0.0, 0.0)], Complex64::new(0.0, 0.0)),
        DomainPoint::siegel(&[Complex64::new(0.5, 0.0)], Complex64::new(0.3, 0.25)),
    ] {
        let raw = MapJet::at_boundary(&f, &p, 6)?;
        let before = normal_form_check(&raw)?;
        let nf = normal_form_check(&normalize_jet(&raw)?)?;
        println!("base point {:?}", p.coords);
        println!("  raw jet normal: {} (first offending weight {:?})", before.is_normal, before.offending.map(|o| o.0));
        println!("  normalized: {}, a = {}, smallest eigenvalue {:.4}", nf.is_normal, matrix_text(&nf.a), nf.min_eigenvalue);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
