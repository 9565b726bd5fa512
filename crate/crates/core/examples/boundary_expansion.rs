//! Expanding H = Im g - |f~|^2 in the transversal variable and the chain identities.

use std::error::Error;

use bergman_rigidity::crinvariants::{chain_identities, closed_form_p, expand_h, MapJet};
use bergman_rigidity::geometry::DomainPoint;
use bergman_rigidity::maps::map_zoo;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = map_zoo("whitney-siegel", None)?;
    let p = DomainPoint::siegel(&[Complex64::new(0.5, 0.0)], Complex64::new(0.3, 0.25));
    let j = MapJet::at_boundary(&f, &p, 6)?;
    let ex = expand_h(&j)?;
    for (k, s) in ex.components().iter().enumerate() {
        println!("P{} = {}", k + 1, s.chop(1e-12));
    }
    let closed = closed_form_p(&j)?;
    println!("expansion vs closed form: {:.2e}", ex.max_abs_diff(&closed)?);
    println!("chain identity residual:  {:.2e}", chain_identities(&j)?.max_abs());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
