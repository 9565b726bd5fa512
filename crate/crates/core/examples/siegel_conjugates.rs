//! Moving ball maps to the Siegel model and checking the boundary is preserved.

use std::error::Error;

use bergman_rigidity::maps::{map_zoo, siegel_defining_residual};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for name in ["geodesic:2:3", "whitney", "dangelo:1.0"] {
        let f = map_zoo(&format!("{name}-siegel"), None)?;
        println!("{}: {} -> {}", f.name, f.source.dim, f.target.dim);
        for (l, num) in f.numerators().iter().enumerate() {
            println!("  F{} = ({}) / ({})", l + 1, num.chop(1e-12), f.denominator().chop(1e-12));
        }
        let r = siegel_defining_residual(&f)?;
        println!("  boundary residual {:.2e}", r.max_abs_coeff());
        assert!(r.max_abs_coeff() < 1e-12);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
