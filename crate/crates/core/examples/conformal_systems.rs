//! Necessary conditions for a system of maps with conformal factors to be isometric.

use std::error::Error;

use bergman_rigidity::crinvariants::{conformal_residual, lambda_deficit_order, normalize_jet, weighted_a_sum, MapJet};
use bergman_rigidity::geometry::{DomainPoint, Model};
use bergman_rigidity::jetcalc::TruncatedSeries;
use bergman_rigidity::maps::{map_zoo, ConformalFactor, Domain};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let chart = Domain::ball(2).chart();
    let k = |x: f64| ConformalFactor::constant(Model::Ball, &chart, x);
    let geo = map_zoo("geodesic:2:3", None)?;
    let pair = [geo.clone(), geo];
    let p = DomainPoint::ball(vec![Complex64::new(0.3, 0.2), Complex64::new(-0.1, 0.5)]);
    let ok = conformal_residual(&pair, &k(1.0), &[k(0.25), k(0.75)], &p)?;
    let off = conformal_residual(&pair, &k(1.0), &[k(0.25), k(0.5)], &p)?;
    println!("balanced residual {:.2e}, unbalanced {:.2e}", ok.max_abs(), off.max_abs());

    // λ = 2 - |z|^2 differs from 1/2 + 1/2 by 1 - |z|^2: a first-order deficit
    let lin = TruncatedSeries::polynomial(
        &chart,
        [(vec![0, 0, 0, 0], Complex64::new(2.0, 0.0)), (vec![1, 0, 1, 0], Complex64::new(-1.0, 0.0)), (vec![0, 1, 0, 1], Complex64::new(-1.0, 0.0))],
    );
    let d = lambda_deficit_order(&ConformalFactor::polynomial(Model::Ball, lin), &[k(0.5), k(0.5)], &pair)?;
    println!("deficit order {:.3} (flagged: {})", d.order.unwrap_or(f64::NAN), d.flagged);

    let q = DomainPoint::siegel(&[Complex64::new(0.5, 0.0)], Complex64::new(0.3, 0.25));
    let jet = |name: &str| -> Result<MapJet, Box<dyn Error>> { Ok(normalize_jet(&MapJet::at_boundary(&map_zoo(name, None)?, &q, 6)?)?) };
    let s = weighted_a_sum(&[jet("whitney-siegel")?, jet("geodesic:2:3-siegel")?], &[0.5, 0.5])?;
    println!("Σλ_j a^j with a Whitney component: {:.4}", s[(0, 0)]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
