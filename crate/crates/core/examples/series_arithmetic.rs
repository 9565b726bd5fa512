//! Weighted truncated series: products, reciprocals, composition, derivatives.

use std::error::Error;
use std::sync::Arc;

use bergman_rigidity::jetcalc::{TruncatedSeries, VarSet};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // z has weight 1, w weight 2; cap 4 keeps z^4, z^2 w, w^2, ...
    let vars = Arc::new(VarSet::siegel(2));
    let z = TruncatedSeries::var(&vars, 4, "z1")?;
    let w = TruncatedSeries::var(&vars, 4, "w")?;
    let one = TruncatedSeries::one(&vars, 4);

    let geometric = (&one - &z).reciprocal()?;
    println!("1/(1 - z1)      = {geometric}");
    let p = &(&one + &z) * &(&one + &w);
    println!("(1 + z1)(1 + w) = {p}");
    println!("d/dw            = {}", p.partial("w", 1)?);

    // substitute z1 -> z1 + w in 1/(1 - z1)
    let shifted = geometric.substitute(&[("z1", &z + &w)])?;
    println!("1/(1 - z1 - w)  = {shifted}");
    assert_eq!(shifted.coeff(&[1, 1, 0, 0]), Complex64::new(2.0, 0.0));

    let zbar = z.conj();
    println!("|z1|^2          = {}", &z * &zbar);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
