//! Running a named suite and emitting its deterministic JSON report.

use std::error::Error;

use bergman_rigidity::cli::{run_suite, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = Options { seed: 7, samples: Some(50), ..Options::default() };
    let report = run_suite("lemma2-2", &opts)?;
    print!("{}", report.to_text(false));
    let json = report.to_json(false);
    println!("{} bytes of JSON, first record:", json.len());
    println!("{}", serde_json::to_string_pretty(&report.to_json_value(false)["records"][0])?);
    assert_eq!(json, run_suite("lemma2-2", &opts)?.to_json(false));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
