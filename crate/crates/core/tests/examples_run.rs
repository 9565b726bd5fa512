//! Every runnable example completes without error.

#[path = "../examples/series_arithmetic.rs"]
mod series_arithmetic;
#[path = "../examples/bergman_metric.rs"]
mod bergman_metric;
#[path = "../examples/proper_ball_maps.rs"]
mod proper_ball_maps;
#[path = "../examples/siegel_conjugates.rs"]
mod siegel_conjugates;
#[path = "../examples/boundary_expansion.rs"]
mod boundary_expansion;
#[path = "../examples/normal_form.rs"]
mod normal_form;
#[path = "../examples/origin_invariants.rs"]
mod origin_invariants;
#[path = "../examples/conformal_systems.rs"]
mod conformal_systems;
#[path = "../examples/grauert_tubes.rs"]
mod grauert_tubes;
#[path = "../examples/verification_report.rs"]
mod verification_report;

#[test]
fn example_series_arithmetic() {
    series_arithmetic::run_example().unwrap();
}

#[test]
fn example_bergman_metric() {
    bergman_metric::run_example().unwrap();
}

#[test]
fn example_proper_ball_maps() {
    proper_ball_maps::run_example().unwrap();
}

#[test]
fn example_siegel_conjugates() {
    siegel_conjugates::run_example().unwrap();
}

#[test]
fn example_boundary_expansion() {
    boundary_expansion::run_example().unwrap();
}

#[test]
fn example_normal_form() {
    normal_form::run_example().unwrap();
}

#[test]
fn example_origin_invariants() {
    origin_invariants::run_example().unwrap();
}

#[test]
fn example_conformal_systems() {
    conformal_systems::run_example().unwrap();
}

#[test]
fn example_grauert_tubes() {
    grauert_tubes::run_example().unwrap();
}

#[test]
fn example_verification_report() {
    verification_report::run_example().unwrap();
}
