use super::*;

fn opts() -> Options {
    Options { seed: 42, ..Options::default() }
}

#[test]
fn unknown_names_are_usage_errors() {
    let e = run_suite("no-such-suite", &opts()).unwrap_err();
    assert!(matches!(e, CliError::UnknownSuite(_)));
    assert_eq!(e.exit_code(), 2);
    assert!(matches!(compute("nope", &opts()), Err(CliError::UnknownComputation(_))));
    let bad = Options { map: Some("whitneyy".into()), ..opts() };
    let e = compute("phi", &bad).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(e.to_string().contains("zoo name"));
    assert!(matches!(parse_point("0.5,x"), Err(CliError::BadPoint(_))));
}

#[test]
fn points_parse_as_complex_lists() {
    let p = parse_point("0.5, 0.3+0.25i,-2i").unwrap();
    assert_eq!(p, vec![num_complex::Complex64::new(0.5, 0.0), num_complex::Complex64::new(0.3, 0.25), num_complex::Complex64::new(0.0, -2.0)]);
}

#[test]
fn compute_examples() {
    let whitney = Options { map: Some("whitney".into()), ..opts() };
    assert_eq!(compute("phi", &whitney).unwrap().text, "1 + |z2|^2");
    let m = Options { model: Some("ball".into()), point: Some("0.5,0".into()), ..opts() };
    let g = compute("metric", &m).unwrap();
    assert_eq!(g.text, format!("[{}, 0; 0, {}]", 16.0 / 9.0, 4.0 / 3.0));
    let x = compute("X-origin", &Options { map: Some("whitney-siegel".into()), ..opts() }).unwrap();
    for key in ["closed_form", "extraction", "difference"] {
        assert!(x.json.get(key).is_some(), "{key}");
    }
    let k = compute("minimal-K", &opts()).unwrap();
    assert!(k.text.starts_with("K* = 0.25"));
    let p = compute("P-coeffs", &Options { map: Some("identity".into()), ..opts() }).unwrap();
    assert!(p.text.starts_with("P1 = 1\nP2 = 0\nP3 = 0"), "{}", p.text);
}

#[test]
fn suite_examples_pass() {
    let r = run_suite("lemma2-3", &Options { map: Some("identity".into()), ..opts() }).unwrap();
    assert!(r.all_passed(), "{}", r.to_text(false));
    assert!(r.record("lemma2-3/identity-values.identity").is_some());
    let g = run_suite("appendix-grauert", &Options { factors: Some("constant".into()), k: Some(1.0), ..opts() }).unwrap();
    assert_eq!(g.record("appendix-grauert/certificate").unwrap().status, Status::Pass);
    let bad = Options { factors: Some("wobbly".into()), ..opts() };
    assert!(matches!(run_suite("appendix-grauert", &bad), Err(CliError::Usage(_))));
}

#[test]
fn failing_certificates_are_reported_not_raised() {
    let o = Options { factors: Some("tilted".into()), k: Some(0.0), ..opts() };
    let r = run_suite("appendix-grauert", &o).unwrap();
    assert_eq!(r.record("appendix-grauert/certificate").unwrap().status, Status::Fail);
    assert_eq!(r.exit_code(), 1);
    let s = r.summary();
    assert_eq!(s.total, s.pass + s.fail + s.flagged);
}

#[test]
fn every_record_has_an_anchor() {
    let r = run_suite("prop2-6", &opts()).unwrap();
    assert!(r.records().iter().all(|c| !c.anchor.is_empty() && c.id.starts_with("prop2-6/")));
}
