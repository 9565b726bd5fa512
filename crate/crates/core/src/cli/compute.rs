//! Single-shot computations behind `compute <name>`.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::report::{complex, complex_text, matrix, matrix_text, num};
use super::suites::named_factor as suites_factor;
use super::{parse_model, resolve_map, resolve_siegel_map, CliError, Options};
use crate::crinvariants::{
    closed_form_p, expand_h, normal_form_check, normalize_jet, x_origin_closed, x_origin_extraction, MapJet, XTriple, DEFAULT_CAP,
    EXTRACTION_CAP,
};
use crate::geometry::{bergman_ball, bergman_siegel, DomainPoint, Model};
use crate::grauert::{minimal_k, TubeHypersurface};
use crate::maps::{boundary_factor_phi, properness_residual, tensor_x, RationalMap, XRoute};

pub const COMPUTATIONS: &[&str] = &["phi", "X", "P-coeffs", "normal-form", "X-origin", "minimal-K", "metric"];

/// A computed value in both output forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Computation {
    pub text: String,
    pub json: Value,
}

type Res<T> = Result<T, CliError>;

fn failed<E: std::error::Error + Send + Sync + 'static>(e: E) -> CliError {
    CliError::Failed(Box::new(e))
}

/// Comma-separated complex coordinates: `0.5,0`, `0.3+0.25i,-1i`.
pub fn parse_point(s: &str) -> Res<Vec<Complex64>> {
    s.split(',')
        .map(|t| t.trim().parse::<Complex64>().map_err(|_| CliError::BadPoint(s.to_string())))
        .collect()
}

fn point_json(p: &DomainPoint) -> Value {
    Value::Array(p.coords.iter().map(|&z| complex(z)).collect())
}

pub fn compute(name: &str, opts: &Options) -> Res<Computation> {
    match name {
        "phi" => phi(opts),
        "X" => x_tensor(opts),
        "P-coeffs" => p_coeffs(opts),
        "normal-form" => normal_form(opts),
        "X-origin" => x_origin(opts),
        "minimal-K" => minimal_k_cmd(opts),
        "metric" => metric(opts),
        other => Err(CliError::UnknownComputation(other.to_string())),
    }
}

fn need_map(opts: &Options) -> Res<&str> {
    opts.map.as_deref().ok_or_else(|| CliError::Usage("this computation needs --map".into()))
}

fn with_name(mut v: Value, f: &RationalMap) -> Value {
    v["schema"] = json!(super::SCHEMA);
    v["map"] = json!(f.name);
    v
}

fn phi(opts: &Options) -> Res<Computation> {
    let f = resolve_map(need_map(opts)?, opts.theta)?;
    let pr = properness_residual(&f).map_err(failed)?;
    let phi = boundary_factor_phi(&f).map_err(failed)?;
    let text = phi.numerator().chop(1e-12).to_string();
    let den = phi.denominator().chop(1e-12).to_string();
    let text = if den == "1" { text } else { format!("({text}) / ({den})") };
    let json = with_name(json!({ "phi": text, "divisible": pr.divisible, "boundary_max": num(pr.boundary_max) }), &f);
    Ok(Computation { text, json })
}

/// A source-domain point: `--point` or the centre (ball) / `(0, i)` (Siegel).
fn source_point(f: &RationalMap, opts: &Options) -> Res<DomainPoint> {
    let n = f.source.dim;
    let coords = match &opts.point {
        Some(s) => parse_point(s)?,
        None => match f.source.model {
            Model::Ball => vec![Complex64::new(0.0, 0.0); n],
            Model::Siegel => {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                v[n - 1] = Complex64::new(0.0, 1.0);
                v
            }
        },
    };
    if coords.len() != n {
        return Err(CliError::Usage(format!("point has {} coordinates, the map needs {n}", coords.len())));
    }
    Ok(f.source.point(coords))
}

fn x_tensor(opts: &Options) -> Res<Computation> {
    let f = resolve_map(need_map(opts)?, opts.theta)?;
    let p = source_point(&f, opts)?;
    let b = tensor_x(&f, &p, XRoute::LogPhi).map_err(failed)?;
    let mut json = with_name(json!({ "point": point_json(&p), "log_phi": matrix(&b.matrix) }), &f);
    let mut text = format!("X = {}", matrix_text(&b.matrix));
    // the metric-difference route only exists in the interior
    if let Ok(a) = tensor_x(&f, &p, XRoute::MetricDifference) {
        json["metric_difference"] = matrix(&a.matrix);
        json["difference"] = num(a.max_abs_diff(&b));
        text.push_str(&format!("\nroute difference {:.3e}", a.max_abs_diff(&b)));
    }
    Ok(Computation { text, json })
}

fn boundary_point(f: &RationalMap, opts: &Options) -> Res<DomainPoint> {
    let m = f.source.dim - 1;
    match &opts.point {
        None => Ok(DomainPoint::siegel(&vec![Complex64::new(0.0, 0.0); m], Complex64::new(0.0, 0.0))),
        Some(s) => {
            let v = parse_point(s)?;
            if v.len() != m + 1 {
                return Err(CliError::Usage(format!("boundary point needs {} coordinates (z.., w)", m + 1)));
            }
            Ok(DomainPoint::siegel(&v[..m], v[m]))
        }
    }
}

fn boundary_jet(opts: &Options, min_cap: u32) -> Res<(RationalMap, DomainPoint, MapJet)> {
    let f = resolve_siegel_map(need_map(opts)?, opts.theta)?;
    let p = boundary_point(&f, opts)?;
    let cap = opts.cap.unwrap_or(min_cap).max(min_cap);
    let j = MapJet::at_boundary(&f, &p, cap).map_err(failed)?;
    Ok((f, p, j))
}

fn p_coeffs(opts: &Options) -> Res<Computation> {
    let (f, p, j) = boundary_jet(opts, DEFAULT_CAP)?;
    let a = expand_h(&j).map_err(failed)?;
    let b = closed_form_p(&j).map_err(failed)?;
    let diff = a.max_abs_diff(&b).map_err(failed)?;
    let [p1, p2, p3] = a.components().map(|s| s.chop(1e-12).to_string());
    let text = format!("P1 = {p1}\nP2 = {p2}\nP3 = {p3}\nroute difference {diff:.3e}");
    let json = with_name(json!({ "point": point_json(&p), "cap": j.cap(), "P1": p1, "P2": p2, "P3": p3, "difference": num(diff) }), &f);
    Ok(Computation { text, json })
}

fn normal_form(opts: &Options) -> Res<Computation> {
    let (f, p, raw) = boundary_jet(opts, DEFAULT_CAP)?;
    let before = normal_form_check(&raw).map_err(failed)?;
    let j = normalize_jet(&raw).map_err(failed)?;
    let nf = normal_form_check(&j).map_err(failed)?;
    let text = format!(
        "raw jet normal: {}\nnormalized: {}\na = {}\nidentity residual {:.3e}, smallest eigenvalue of a {:.6}",
        before.is_normal,
        nf.is_normal,
        matrix_text(&nf.a),
        nf.identity_residual.max_abs_coeff(),
        nf.min_eigenvalue
    );
    let json = with_name(
        json!({
            "point": point_json(&p),
            "raw_is_normal": before.is_normal,
            "raw_offending": before.offending.map(|(w, s)| json!({ "weight": w, "term": s })),
            "is_normal": nf.is_normal,
            "a": matrix(&nf.a),
            "identity_residual": num(nf.identity_residual.max_abs_coeff()),
            "hermitian_defect": num(nf.hermitian_defect),
            "min_eigenvalue": num(nf.min_eigenvalue),
        }),
        &f,
    );
    Ok(Computation { text, json })
}

fn triple_json(x: &XTriple) -> Value {
    json!({ "X_jk": matrix(&x.xjk), "X_jn": Value::Array(x.xjn.iter().map(|&z| complex(z)).collect()), "X_nn": complex(x.xnn) })
}

fn x_origin(opts: &Options) -> Res<Computation> {
    let (f, p, raw) = boundary_jet(opts, EXTRACTION_CAP)?;
    let j = normalize_jet(&raw).map_err(failed)?;
    let a = x_origin_closed(&j).map_err(failed)?;
    let b = x_origin_extraction(&j).map_err(failed)?;
    let diff = a.max_abs_diff(&b);
    let jn: Vec<String> = a.xjn.iter().map(|&z| complex_text(z)).collect();
    let text = format!(
        "X_jk(0) = {}\nX_jn(0) = [{}]\nX_nn(0) = {}\nroute difference {diff:.3e}",
        matrix_text(&a.xjk),
        jn.join(", "),
        complex_text(a.xnn)
    );
    let json = with_name(json!({ "point": point_json(&p), "closed_form": triple_json(&a), "extraction": triple_json(&b), "difference": num(diff) }), &f);
    Ok(Computation { text, json })
}

fn minimal_k_cmd(opts: &Options) -> Res<Computation> {
    let factors = opts.factors.as_deref().unwrap_or("tilted");
    let t = TubeHypersurface::new(0.0, suites_factor("constant")?, vec![suites_factor(factors)?], vec![2]).map_err(failed)?;
    let xi = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];
    let tol = opts.tol.unwrap_or(1e-6);
    let m = minimal_k(&t, &xi, tol).map_err(failed)?;
    let text = format!("K* = {} (bracket [{}, {}], {} bisection steps)", m.k, m.bracket.0, m.bracket.1, m.iterations);
    let json = json!({
        "schema": super::SCHEMA,
        "factors": factors,
        "K": num(m.k),
        "bracket": [num(m.bracket.0), num(m.bracket.1)],
        "iterations": m.iterations,
        "tol": num(tol),
    });
    Ok(Computation { text, json })
}

fn metric(opts: &Options) -> Res<Computation> {
    let model = parse_model(opts.model.as_deref())?;
    let s = opts.point.as_deref().ok_or_else(|| CliError::Usage("metric needs --point".into()))?;
    let v = parse_point(s)?;
    let (p, g) = match model {
        Model::Ball => {
            let p = DomainPoint::ball(v);
            let g = bergman_ball(&p).map_err(failed)?;
            (p, g)
        }
        Model::Siegel => {
            let Some((&w, z)) = v.split_last() else { return Err(CliError::BadPoint(s.to_string())) };
            let p = DomainPoint::siegel(z, w);
            let g = bergman_siegel(&p).map_err(failed)?;
            (p, g)
        }
    };
    let text = matrix_text(&g.matrix);
    let json = json!({
        "schema": super::SCHEMA,
        "model": if model == Model::Ball { "ball" } else { "siegel" },
        "point": point_json(&p),
        "metric": matrix(&g.matrix),
    });
    Ok(Computation { text, json })
}
