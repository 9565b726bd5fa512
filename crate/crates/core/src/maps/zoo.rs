use num_complex::Complex64;

use super::{cayley_conjugate, Domain, MapError, RationalMap, Result};
use crate::jetcalc::{TruncatedSeries, EXACT_CAP};

/// Base names understood by [`map_zoo`]; append `-siegel` for the Cayley conjugate.
pub const ZOO_NAMES: &[&str] = &["identity", "geodesic", "whitney", "dangelo", "scaled"];

fn parse<T: std::str::FromStr>(s: Option<&str>, default: T, what: &str) -> Result<T> {
    match s {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| MapError::BadParameter(format!("{what} `{v}`"))),
    }
}

/// Build a reference map by name.
///
/// `identity[:n]`, `geodesic[:n[:N]]` (`z -> (z, 0)`), `whitney`,
/// `dangelo[:θ]`, `scaled[:c[:n]]` (`z -> c z`, not proper unless `|c| = 1`).
/// A `-siegel` suffix conjugates by the Cayley transforms. `theta` is used by
/// `dangelo` when the name carries no angle; the default angle is π/6.
pub fn map_zoo(name: &str, theta: Option<f64>) -> Result<RationalMap> {
    if let Some(base) = name.strip_suffix("-siegel") {
        return cayley_conjugate(&map_zoo(base, theta)?);
    }
    let mut parts = name.split(':');
    let base = parts.next().unwrap_or_default();
    let p1 = parts.next();
    let p2 = parts.next();
    if parts.next().is_some() {
        return Err(MapError::BadParameter(format!("too many parameters in `{name}`")));
    }
    let ball_var = |vars: &std::sync::Arc<crate::jetcalc::VarSet>, j: usize| {
        TruncatedSeries::var_at(vars, EXACT_CAP, j)
    };
    match base {
        "identity" => {
            let n: usize = parse(p1, 2, "dimension")?;
            check_dim(n)?;
            let src = Domain::ball(n);
            let vars = src.chart();
            let comps = (0..n).map(|j| ball_var(&vars, j)).collect();
            RationalMap::polynomial(format!("identity:{n}"), src, Domain::ball(n), comps)
        }
        "geodesic" | "linear-geodesic" => {
            let n: usize = parse(p1, 2, "dimension")?;
            let big: usize = parse(p2, n + 1, "target dimension")?;
            check_dim(n)?;
            if big < n {
                return Err(MapError::BadParameter(format!("target dimension {big} < {n}")));
            }
            let src = Domain::ball(n);
            let vars = src.chart();
            let comps = (0..big)
                .map(|j| if j < n { ball_var(&vars, j) } else { TruncatedSeries::zero(&vars, EXACT_CAP) })
                .collect();
            RationalMap::polynomial(format!("geodesic:{n}:{big}"), src, Domain::ball(big), comps)
        }
        "whitney" => {
            if p1.is_some() {
                return Err(MapError::BadParameter("whitney takes no parameters".into()));
            }
            let src = Domain::ball(2);
            let vars = src.chart();
            let (z1, z2) = (ball_var(&vars, 0), ball_var(&vars, 1));
            let comps = vec![z1.clone(), &z1 * &z2, &z2 * &z2];
            RationalMap::polynomial("whitney", src, Domain::ball(3), comps)
        }
        "dangelo" => {
            let th = match p1 {
                Some(_) => parse(p1, 0.0, "angle")?,
                None => theta.unwrap_or(std::f64::consts::FRAC_PI_6),
            };
            if !th.is_finite() || p2.is_some() {
                return Err(MapError::BadParameter(format!("dangelo angle `{th}`")));
            }
            let src = Domain::ball(2);
            let vars = src.chart();
            let (z, w) = (ball_var(&vars, 0), ball_var(&vars, 1));
            let (s, c) = th.sin_cos();
            let comps = vec![z.clone(), &w * c, &(&z * &w) * s, &(&w * &w) * s];
            RationalMap::polynomial(format!("dangelo:{th}"), src, Domain::ball(4), comps)
        }
        "scaled" => {
            let c: f64 = parse(p1, 0.5, "scale")?;
            let n: usize = parse(p2, 2, "dimension")?;
            check_dim(n)?;
            if !c.is_finite() {
                return Err(MapError::BadParameter(format!("scale `{c}`")));
            }
            let src = Domain::ball(n);
            let vars = src.chart();
            let comps = (0..n).map(|j| ball_var(&vars, j).scale(Complex64::new(c, 0.0))).collect();
            RationalMap::polynomial(format!("scaled:{c}:{n}"), src, Domain::ball(n), comps)
        }
        _ => Err(MapError::UnknownMap(name.to_string())),
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(MapError::BadParameter("dimension must be positive".into()))
    } else {
        Ok(())
    }
}
