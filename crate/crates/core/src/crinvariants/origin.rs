use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{normal_form_check, BoundaryChart, CrError, MapJet, Result, EXTRACTION_CAP};
use crate::jetcalc::{TruncatedSeries, EXACT_CAP};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `X(0)` split into its `dz⊗dz̄`, `dz⊗dw̄` and `dw⊗dw̄` parts.
#[derive(Clone, Debug, PartialEq)]
pub struct XTriple {
    pub xjk: DMatrix<Complex64>,
    pub xjn: DVector<Complex64>,
    pub xnn: Complex64,
}

impl XTriple {
    fn from_matrix(x: &DMatrix<Complex64>) -> Self {
        let m = x.nrows() - 1;
        XTriple {
            xjk: x.view((0, 0), (m, m)).into_owned(),
            xjn: DVector::from_fn(m, |j, _| x[(j, m)]),
            xnn: x[(m, m)],
        }
    }

    pub fn max_abs_diff(&self, other: &XTriple) -> f64 {
        let a = (&self.xjk - &other.xjk).iter().map(|c| c.norm()).fold(0.0, f64::max);
        let b = (&self.xjn - &other.xjn).iter().map(|c| c.norm()).fold(0.0, f64::max);
        a.max(b).max((self.xnn - other.xnn).norm())
    }

    pub fn max_abs(&self) -> f64 {
        let a = self.xjk.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let b = self.xjn.iter().map(|c| c.norm()).fold(0.0, f64::max);
        a.max(b).max(self.xnn.norm())
    }

    /// Largest `|X_jn(0)|`; zero means the cross terms are not exercised.
    pub fn cross_term_size(&self) -> f64 {
        self.xjn.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `X(0)` of a normalized jet from the coefficients of `f` and `g` at the origin.
pub fn x_origin_closed(j: &MapJet) -> Result<XTriple> {
    let nf = normal_form_check(j)?;
    if !nf.is_normal {
        return Err(CrError::NotNormalized(nf.offending.map(|o| o.1).unwrap_or_default()));
    }
    let m = j.n - 1;
    let xjk = nf.a.transpose();
    let xjn = DVector::from_fn(m, |l, _| {
        let mut z = vec![0u16; m];
        z[l] = 1;
        // (f_j)_{ww}(0) = 2 coeff(w^2), g_{z_j ww}(0) = 2 coeff(z_j w^2)
        let fww = 2.0 * j.coeff(&j.f()[l], &vec![0; m], 2);
        let gzww = 2.0 * j.coeff(j.g(), &z, 2);
        0.75 * I * fww.conj() + gzww / 8.0
    });
    let xnn = j.coeff(j.g(), &vec![0; m], 3);
    Ok(XTriple { xjk, xjn, xnn })
}

/// `X(0)` from the `t^2` coefficient of `H^2 X` at `z = u = 0`, divided by `P1(0)^2`.
///
/// `X = ∂∂̄(-log t) - ∂∂̄(-log H)`, so `H^2 X = (H/t)^2 (t_a t_b̄ - t t_{ab̄}) - (H_a H_b̄ - H H_{ab̄})`.
/// Works for any jet with `F(0) = 0`; normalization is not used.
pub fn x_origin_extraction(j: &MapJet) -> Result<XTriple> {
    j.require_cap(EXTRACTION_CAP)?;
    let n = j.n;
    let vars = j.vars();
    let h = j.h();
    let var = |i: usize| TruncatedSeries::var_at(vars, EXACT_CAP, i);
    let w = j.w_index();
    let mut t = (var(w) - var(n + w)).scale(Complex64::new(0.0, -0.5));
    for k in 0..n - 1 {
        t = t - var(k) * var(n + k);
    }
    let chart = BoundaryChart::new(n);
    let ht = chart.restrict(&h, true)?;
    let t_index = chart.vars.len() - 1;
    let p0 = ht.filter(|e| e[t_index] == 0).max_abs_coeff();
    if p0 > 1e-10 * ht.max_abs_coeff().max(1.0) {
        return Err(CrError::NotProper(p0));
    }
    let ratio = ht.filter(|e| e[t_index] > 0).divide_by_power("t", 1)?;
    let p10 = ratio.constant_term();
    if p10.norm() < 1e-12 {
        return Err(CrError::DegenerateP1);
    }
    let ratio2 = &ratio * &ratio;
    let d = |s: &TruncatedSeries, i: usize| s.partial_at(i, 1);
    let mut x = DMatrix::zeros(n, n);
    for a in 0..n {
        let (ta, ha) = (d(&t, a)?, d(&h, a)?);
        for b in 0..n {
            let (tb, hb) = (d(&t, n + b)?, d(&h, n + b)?);
            let tab = d(&ta, n + b)?;
            let hab = d(&ha, n + b)?;
            let model = &ta * &tb - &t * &tab;
            let image = &ha * &hb - &h * &hab;
            let lhs = ratio2.try_mul(&chart.restrict(&model, true)?)? - chart.restrict(&image, true)?;
            x[(a, b)] = lhs.coefficient_of_power("t", 2)?.constant_term() / (p10 * p10);
        }
    }
    Ok(XTriple::from_matrix(&x))
}
