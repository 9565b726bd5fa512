use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{CrError, MapJet, Result};
use crate::geometry::hermitian_eigenvalues;
use crate::jetcalc::{TruncatedSeries, VarSet, EXACT_CAP};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SHAPE_TOL: f64 = 1e-9;

/// Result of checking the normal form `f = z + (i/2) a(z) w + o(3)`, `φ = φ2(z) + o(2)`, `g = w + o(4)`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub is_normal: bool,
    /// First coefficient violating the shape, with its weight.
    pub offending: Option<(u32, String)>,
    /// `a_lk = -2i` times the coefficient of `z_k w` in `f_l`.
    pub a: DMatrix<Complex64>,
    /// `(z̄·a z)|z|^2 - |φ2(z)|^2`, a polarized polynomial of degree 4.
    pub identity_residual: TruncatedSeries,
    pub hermitian_defect: f64,
    pub min_eigenvalue: f64,
}

impl NormalForm {
    /// Shape holds, the quartic identity holds and `a` is Hermitian semi-positive.
    pub fn passes(&self, tol: f64) -> bool {
        self.is_normal
            && self.identity_residual.max_abs_coeff() <= tol
            && self.hermitian_defect <= tol
            && self.min_eigenvalue >= -tol
    }
}

fn mono_label(vars: &VarSet, exps: &[u16]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = &vars.var(i).name;
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub fn normal_form_check(j: &MapJet) -> Result<NormalForm> {
    j.require_cap(4)?;
    let vars = j.vars();
    let m = j.n - 1;
    let w = j.w_index();
    let mut offending: Option<(u32, String)> = None;
    let mut note = |wt: u32, what: String| {
        if offending.as_ref().is_none_or(|(w0, _)| wt < *w0) {
            offending = Some((wt, what));
        }
    };
    let is_zw = |e: &[u16]| e[w] == 1 && e[..m].iter().map(|&x| x as u32).sum::<u32>() == 1;
    for (l, fl) in j.f().iter().enumerate() {
        let name = if l < m { format!("f{}", l + 1) } else { format!("phi{}", l + 1 - m) };
        for (mono, c) in fl.terms() {
            let e = mono.exps();
            let wt = mono.weight();
            let expected = if l < m && wt == 1 && e[l] == 1 { Complex64::new(1.0, 0.0) } else { Complex64::default() };
            let allowed = if l < m {
                wt > 3 || (wt == 3 && is_zw(e))
            } else {
                wt > 2 || (wt == 2 && e[w] == 0)
            };
            if !allowed && (c - expected).norm() > SHAPE_TOL {
                note(wt, format!("{name}: coefficient of {} is {c}", mono_label(vars, e)));
            }
        }
        if l < m {
            let mut e = vec![0u16; vars.len()];
            e[l] = 1;
            if (fl.coeff(&e) - 1.0).norm() > SHAPE_TOL {
                note(1, format!("{name}: coefficient of {} is {}", mono_label(vars, &e), fl.coeff(&e)));
            }
        }
    }
    let gw = j.coeff(j.g(), &[], 1);
    for (mono, c) in j.g().terms() {
        let e = mono.exps();
        let expected = if e[w] == 1 && mono.weight() == 2 { Complex64::new(1.0, 0.0) } else { Complex64::default() };
        if mono.weight() <= 4 && (c - expected).norm() > SHAPE_TOL {
            note(mono.weight(), format!("g: coefficient of {} is {c}", mono_label(vars, e)));
        }
    }
    if (gw - 1.0).norm() > SHAPE_TOL {
        note(2, format!("g: coefficient of w is {gw}"));
    }

    let mut a = DMatrix::zeros(m, m);
    for l in 0..m.min(j.f().len()) {
        for k in 0..m {
            let mut z = vec![0u16; m];
            z[k] = 1;
            a[(l, k)] = -2.0 * I * j.coeff(&j.f()[l], &z, 1);
        }
    }
    let identity_residual = identity_24(j, &a);
    let hermitian_defect = (&a - a.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let min_eigenvalue = if m == 0 {
        0.0
    } else {
        hermitian_eigenvalues(&((&a + a.adjoint()) * Complex64::new(0.5, 0.0)))[0]
    };
    Ok(NormalForm { is_normal: offending.is_none(), offending, a, identity_residual, hermitian_defect, min_eigenvalue })
}

/// `(z̄·a z)|z|^2 - |φ2(z)|^2` with `φ2` the quadratic part of the trailing components.
fn identity_24(j: &MapJet, a: &DMatrix<Complex64>) -> TruncatedSeries {
    let vars = j.vars();
    let m = j.n - 1;
    let h = vars.holomorphic_count();
    let var = |i: usize| TruncatedSeries::var_at(vars, EXACT_CAP, i);
    let mut za = TruncatedSeries::zero(vars, EXACT_CAP);
    let mut r = TruncatedSeries::zero(vars, EXACT_CAP);
    for l in 0..m {
        r = r + var(l) * var(h + l);
        for k in 0..m {
            za = za + (var(h + l) * var(k)).scale(a[(l, k)]);
        }
    }
    let mut out = za * r;
    let w = j.w_index();
    for phi in j.f().iter().skip(m) {
        let quad = phi.filter(|e| e[w] == 0 && e[..m].iter().map(|&x| x as u32).sum::<u32>() == 2);
        let quad = TruncatedSeries::polynomial(vars, quad.terms().map(|(mo, c)| (mo.exps().to_vec(), c)));
        out = out - &quad * &quad.conj();
    }
    out
}

/// Apply the target automorphism `(Z, W) -> ((Z + a W)/q, W/q)` with
/// `q = 1 - 2i Z·ā - (r + i|a|^2) W`.
fn apply_tau(j: &MapJet, a: &[Complex64], r: f64) -> Result<MapJet> {
    let vars = j.vars();
    let cap = j.cap();
    let a2: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let mut q = TruncatedSeries::one(vars, cap) - j.g().scale(Complex64::new(r, a2));
    for (fl, al) in j.f().iter().zip(a) {
        q = q - fl.scale(2.0 * I * al.conj());
    }
    let qi = q.reciprocal()?;
    let f = j.f().iter().zip(a).map(|(fl, al)| (fl + &j.g().scale(*al)).try_mul(&qi)).collect::<std::result::Result<_, _>>()?;
    let g = j.g().try_mul(&qi)?;
    MapJet::new(f, g)
}

/// Unitary `W` with `W L = sqrt(λ) [I; 0]` for `L` with `L* L = λ I`, by Gram–Schmidt completion.
fn rotation(l: &DMatrix<Complex64>, lambda: f64) -> Result<DMatrix<Complex64>> {
    let (rows, m) = l.shape();
    let gram = l.adjoint() * l;
    let dev = (&gram - DMatrix::<Complex64>::identity(m, m) * Complex64::new(lambda, 0.0))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    if dev > 1e-8 * lambda.max(1.0) {
        return Err(CrError::NormalizationFailed { order: 1, reason: format!("linear part is not conformal (defect {dev:e})") });
    }
    let mut basis: Vec<DVector<Complex64>> = (0..m).map(|k| l.column(k).map(|c| c / lambda.sqrt())).collect();
    for e in 0..rows {
        if basis.len() == rows {
            break;
        }
        let mut v = DVector::from_fn(rows, |i, _| if i == e { Complex64::new(1.0, 0.0) } else { Complex64::default() });
        for b in &basis {
            let p = b.dotc(&v);
            v -= b * p;
        }
        let nrm = v.norm();
        if nrm > 1e-8 {
            basis.push(v / Complex64::new(nrm, 0.0));
        }
    }
    let u = DMatrix::from_columns(&basis);
    Ok(u.adjoint())
}

/// Bring a proper jet to normal form by target automorphisms only: translation,
/// dilation, unitary rotation and the isotropy maps `τ_{a,0}`, `τ_{0,r}`.
///
/// The output is handed to [`normal_form_check`] before it is returned.
pub fn normalize_jet(j: &MapJet) -> Result<MapJet> {
    j.require_cap(4)?;
    let m = j.n - 1;
    let cap = j.cap();
    let mut cur = j.clone();
    if cur.f().iter().chain(std::iter::once(cur.g())).any(|s| s.constant_term().norm() > 0.0) {
        cur = cur.recentred()?;
    }
    let lambda = cur.coeff(cur.g(), &[], 1);
    if lambda.re <= 1e-12 || lambda.im.abs() > 1e-9 * lambda.norm() {
        return Err(CrError::NormalizationFailed { order: 2, reason: format!("g_w(0) = {lambda} is not positive real") });
    }
    let lambda = lambda.re;
    let rows = cur.f().len();
    let l = DMatrix::from_fn(rows, m, |r, k| {
        let mut z = vec![0u16; m];
        z[k] = 1;
        cur.coeff(&cur.f()[r], &z, 0)
    });
    let rot = rotation(&l, lambda)?;
    let s = 1.0 / lambda.sqrt();
    let vars = cur.vars().clone();
    let f: Vec<TruncatedSeries> = (0..rows)
        .map(|r| (0..rows).fold(TruncatedSeries::zero(&vars, cap), |acc, c| acc + cur.f()[c].scale(rot[(r, c)] * s)))
        .collect();
    cur = MapJet::new(f, cur.g() * (1.0 / lambda))?;

    let a: Vec<Complex64> = cur.f().iter().map(|fl| -cur.coeff(fl, &vec![0; m], 1)).collect();
    if a.iter().any(|c| c.norm() > 0.0) {
        cur = apply_tau(&cur, &a, 0.0)?;
    }
    let r = -cur.coeff(cur.g(), &[], 2).re;
    if r != 0.0 {
        cur = apply_tau(&cur, &vec![Complex64::default(); rows], r)?;
    }
    let nf = normal_form_check(&cur)?;
    if !nf.is_normal {
        let (order, reason) = nf.offending.unwrap();
        return Err(CrError::NormalizationFailed { order, reason });
    }
    Ok(cur)
}
