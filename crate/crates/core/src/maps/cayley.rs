use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{Domain, MapError, RationalMap, Result};
use crate::geometry::{DomainPoint, Model};
use crate::jetcalc::{TruncatedSeries, VarSet, EXACT_CAP};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A unitary `U` with `U q = e_N` for a unit vector `q` (Householder reflection then a phase).
pub fn target_alignment(q: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let big = q.len();
    let norm = q.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(MapError::Representation(format!("F(e_n) has norm {norm}, not on the target sphere")));
    }
    let last = q[big - 1];
    let omega = if last.norm() > 1e-14 { last / last.norm() } else { Complex64::new(1.0, 0.0) };
    let mut v = DVector::from_column_slice(q);
    v[big - 1] -= omega;
    let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let mut u = DMatrix::identity(big, big);
    if vv > 1e-28 {
        u -= (&v * v.adjoint()) * Complex64::new(2.0 / vv, 0.0);
    }
    for k in 0..big {
        u[(big - 1, k)] *= omega.conj();
    }
    Ok(u)
}

/// Replace each ball variable by its Cayley image, cleared of the common denominator `b^deg`.
fn homogenize(p: &TruncatedSeries, a: &[TruncatedSeries], b: &TruncatedSeries, deg: u32) -> TruncatedSeries {
    let target = b.vars();
    let n = a.len();
    let mut apow: Vec<Vec<TruncatedSeries>> = a.iter().map(|s| vec![TruncatedSeries::one(target, EXACT_CAP), s.clone()]).collect();
    let mut bpow = vec![TruncatedSeries::one(target, EXACT_CAP), b.clone()];
    let mut out = TruncatedSeries::zero(target, EXACT_CAP);
    for (m, c) in p.terms() {
        let exps = &m.exps()[..n];
        let total: u32 = exps.iter().map(|&e| e as u32).sum();
        let mut term = TruncatedSeries::constant(target, EXACT_CAP, c);
        for (j, &e) in exps.iter().enumerate() {
            while apow[j].len() <= e as usize {
                let next = apow[j].last().unwrap() * &apow[j][1];
                apow[j].push(next);
            }
            term = &term * &apow[j][e as usize];
        }
        let k = (deg - total) as usize;
        while bpow.len() <= k {
            let next = bpow.last().unwrap() * &bpow[1];
            bpow.push(next);
        }
        out = out + &term * &bpow[k];
    }
    out
}

/// `ρ_N^{-1} ∘ U ∘ F ∘ ρ_n` as a Siegel-to-Siegel rational map.
///
/// `U` is the unitary of [`target_alignment`] sending `F(e_n)` to `e_N`, so
/// that the origin of the Siegel chart maps to the origin. Numerators and the
/// denominator are left unreduced.
pub fn cayley_conjugate(f: &RationalMap) -> Result<RationalMap> {
    if f.source.model != Model::Ball || f.target.model != Model::Ball {
        return Err(MapError::NotBallMap);
    }
    let (n, big) = (f.source.dim, f.target.dim);
    let mut en = vec![Complex64::default(); n];
    en[n - 1] = Complex64::new(1.0, 0.0);
    let q = f.eval(&DomainPoint::ball(en)).map_err(|e| match e {
        MapError::Pole => MapError::Representation("F has a pole at e_n".into()),
        other => other,
    })?;
    let u = target_alignment(&q)?;
    let vars = std::sync::Arc::new(VarSet::siegel(n));
    let var = |i: usize| TruncatedSeries::var_at(&vars, EXACT_CAP, i);
    let one = TruncatedSeries::one(&vars, EXACT_CAP);
    let w = var(n - 1);
    let iw = w.scale(I);
    let b = &one - &iw;
    let a: Vec<TruncatedSeries> = (0..n).map(|j| if j + 1 < n { var(j) * 2.0 } else { &one + &iw }).collect();
    let deg = f.degree();
    let rotated: Vec<TruncatedSeries> = (0..big)
        .map(|l| {
            (0..big).fold(TruncatedSeries::zero(f.vars(), EXACT_CAP), |acc, m| acc + f.numerators()[m].scale(u[(l, m)]))
        })
        .collect();
    let p: Vec<TruncatedSeries> = rotated.iter().map(|r| homogenize(r, &a, &b, deg)).collect();
    let e = homogenize(f.denominator(), &a, &b, deg);
    let den = &e + &p[big - 1];
    if den.constant_term().norm() < 1e-12 {
        return Err(MapError::Representation("conjugated denominator vanishes at the origin".into()));
    }
    let mut nums: Vec<TruncatedSeries> = p[..big - 1].to_vec();
    nums.push((&e - &p[big - 1]).scale(I));
    RationalMap::new(format!("{}-siegel", f.name), Domain::siegel(n), Domain::siegel(big), nums, den)
}

/// `(Im g - |f~|^2) |den|^2` restricted to `w = u + i|z|^2`, as an exact polynomial in `(z, z̄, u)`.
///
/// It vanishes identically exactly when the Siegel map sends the boundary to the boundary.
pub fn siegel_defining_residual(f: &RationalMap) -> Result<TruncatedSeries> {
    if f.source.model != Model::Siegel || f.target.model != Model::Siegel {
        return Err(MapError::Representation("siegel_defining_residual needs a Siegel map".into()));
    }
    let n = f.source.dim;
    let big = f.target.dim;
    let den = f.denominator();
    let g = &f.numerators()[big - 1];
    let mut h = (g * &den.conj() - &g.conj() * den).scale(Complex64::new(0.0, -0.5));
    for l in &f.numerators()[..big - 1] {
        h = h - l * &l.conj();
    }
    let mut b = VarSet::builder();
    for j in 1..n {
        b = b.z(&format!("z{j}"));
    }
    let bvars = std::sync::Arc::new(b.real("u", 2).build());
    let zv = |j: usize| TruncatedSeries::var_at(&bvars, EXACT_CAP, j);
    let m = n - 1;
    let mut r = TruncatedSeries::zero(&bvars, EXACT_CAP);
    for j in 0..m {
        r = r + zv(j) * zv(m + j);
    }
    let u = zv(2 * m);
    let w = &u + &r.scale(I);
    let wb = &u - &r.scale(I);
    let mut inner: Vec<TruncatedSeries> = (0..m).map(zv).collect();
    inner.push(w);
    inner.extend((0..m).map(|j| zv(m + j)));
    inner.push(wb);
    Ok(h.compose(&inner)?)
}
