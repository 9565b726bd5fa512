use num_complex::Complex64;

use super::{BoundaryChart, CrError, MapJet, Result};
use crate::geometry::{CrField, CrVectorField};
use crate::jetcalc::TruncatedSeries;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `H = P1 t + P2 t^2 + P3 t^3 + ...` with coefficients in `(z, z̄, u)`.
#[derive(Clone, Debug)]
pub struct BoundaryExpansion {
    pub p1: TruncatedSeries,
    pub p2: TruncatedSeries,
    pub p3: TruncatedSeries,
}

impl BoundaryExpansion {
    pub fn components(&self) -> [&TruncatedSeries; 3] {
        [&self.p1, &self.p2, &self.p3]
    }

    /// Largest coefficient difference, each `P_k` compared up to the common cap.
    pub fn max_abs_diff(&self, other: &BoundaryExpansion) -> Result<f64> {
        let mut d: f64 = 0.0;
        for (a, b) in self.components().into_iter().zip(other.components()) {
            d = d.max(a.max_abs_diff(b)?);
        }
        Ok(d)
    }
}

/// Dot product that accepts empty vectors.
fn pair(a: &[TruncatedSeries], b: &[TruncatedSeries], zero: &TruncatedSeries) -> TruncatedSeries {
    a.iter().zip(b).fold(zero.clone(), |acc, (x, y)| acc + x * y)
}

fn conj_all(a: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    a.iter().map(TruncatedSeries::conj).collect()
}

/// `w`-derivatives of order 0..=3 of every component.
struct WDerivatives {
    f: [Vec<TruncatedSeries>; 4],
    g: [TruncatedSeries; 4],
}

impl WDerivatives {
    fn new(j: &MapJet) -> Result<Self> {
        let w = j.w_index();
        let df = |k: u32| -> Result<Vec<TruncatedSeries>> {
            Ok(j.f().iter().map(|s| s.partial_at(w, k)).collect::<std::result::Result<_, _>>()?)
        };
        let dg = |k: u32| j.g().partial_at(w, k);
        Ok(WDerivatives {
            f: [df(0)?, df(1)?, df(2)?, df(3)?],
            g: [dg(0)?, dg(1)?, dg(2)?, dg(3)?],
        })
    }

    fn fbar(&self, k: usize) -> Vec<TruncatedSeries> {
        conj_all(&self.f[k])
    }
}

/// Expand `H` along the transversal direction by the substitution `w = u + i(t + |z|^2)`.
pub fn expand_h(j: &MapJet) -> Result<BoundaryExpansion> {
    let h = j.h();
    let chart = BoundaryChart::new(j.n);
    let ht = chart.restrict(&h, true)?;
    let p0 = ht.coefficient_of_power("t", 0)?;
    let scale = ht.max_abs_coeff().max(1.0);
    if p0.max_abs_coeff() > 1e-10 * scale {
        return Err(CrError::NotProper(p0.max_abs_coeff()));
    }
    Ok(BoundaryExpansion {
        p1: ht.coefficient_of_power("t", 1)?,
        p2: ht.coefficient_of_power("t", 2)?,
        p3: ht.coefficient_of_power("t", 3)?,
    })
}

/// `P1, P2, P3` from their closed forms in the `w`-derivatives of `f~` and `g`, restricted to the boundary.
pub fn closed_form_p(j: &MapJet) -> Result<BoundaryExpansion> {
    expand_h(j)?;
    let d = WDerivatives::new(j)?;
    let zero = TruncatedSeries::zero(j.vars(), j.cap());
    let p1 = &d.g[1] - &pair(&d.f[1], &d.fbar(0), &zero).scale(2.0 * I);
    let p2 = pair(&d.f[1], &d.fbar(1), &zero) * -2.0;
    let p3 = (&(&d.g[3] * -0.5) + &pair(&d.f[1], &d.fbar(2), &zero).scale(3.0 * I))
        + pair(&d.f[3], &d.fbar(0), &zero).scale(I);
    let p3 = p3 * (1.0 / 3.0);
    let chart = BoundaryChart::new(j.n);
    Ok(BoundaryExpansion {
        p1: chart.restrict(&p1, false)?,
        p2: chart.restrict(&p2, false)?,
        p3: chart.restrict(&p3, false)?,
    })
}

/// The defining residual and the three identities obtained by differentiating it along `T`.
///
/// Each entry is restricted to the boundary; all vanish for a proper jet.
#[derive(Clone, Debug)]
pub struct ChainResiduals {
    /// `g - conj(g) - 2i f~·conj(f~)` itself.
    pub defining: TruncatedSeries,
    pub t1: TruncatedSeries,
    pub t2: TruncatedSeries,
    pub t3: TruncatedSeries,
}

impl ChainResiduals {
    pub fn entries(&self) -> [&TruncatedSeries; 4] {
        [&self.defining, &self.t1, &self.t2, &self.t3]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|s| s.max_abs_coeff()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ChainResiduals) -> Result<f64> {
        let mut d: f64 = 0.0;
        for (a, b) in self.entries().into_iter().zip(other.entries()) {
            d = d.max(a.max_abs_diff(b)?);
        }
        Ok(d)
    }
}

/// Left-hand sides of the first, second and third `T`-derivatives of the defining equation.
pub fn chain_identities(j: &MapJet) -> Result<ChainResiduals> {
    let d = WDerivatives::new(j)?;
    let zero = TruncatedSeries::zero(j.vars(), j.cap());
    let two_i = 2.0 * I;
    // sum_k C(k, i) f_{w^i} · conj(f_{w^{k-i}})
    let leibniz = |k: usize| {
        let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
        (0..=k).fold(zero.clone(), |acc, i| acc + pair(&d.f[i], &d.fbar(k - i), &zero) * binom[k][i])
    };
    let lhs = |k: usize| &(&d.g[k] - &d.g[k].conj()) - &leibniz(k).scale(two_i);
    let chart = BoundaryChart::new(j.n);
    Ok(ChainResiduals {
        defining: chart.restrict(&lhs(0), false)?,
        t1: chart.restrict(&lhs(1), false)?,
        t2: chart.restrict(&lhs(2), false)?,
        t3: chart.restrict(&lhs(3), false)?,
    })
}

/// The same residuals computed as `T^k R / 2^k` with the CR field `T`.
pub fn chain_identities_via_t(j: &MapJet) -> Result<ChainResiduals> {
    let t = CrVectorField::new(CrField::T, j.n)?;
    let r0 = j.h().scale(2.0 * I);
    let r1 = t.apply(&r0)?;
    let r2 = t.apply(&r1)?;
    let r3 = t.apply(&r2)?;
    let chart = BoundaryChart::new(j.n);
    Ok(ChainResiduals {
        defining: chart.restrict(&r0, false)?,
        t1: chart.restrict(&(r1 * 0.5), false)?,
        t2: chart.restrict(&(r2 * 0.25), false)?,
        t3: chart.restrict(&(r3 * 0.125), false)?,
    })
}
