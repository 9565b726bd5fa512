//! Jets of proper maps between Siegel domains at boundary points: the
//! expansion of `H = Im g - |f~|^2` in the transversal variable `t`, the
//! chain identities obtained by differentiating the defining equation, the
//! normal form at the origin and the values of `X` there, and the
//! conformal-factor residuals of isometric systems.

mod conformal;
mod expansion;
mod normal;
mod origin;

pub use conformal::{conformal_residual, lambda_deficit_order, weighted_a_sum, DeficitOrder};
pub use expansion::{chain_identities, chain_identities_via_t, closed_form_p, expand_h, BoundaryExpansion, ChainResiduals};
pub use normal::{normal_form_check, normalize_jet, NormalForm};
pub use origin::{x_origin_closed, x_origin_extraction, XTriple};

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{DomainPoint, GeometryError, HeisenbergTranslation, Model};
use crate::jetcalc::{polarize, SeriesError, TruncatedSeries, VarSet, EXACT_CAP};
use crate::maps::{MapError, RationalMap};

/// Default weighted truncation order of a jet.
pub const DEFAULT_CAP: u32 = 6;
/// Truncation order needed by [`x_origin_extraction`].
pub const EXTRACTION_CAP: u32 = 8;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrError {
    #[error("jet is not proper: boundary residual {0:e}")]
    NotProper(f64),
    #[error("weighted cap {got} is below the {needed} this operation needs")]
    CapTooSmall { needed: u32, got: u32 },
    #[error("jet is not in normal form: {0}")]
    NotNormalized(String),
    #[error("normalization failed at weight {order}: {reason}")]
    NormalizationFailed { order: u32, reason: String },
    #[error("P1 vanishes at the base point")]
    DegenerateP1,
    #[error("the system needs at least one map and matching factors")]
    EmptySystem,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, CrError>;

/// Truncated Taylor jet `(f~, g)` of a map `H^n -> H^N` at the origin of the Siegel chart.
///
/// Components are holomorphic series over the polarized chart `z1.., w` plus
/// conjugates; `f~` has `N - 1` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct MapJet {
    pub n: usize,
    pub big_n: usize,
    vars: Arc<VarSet>,
    f: Vec<TruncatedSeries>,
    g: TruncatedSeries,
}

impl MapJet {
    pub fn new(f: Vec<TruncatedSeries>, g: TruncatedSeries) -> Result<Self> {
        let vars = Arc::clone(g.vars());
        let h = vars.holomorphic_count();
        for s in f.iter().chain(std::iter::once(&g)) {
            if **s.vars() != *vars || s.terms().any(|(m, _)| m.exps()[h..].iter().any(|&e| e > 0)) {
                return Err(MapError::NotHolomorphic.into());
            }
        }
        Ok(MapJet { n: h, big_n: f.len() + 1, vars, f, g })
    }

    /// `(z, w)` itself.
    pub fn identity(n: usize, cap: u32) -> Self {
        let vars = Arc::new(VarSet::siegel(n));
        let f = (0..n - 1).map(|j| TruncatedSeries::var_at(&vars, cap, j)).collect();
        let g = TruncatedSeries::var_at(&vars, cap, n - 1);
        MapJet { n, big_n: n, vars, f, g }
    }

    /// Raw Taylor jet of a Siegel map at the chart origin, without recentring.
    pub fn from_map(map: &RationalMap, cap: u32) -> Result<Self> {
        let vars = map.vars();
        let ids: Vec<TruncatedSeries> = (0..vars.len()).map(|i| TruncatedSeries::var_at(vars, EXACT_CAP, i)).collect();
        Self::compose_map(map, &ids, cap)
    }

    fn compose_map(map: &RationalMap, inner: &[TruncatedSeries], cap: u32) -> Result<Self> {
        if map.source.model != Model::Siegel || map.target.model != Model::Siegel {
            return Err(MapError::Representation("jets need a Siegel-to-Siegel map".into()).into());
        }
        let den = map.denominator().compose(inner)?;
        if den.constant_term().norm() < 1e-14 {
            return Err(MapError::Pole.into());
        }
        let recip = den.with_cap(cap).reciprocal()?;
        let mut comps = Vec::with_capacity(map.target.dim);
        for num in map.numerators() {
            comps.push(num.compose(inner)?.with_cap(cap).try_mul(&recip)?);
        }
        let g = comps.pop().expect("target dimension >= 1");
        Self::new(comps, g)
    }

    /// Jet of `τ ∘ F ∘ σ_p` where `σ_p` moves the origin to `p` and `τ` moves `F(p)` back to the origin.
    pub fn at_boundary(map: &RationalMap, p: &DomainPoint, cap: u32) -> Result<Self> {
        let sigma = HeisenbergTranslation::new(p)?;
        let images = sigma.polynomial(map.vars())?;
        Self::compose_map(map, &polarize(&images), cap)?.recentred()
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn f(&self) -> &[TruncatedSeries] {
        &self.f
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn cap(&self) -> u32 {
        self.f.iter().map(TruncatedSeries::cap).chain(std::iter::once(self.g.cap())).min().unwrap()
    }

    pub fn with_cap(&self, cap: u32) -> Self {
        MapJet {
            f: self.f.iter().map(|s| s.with_cap(cap)).collect(),
            g: self.g.with_cap(cap),
            ..self.clone()
        }
    }

    pub(crate) fn require_cap(&self, needed: u32) -> Result<()> {
        let got = self.cap();
        if got < needed {
            return Err(CrError::CapTooSmall { needed, got });
        }
        Ok(())
    }

    /// Index of `w` among the chart variables.
    pub(crate) fn w_index(&self) -> usize {
        self.n - 1
    }

    /// Coefficient of `z^alpha w^k` in a component.
    pub(crate) fn coeff(&self, s: &TruncatedSeries, z: &[u16], k: u16) -> Complex64 {
        let mut e = vec![0u16; self.vars.len()];
        e[..z.len()].copy_from_slice(z);
        e[self.w_index()] = k;
        s.coeff(&e)
    }

    /// Translate the target so that the image of the origin is the origin.
    pub(crate) fn recentred(self) -> Result<Self> {
        let zq: Vec<Complex64> = self.f.iter().map(TruncatedSeries::constant_term).collect();
        let wq = self.g.constant_term();
        let target = DomainPoint::siegel(&zq, wq);
        let off = target.defining_value();
        if off.abs() > 1e-9 * (1.0 + wq.norm()) {
            return Err(CrError::NotProper(off.abs()));
        }
        let vars = &self.vars;
        let cap = self.cap();
        let mut g = &self.g - &TruncatedSeries::constant(vars, cap, wq.conj());
        for (fl, z) in self.f.iter().zip(&zq) {
            g = g - fl.scale(2.0 * I * z.conj());
        }
        let f = self.f.iter().zip(&zq).map(|(fl, z)| fl - &TruncatedSeries::constant(vars, cap, *z)).collect();
        Ok(MapJet { f, g, ..self })
    }

    /// `H = Im g - |f~|^2` in polarized form.
    pub fn h(&self) -> TruncatedSeries {
        let mut h = (&self.g - &self.g.conj()).scale(Complex64::new(0.0, -0.5));
        for fl in &self.f {
            h = h - fl * &fl.conj();
        }
        h
    }

    /// `g - conj(g) - 2i f~·conj(f~)` restricted to the boundary, a series in `(z, z̄, u)`.
    pub fn defining_residual(&self) -> Result<TruncatedSeries> {
        let r = self.h().scale(Complex64::new(0.0, 2.0));
        BoundaryChart::new(self.n).restrict(&r, false)
    }
}

/// Variables `z1..z_{n-1}`, conjugates, `u`, `t` and the substitution
/// `w = u + i(t + |z|^2)`, `conj w = u - i(t + |z|^2)`.
pub(crate) struct BoundaryChart {
    pub vars: Arc<VarSet>,
    with_t: Vec<TruncatedSeries>,
    without_t: Vec<TruncatedSeries>,
}

impl BoundaryChart {
    pub fn new(n: usize) -> Self {
        let m = n - 1;
        let mut b = VarSet::builder();
        for j in 1..n {
            b = b.z(&format!("z{j}"));
        }
        let vars = Arc::new(b.real("u", 2).real("t", 2).build());
        let v = |i: usize| TruncatedSeries::var_at(&vars, EXACT_CAP, i);
        let mut r = TruncatedSeries::zero(&vars, EXACT_CAP);
        for j in 0..m {
            r = r + v(j) * v(m + j);
        }
        let (u, t) = (v(2 * m), v(2 * m + 1));
        let build = |s: TruncatedSeries| {
            let mut inner: Vec<TruncatedSeries> = (0..m).map(v).collect();
            inner.push(&u + &s.scale(I));
            inner.extend((m..2 * m).map(v));
            inner.push(&u - &s.scale(I));
            inner
        };
        let with_t = build(&r + &t);
        let without_t = build(r);
        BoundaryChart { vars, with_t, without_t }
    }

    pub fn restrict(&self, s: &TruncatedSeries, with_t: bool) -> Result<TruncatedSeries> {
        Ok(s.compose(if with_t { &self.with_t } else { &self.without_t })?)
    }
}
