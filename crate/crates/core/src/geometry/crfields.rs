use num_complex::Complex64;

use super::{GeometryError, Result};
use crate::jetcalc::{TruncatedSeries, EXACT_CAP};

/// `L_j = ∂_{z_j} + 2i conj(z_j) ∂_w`, `Lbar_j = ∂_{conj z_j} - 2i z_j ∂_{conj w}`, `T = 2(∂_w + ∂_{conj w})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrField {
    /// 1-based index `j` in `1..n`.
    L(usize),
    Lbar(usize),
    T,
}

/// A CR vector field of `∂H^n` acting as a derivation on polarized series over the Siegel chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrVectorField {
    pub field: CrField,
    pub n: usize,
}

impl CrVectorField {
    pub fn new(field: CrField, n: usize) -> Result<Self> {
        match field {
            CrField::L(j) | CrField::Lbar(j) if j == 0 || j >= n => {
                Err(GeometryError::IndexOutOfRange { index: j, dim: n - 1 })
            }
            _ => Ok(CrVectorField { field, n }),
        }
    }

    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let vars = f.vars();
        let two_i = Complex64::new(0.0, 2.0);
        let out = match self.field {
            CrField::L(j) => {
                let zb = TruncatedSeries::var(vars, EXACT_CAP, &format!("z{j}~"))?;
                f.partial(&format!("z{j}"), 1)? + (zb * f.partial("w", 1)?).scale(two_i)
            }
            CrField::Lbar(j) => {
                let z = TruncatedSeries::var(vars, EXACT_CAP, &format!("z{j}"))?;
                f.partial(&format!("z{j}~"), 1)? - (z * f.partial("w~", 1)?).scale(two_i)
            }
            CrField::T => (f.partial("w", 1)? + f.partial("w~", 1)?) * 2.0,
        };
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcalc::{random_series, VarSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn l_annihilates_t_and_t_differentiates_w() {
        let vars = Arc::new(VarSet::siegel(3));
        let w = TruncatedSeries::var(&vars, 8, "w").unwrap();
        let mut t = (&w - &w.conj()).scale(Complex64::new(0.0, -0.5));
        for j in 1..3 {
            let z = TruncatedSeries::var(&vars, 8, &format!("z{j}")).unwrap();
            t = &t - &(&z * &z.conj());
        }
        for j in 1..3 {
            for f in [CrField::L(j), CrField::Lbar(j)] {
                assert!(CrVectorField::new(f, 3).unwrap().apply(&t).unwrap().is_zero());
            }
        }
        let tw = CrVectorField::new(CrField::T, 3).unwrap().apply(&w).unwrap();
        assert_eq!(tw, TruncatedSeries::constant(&vars, 6, Complex64::new(2.0, 0.0)));
        assert!(CrVectorField::new(CrField::L(3), 3).is_err());
    }

    #[test]
    fn identity_map_defining_residual_is_killed_by_t() {
        let vars = Arc::new(VarSet::siegel(2));
        let z = TruncatedSeries::var(&vars, 8, "z1").unwrap();
        let g = TruncatedSeries::var(&vars, 8, "w").unwrap();
        let r = &g - &g.conj() - (&z * &z.conj()).scale(Complex64::new(0.0, 2.0));
        assert!(CrVectorField::new(CrField::T, 2).unwrap().apply(&r).unwrap().is_zero());
    }

    #[test]
    fn commutator_is_minus_i_delta_t() {
        let vars = Arc::new(VarSet::siegel(3));
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let t = CrVectorField::new(CrField::T, 3).unwrap();
        for _ in 0..10 {
            let f = random_series(&mut rng, &vars, 8, 25);
            let tf = t.apply(&f).unwrap();
            for j in 1..3 {
                for k in 1..3 {
                    let l = CrVectorField::new(CrField::L(j), 3).unwrap();
                    let lb = CrVectorField::new(CrField::Lbar(k), 3).unwrap();
                    let comm = l.apply(&lb.apply(&f).unwrap()).unwrap() - lb.apply(&l.apply(&f).unwrap()).unwrap();
                    let expect = if j == k { tf.scale(Complex64::new(0.0, -1.0)) } else { tf.scale(Complex64::default()) };
                    assert!(comm.max_abs_diff(&expect).unwrap() < 1e-12);
                }
            }
        }
    }
}
