//! Sparse truncated multivariate power series in polarized variables.
//!
//! `z`-type variables have weight 1 and `w`-type variables weight 2; a
//! conjugate carries the weight of its base variable. Real auxiliary
//! variables (`u`, `t`) carry an explicit weight. Series are immutable values.

pub mod oracle;
mod series;
mod vars;

pub use series::{dot, kind_label, norm_sq, polarize, Result, SeriesError, TruncatedSeries, EXACT_CAP, HARD_ZERO};
pub use vars::{Monomial, Var, VarKind, VarSet, VarSetBuilder};

use num_complex::Complex64;
use rand::Rng;
use std::sync::Arc;

/// Random sparse series with `terms` monomials of weight <= cap and coefficients in the unit box.
pub fn random_series<R: Rng>(rng: &mut R, vars: &Arc<VarSet>, cap: u32, terms: usize) -> TruncatedSeries {
    let mut out = Vec::with_capacity(terms);
    let n = vars.len();
    while out.len() < terms {
        let mut exps = vec![0u16; n];
        let mut budget = rng.gen_range(0..=cap) as i64;
        for _ in 0..(2 * n) {
            let i = rng.gen_range(0..n);
            let w = vars.weight(i) as i64;
            if w <= budget && rng.gen_bool(0.7) {
                exps[i] += 1;
                budget -= w;
            }
        }
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        out.push((exps, c));
    }
    TruncatedSeries::from_terms(vars, cap, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zvars() -> Arc<VarSet> {
        Arc::new(VarSet::builder().z("z").build())
    }

    fn zw() -> Arc<VarSet> {
        Arc::new(VarSet::siegel(2))
    }

    // Naive oracles: plain term lists with no ordering or truncation tricks.
    type Terms = Vec<(Vec<u16>, Complex64)>;

    fn to_terms(s: &TruncatedSeries) -> Terms {
        s.terms().map(|(m, c)| (m.exps().to_vec(), c)).collect()
    }

    fn weight(vars: &VarSet, e: &[u16]) -> u32 {
        e.iter().enumerate().map(|(i, &x)| x as u32 * vars.weight(i)).sum()
    }

    fn merge_oracle(a: &Terms, b: &Terms) -> HashMap<Vec<u16>, Complex64> {
        let mut all: Terms = a.iter().chain(b.iter()).cloned().collect();
        all.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: HashMap<Vec<u16>, Complex64> = HashMap::new();
        for (e, c) in all {
            *out.entry(e).or_default() += c;
        }
        out
    }

    fn convolution_oracle(vars: &VarSet, cap: u32, a: &Terms, b: &Terms) -> HashMap<Vec<u16>, Complex64> {
        let mut out: HashMap<Vec<u16>, Complex64> = HashMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if weight(vars, &e) <= cap {
                    *out.entry(e).or_default() += ca * cb;
                }
            }
        }
        out
    }

    fn max_rel_diff(s: &TruncatedSeries, o: &HashMap<Vec<u16>, Complex64>) -> f64 {
        let scale = o.values().map(|c| c.norm()).fold(1e-300, f64::max);
        let mut worst: f64 = 0.0;
        for (e, c) in o {
            worst = worst.max((s.coeff(e) - c).norm() / scale);
        }
        for (m, c) in s.terms() {
            let oc = o.get(m.exps()).copied().unwrap_or_default();
            worst = worst.max((c - oc).norm() / scale);
        }
        worst
    }

    #[test]
    fn add_cancels_and_has_identity() {
        let v = zvars();
        let one = TruncatedSeries::one(&v, 4);
        let z = TruncatedSeries::var(&v, 4, "z").unwrap();
        let s = (&one + &z) + (&one - &z);
        assert_eq!(s, TruncatedSeries::constant(&v, 4, c(2.0, 0.0)));
        let a = &one + &z;
        assert_eq!(&a + &TruncatedSeries::zero(&v, 4), a);
    }

    #[test]
    fn add_matches_merge_oracle() {
        let v = Arc::new(VarSet::builder().z("a").z("b").w("w").build());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..25 {
            let a = random_series(&mut rng, &v, 6, 12);
            let b = random_series(&mut rng, &v, 6, 12);
            let o = merge_oracle(&to_terms(&a), &to_terms(&b));
            assert!(max_rel_diff(&(&a + &b), &o) < 1e-15);
        }
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let a = TruncatedSeries::one(&zvars(), 3);
        let b = TruncatedSeries::one(&zw(), 3);
        assert!(matches!(a.try_add(&b), Err(SeriesError::VariableMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(SeriesError::VariableMismatch { .. })));
    }

    #[test]
    fn product_examples() {
        let v = zvars();
        let one = TruncatedSeries::one(&v, 4);
        let z = TruncatedSeries::var(&v, 4, "z").unwrap();
        let p = (&one + &z) * (&one - &z);
        let expect = &one - &(&z * &z);
        assert_eq!(p, expect);

        let v = zw();
        let z = TruncatedSeries::var(&v, 2, "z1").unwrap();
        let w = TruncatedSeries::var(&v, 2, "w").unwrap();
        assert!((&z * &w).is_zero());
    }

    #[test]
    fn product_matches_convolution_oracle() {
        let v = Arc::new(VarSet::builder().z("a").z("b").w("w").build());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..25 {
            let a = random_series(&mut rng, &v, 8, 15);
            let b = random_series(&mut rng, &v, 8, 15);
            let o = convolution_oracle(&v, 8, &to_terms(&a), &to_terms(&b));
            assert!(max_rel_diff(&(&a * &b), &o) < 1e-13);
        }
    }

    #[test]
    fn reciprocal_examples() {
        let v = zvars();
        let z = TruncatedSeries::var(&v, 4, "z").unwrap();
        let r = (TruncatedSeries::one(&v, 4) - z).reciprocal().unwrap();
        let geo = TruncatedSeries::from_terms(&v, 4, (0..=4).map(|k| (vec![k, 0], c(1.0, 0.0))));
        assert!(r.max_abs_diff(&geo).unwrap() < 1e-15);

        let half = TruncatedSeries::constant(&v, 4, c(2.0, 0.0)).reciprocal().unwrap();
        assert_eq!(half.constant_term(), c(0.5, 0.0));
        assert_eq!(half.len(), 1);
    }

    #[test]
    fn reciprocal_errors() {
        let v = zvars();
        let z = TruncatedSeries::var(&v, 4, "z").unwrap();
        assert_eq!(z.reciprocal(), Err(SeriesError::NonUnit));
        let p = TruncatedSeries::polynomial(&v, [(vec![0, 0], c(1.0, 0.0))]);
        assert_eq!(p.reciprocal(), Err(SeriesError::UnboundedCap));
    }

    #[test]
    fn reciprocal_round_trip() {
        let v = Arc::new(VarSet::builder().z("a").w("w").build());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut a = random_series(&mut rng, &v, 6, 10);
            a = &a + &TruncatedSeries::constant(&v, 6, c(1.5, -0.5));
            let back = &a * &a.reciprocal().unwrap();
            assert!(back.max_abs_diff(&TruncatedSeries::one(&v, 6)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn compose_identity_returns_inner() {
        let v = zw();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_series(&mut rng, &v, 6, 12);
        let ids: Vec<_> = (0..v.len()).map(|i| TruncatedSeries::var_at(&v, 6, i)).collect();
        assert!(a.compose(&ids).unwrap().max_abs_diff(&a).unwrap() < 1e-15);
    }

    #[test]
    fn compose_geometric_series_with_weighted_sum() {
        let x = zvars();
        let xs = TruncatedSeries::var(&x, 2, "z").unwrap();
        let outer = (TruncatedSeries::one(&x, 2) - xs).reciprocal().unwrap();
        // the outer also has a conjugate slot; feed it zero
        let v = zw();
        let z = TruncatedSeries::var(&v, 2, "z1").unwrap();
        let w = TruncatedSeries::var(&v, 2, "w").unwrap();
        let r = outer.compose(&[&z + &w, TruncatedSeries::zero(&v, 2)]).unwrap();
        let expect = TruncatedSeries::one(&v, 2) + &z + &(&z * &z) + &w;
        assert_eq!(r.cap(), 2);
        assert!(r.max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn compose_rejects_constants_into_truncated_outer() {
        let x = zvars();
        let xs = TruncatedSeries::var(&x, 3, "z").unwrap();
        let outer = (TruncatedSeries::one(&x, 3) - xs).reciprocal().unwrap();
        let shifted = TruncatedSeries::constant(&x, 3, c(0.5, 0.0));
        let err = outer.compose(&[shifted.clone(), TruncatedSeries::zero(&x, 3)]);
        assert!(matches!(err, Err(SeriesError::InvalidSubstitution { slot: 0, .. })));
        // exact polynomials accept shifted centres
        let p = TruncatedSeries::polynomial(&x, [(vec![2, 0], c(1.0, 0.0))]);
        let r = p.compose(&[shifted, TruncatedSeries::zero(&x, 3)]).unwrap();
        assert_eq!(r.constant_term(), c(0.25, 0.0));
        assert!(matches!(
            p.compose(&[TruncatedSeries::zero(&x, 3)]),
            Err(SeriesError::Arity { expected: 2, got: 1 })
        ));
    }

    // Cayley jet at (0, i) and inverse jet at the centre, both recentred to vanish at 0.
    #[test]
    fn cayley_jet_round_trip() {
        let cap = 5;
        let src = Arc::new(VarSet::builder().z("z").w("w").build());
        let ball = Arc::new(VarSet::builder().z("zeta").z("eta").build());
        let i = c(0.0, 1.0);
        let one = TruncatedSeries::one(&src, cap);
        let z = TruncatedSeries::var(&src, cap, "z").unwrap();
        let w = TruncatedSeries::var(&src, cap, "w").unwrap();
        // w -> i + w : 1 - i(i + w) = 2 - i w
        let den = (&one * c(2.0, 0.0)) - &w * i;
        let rden = den.reciprocal().unwrap();
        let zeta = &z * &rden * c(2.0, 0.0);
        let eta = &w * &rden * i; // (1 + i(i+w)) = i w
        let bone = TruncatedSeries::one(&ball, cap);
        let bz = TruncatedSeries::var(&ball, cap, "zeta").unwrap();
        let be = TruncatedSeries::var(&ball, cap, "eta").unwrap();
        let r1 = (&bone + &be).reciprocal().unwrap();
        let inv_z = &bz * &r1;
        let inv_w = (&bone - &be) * &r1 * i - &bone * i;
        let zero = TruncatedSeries::zero(&src, cap);
        let inner = [zeta, eta, zero.clone(), zero];
        let back_z = inv_z.compose(&inner).unwrap();
        let back_w = inv_w.compose(&inner).unwrap();
        assert!(back_z.max_abs_diff(&z).unwrap() < 1e-12);
        assert!(back_w.max_abs_diff(&w).unwrap() < 1e-12);
        assert_eq!(back_z.cap(), cap);
    }

    #[test]
    fn derivative_examples() {
        let v = zw();
        let w = TruncatedSeries::var(&v, 6, "w").unwrap();
        let d = (&w * &w).partial("w", 1).unwrap();
        assert!(d.max_abs_diff(&(&w * 2.0)).unwrap() < 1e-15);
        assert_eq!(d.cap(), 4);

        let z = TruncatedSeries::var(&v, 6, "z1").unwrap();
        let zb = TruncatedSeries::var(&v, 6, "z1~").unwrap();
        let d = (&z * &zb).partial("z1", 1).unwrap().partial("z1~", 1).unwrap();
        assert!(d.max_abs_diff(&TruncatedSeries::one(&v, 4)).unwrap() < 1e-15);

        assert!(matches!(w.partial("q", 1), Err(SeriesError::UnknownVariable(_))));
        assert!(matches!(w.partial("w", 4), Err(SeriesError::CapExhausted { .. })));
    }

    // Exact rational evaluation so the stencil error is pure truncation, not roundoff.
    type Q = num_complex::Complex<num_rational::BigRational>;

    fn exact(x: Complex64) -> Q {
        let r = |v: f64| num_rational::BigRational::from_float(v).unwrap();
        Q::new(r(x.re), r(x.im))
    }

    fn eval_exact(s: &TruncatedSeries, p: &[Q]) -> Q {
        let mut acc = exact(Complex64::default());
        for (m, c) in s.terms() {
            let mut t = exact(c);
            for (&e, x) in m.exps().iter().zip(p) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    #[test]
    fn mixed_fourth_derivative_matches_finite_differences() {
        use num_traits::ToPrimitive;
        let v = Arc::new(VarSet::builder().z("a").z("b").build());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let s = random_series(&mut rng, &v, 8, 20);
            let d = s.partial("a", 2).unwrap().partial("b", 1).unwrap().partial("a~", 1).unwrap();
            let p = [c(0.2, -0.1), c(-0.3, 0.15), c(0.1, 0.05), c(0.05, -0.2)];
            let want = d.eval(&p).unwrap();
            let h = exact(c(1e-4, 0.0));
            let base: Vec<Q> = p.iter().map(|&x| exact(x)).collect();
            let mut sum = exact(Complex64::default());
            // d^2/da^2 (3-point) x d/db x d/d(a~) (central), as a product stencil
            for (ia, wa) in [(-1i32, 1i32), (0, -2), (1, 1)] {
                for (ib, wb) in [(-1i32, -1i32), (1, 1)] {
                    for (ic, wc) in [(-1i32, -1i32), (1, 1)] {
                        let mut q = base.clone();
                        let shift = |k: i32| h.clone() * exact(c(k as f64, 0.0));
                        q[0] = q[0].clone() + shift(ia);
                        q[1] = q[1].clone() + shift(ib);
                        q[2] = q[2].clone() + shift(ic);
                        let wgt = exact(c((wa * wb * wc) as f64, 0.0));
                        sum += eval_exact(&s, &q) * wgt;
                    }
                }
            }
            let h4 = h.clone() * h.clone() * h.clone() * h.clone() * exact(c(4.0, 0.0));
            let approx = sum / h4;
            let approx = c(approx.re.to_f64().unwrap(), approx.im.to_f64().unwrap());
            assert!(
                (approx - want).norm() / want.norm().max(1.0) < 1e-6,
                "{approx} vs {want}"
            );
        }
    }

    #[test]
    fn truncation_examples() {
        let v = zw();
        let z = TruncatedSeries::var(&v, 6, "z1").unwrap();
        let w = TruncatedSeries::var(&v, 6, "w").unwrap();
        let s = &z + &(&z * &w) + &(&w * &w);
        assert_eq!(s.truncate(2).unwrap().with_cap(6), z.with_cap(2).with_cap(6));
        assert_eq!(s.truncate(2).unwrap().len(), 1);
        assert_eq!(s.truncate(6).unwrap(), s);
        assert!(matches!(s.truncate(7), Err(SeriesError::TruncationAboveCap { .. })));

        let model = &z + &(&z * &w * c(0.0, 0.5));
        let t = model.truncate(2).unwrap();
        assert!(t.max_abs_diff(&z).unwrap() < 1e-15);
        assert_eq!(t.truncate(2).unwrap(), t);
    }

    #[test]
    fn conjugation_swaps_partners() {
        let v = zw();
        let s = TruncatedSeries::from_terms(&v, 6, [(vec![1, 1, 0, 0], c(1.0, 2.0))]);
        let cs = s.conj();
        assert_eq!(cs.coeff(&[0, 0, 1, 1]), c(1.0, -2.0));
        assert_eq!(cs.conj(), s);
    }

    #[test]
    fn evaluation_matches_closed_forms() {
        let v = zvars();
        let cap = 8;
        let z = TruncatedSeries::var(&v, cap, "z").unwrap();
        let one = TruncatedSeries::one(&v, cap);
        type ClosedForm = Box<dyn Fn(Complex64) -> Complex64>;
        let zoo: Vec<(TruncatedSeries, ClosedForm)> = vec![
            ((&one - &z).reciprocal().unwrap(), Box::new(|x| 1.0 / (1.0 - x))),
            ((&one - &(&z * &z)).reciprocal().unwrap().pow(2), Box::new(|x| 1.0 / ((1.0 - x * x) * (1.0 - x * x)))),
            ((&one + &(&z * c(0.0, 1.0))).reciprocal().unwrap(), Box::new(|x| 1.0 / (1.0 + c(0.0, 1.0) * x))),
        ];
        for (s, f) in &zoo {
            for &r in &[0.05, 0.1] {
                let x = c(r, r / 2.0);
                let err = (s.eval(&[x, x.conj()]).unwrap() - f(x)).norm();
                // remainder is O(|x|^(cap+1))
                assert!(err < 10.0 * x.norm().powi(cap as i32 + 1), "err {err}");
            }
        }
    }

    #[test]
    fn canonical_printing() {
        let v = Arc::new(VarSet::ball(2));
        let z2 = TruncatedSeries::var(&v, 4, "z2").unwrap();
        let phi = TruncatedSeries::one(&v, 4) + &z2 * &z2.conj();
        assert_eq!(phi.to_string(), "1 + |z2|^2");
        let s = &z2 * -0.25;
        assert_eq!(s.to_string(), "-0.25*z2");
    }

    fn arb_series(cap: u32) -> impl Strategy<Value = TruncatedSeries> {
        any::<u64>().prop_map(move |seed| {
            let v = Arc::new(VarSet::builder().z("a").w("w").build());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_series(&mut rng, &v, cap, 8)
        })
    }

    fn rel(a: &TruncatedSeries, b: &TruncatedSeries) -> f64 {
        a.max_abs_diff(b).unwrap() / a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms_hold_up_to_truncation(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            let v = a.vars().clone();
            let b = TruncatedSeries::from_terms(&v, 6, b.terms().map(|(m, x)| (m.exps().to_vec(), x)));
            let c = TruncatedSeries::from_terms(&v, 6, c.terms().map(|(m, x)| (m.exps().to_vec(), x)));
            prop_assert!(rel(&((&a * &b) * &c), &(&a * &(&b * &c))) < 1e-12);
            prop_assert!(rel(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))) < 1e-12);
            prop_assert!(rel(&(&a * &b), &(&b * &a)) < 1e-14);
        }

        #[test]
        fn leibniz_rule(a in arb_series(7), b in arb_series(7)) {
            let v = a.vars().clone();
            let b = TruncatedSeries::from_terms(&v, 7, b.terms().map(|(m, x)| (m.exps().to_vec(), x)));
            for name in ["a", "w", "a~"] {
                let lhs = (&a * &b).partial(name, 1).unwrap();
                let rhs = &a.partial(name, 1).unwrap() * &b + &a * &b.partial(name, 1).unwrap();
                prop_assert!(rel(&lhs, &rhs) < 1e-12);
            }
        }

        #[test]
        fn substitution_is_a_homomorphism(a in arb_series(6), b in arb_series(6), seed in any::<u64>()) {
            let v = a.vars().clone();
            let b = TruncatedSeries::from_terms(&v, 6, b.terms().map(|(m, x)| (m.exps().to_vec(), x)));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g: Vec<_> = (0..v.len()).map(|_| {
                let s = random_series(&mut rng, &v, 6, 5);
                &s - &TruncatedSeries::constant(&v, 6, s.constant_term())
            }).collect();
            let lhs = (&a * &b).compose(&g).unwrap();
            let rhs = a.compose(&g).unwrap() * b.compose(&g).unwrap();
            prop_assert!(rel(&lhs, &rhs) < 1e-12);
        }

        #[test]
        fn truncation_is_idempotent(a in arb_series(6), k in 0u32..=6) {
            let t = a.truncate(k).unwrap();
            prop_assert_eq!(t.truncate(k).unwrap(), t);
        }
    }
}
