//! Naive reference kernels over plain term lists.
//!
//! No ordering, merging or valuation tricks: products are double loops and
//! composition expands each outer monomial by repeated multiplication. Used
//! by the kernel self-test to cross-check [`TruncatedSeries`].

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{TruncatedSeries, VarSet};

pub type TermList = BTreeMap<Vec<u16>, Complex64>;

pub fn terms_of(s: &TruncatedSeries) -> TermList {
    let mut out = TermList::new();
    for (m, c) in s.terms() {
        *out.entry(m.exps().to_vec()).or_default() += c;
    }
    out
}

fn weight(vars: &VarSet, e: &[u16]) -> u32 {
    e.iter().enumerate().map(|(i, &x)| x as u32 * vars.weight(i)).sum()
}

pub fn naive_mul(vars: &VarSet, cap: u32, a: &TermList, b: &TermList) -> TermList {
    let mut out = TermList::new();
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

pub fn naive_partial(a: &TermList, i: usize, order: u32) -> TermList {
    let mut out = TermList::new();
    for (e, c) in a {
        let k = e[i] as u32;
        if k < order {
            continue;
        }
        let mut f = 1.0;
        for j in 0..order {
            f *= (k - j) as f64;
        }
        let mut e = e.clone();
        e[i] -= order as u16;
        *out.entry(e).or_default() += c * f;
    }
    out
}

/// Substitute `inner[i]` (series over `target`) for the i-th outer variable, keeping weights <= cap.
pub fn naive_compose(target: &VarSet, cap: u32, outer: &TermList, inner: &[TermList]) -> TermList {
    let one: TermList = [(vec![0u16; target.len()], Complex64::new(1.0, 0.0))].into_iter().collect();
    let mut out = TermList::new();
    for (e, c) in outer {
        let mut term = one.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                term = naive_mul(target, cap, &term, &inner[i]);
            }
        }
        for (te, tc) in term {
            *out.entry(te).or_default() += c * tc;
        }
    }
    out
}

/// Largest coefficient difference relative to the oracle's largest coefficient.
pub fn max_rel_diff(s: &TruncatedSeries, o: &TermList) -> f64 {
    let scale = o.values().map(|c| c.norm()).fold(1e-300, f64::max);
    let mut worst: f64 = 0.0;
    for (e, c) in o {
        if weight(s.vars(), e) <= s.cap() {
            worst = worst.max((s.coeff(e) - c).norm() / scale);
        }
    }
    for (m, c) in s.terms() {
        let oc = o.get(m.exps()).copied().unwrap_or_default();
        worst = worst.max((c - oc).norm() / scale);
    }
    worst
}
