use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use super::vars::{Monomial, VarKind, VarSet};

/// Coefficients whose magnitude falls below this are dropped from the store.
pub const HARD_ZERO: f64 = 1e-300;

/// Cap used by exact polynomials: nothing is ever truncated.
pub const EXACT_CAP: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("variable lists differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("constant term vanishes; series is not a unit")]
    NonUnit,
    #[error("reciprocal of an exact polynomial needs a finite truncation order")]
    UnboundedCap,
    #[error("outer series has {expected} variables but {got} inner series were supplied")]
    Arity { expected: usize, got: usize },
    #[error("slot {slot} ({name}) receives a nonzero constant but the outer series is truncated")]
    InvalidSubstitution { slot: usize, name: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("order-{order} derivative in `{var}` exhausts truncation order {cap}")]
    CapExhausted { var: String, order: u32, cap: u32 },
    #[error("truncation order {k} exceeds cap {cap}")]
    TruncationAboveCap { k: u32, cap: u32 },
    #[error("point has {got} coordinates, series has {expected} variables")]
    PointArity { expected: usize, got: usize },
    #[error("series has a term not divisible by `{var}`^{power}")]
    NotDivisible { var: String, power: u32 },
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Sparse multivariate power series with complex coefficients, truncated by weighted degree.
///
/// Every stored monomial has weight `<= cap`; all arithmetic re-truncates.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    vars: Arc<VarSet>,
    cap: u32,
    terms: BTreeMap<Monomial, Complex64>,
}

impl TruncatedSeries {
    pub fn zero(vars: &Arc<VarSet>, cap: u32) -> Self {
        TruncatedSeries {
            vars: Arc::clone(vars),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, cap: u32, c: Complex64) -> Self {
        let mut s = Self::zero(vars, cap);
        s.accumulate(Monomial::new(vars, vec![0; vars.len()]), c);
        s
    }

    pub fn one(vars: &Arc<VarSet>, cap: u32) -> Self {
        Self::constant(vars, cap, Complex64::new(1.0, 0.0))
    }

    /// The coordinate function of variable `name`.
    pub fn var(vars: &Arc<VarSet>, cap: u32, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, cap, i))
    }

    pub fn var_at(vars: &Arc<VarSet>, cap: u32, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, cap, exps, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(vars: &Arc<VarSet>, cap: u32, exps: Vec<u16>, c: Complex64) -> Self {
        let mut s = Self::zero(vars, cap);
        s.accumulate(Monomial::new(vars, exps), c);
        s
    }

    pub fn from_terms<I>(vars: &Arc<VarSet>, cap: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Complex64)>,
    {
        let mut s = Self::zero(vars, cap);
        for (e, c) in terms {
            s.accumulate(Monomial::new(vars, e), c);
        }
        s
    }

    /// An exact polynomial: truncation never applies.
    pub fn polynomial<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Complex64)>,
    {
        Self::from_terms(vars, EXACT_CAP, terms)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_exact(&self) -> bool {
        self.cap >= EXACT_CAP
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in (weight, lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, exps: &[u16]) -> Complex64 {
        let m = Monomial::new(&self.vars, exps.to_vec());
        self.terms.get(&m).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Lowest weight carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::weight)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::weight)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Same series with a (possibly lower) cap.
    pub fn with_cap(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight() <= cap)
            .map(|(m, c)| (m.clone(), *c))
            .collect();
        TruncatedSeries {
            vars: Arc::clone(&self.vars),
            cap,
            terms,
        }
    }

    fn accumulate(&mut self, m: Monomial, c: Complex64) {
        if m.weight() > self.cap {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if c.norm() >= HARD_ZERO {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.norm() < HARD_ZERO {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.with_cap(other.cap);
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        if k.norm() < HARD_ZERO {
            return Self::zero(&self.vars, self.cap);
        }
        self.map_coeffs(|c| c * k)
    }

    pub fn map_coeffs(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), f(*c));
        }
        out
    }

    /// Truncated Cauchy product; result cap is the smaller cap.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(&self.vars, cap);
        let n = self.vars.len();
        for (ma, ca) in &self.terms {
            if ma.weight() > cap {
                break;
            }
            for (mb, cb) in &other.terms {
                let w = ma.weight() + mb.weight();
                if w > cap {
                    break;
                }
                let mut e = Vec::with_capacity(n);
                e.extend(ma.exps().iter().zip(mb.exps()).map(|(x, y)| x + y));
                out.accumulate(Monomial::from_parts(w, e.into_boxed_slice()), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars, self.cap);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse up to the cap.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_exact() {
            return Err(SeriesError::UnboundedCap);
        }
        let c0 = self.constant_term();
        if c0.norm() < HARD_ZERO {
            return Err(SeriesError::NonUnit);
        }
        let inv0 = c0.inv();
        // a = c0 (1 + x) with x of positive valuation; 1/a = inv0 * sum (-x)^k.
        let mut x = self.scale(inv0);
        x.accumulate(Monomial::new(&self.vars, vec![0; self.vars.len()]), -Complex64::new(1.0, 0.0));
        let neg_x = x.scale(Complex64::new(-1.0, 0.0));
        let mut sum = Self::one(&self.vars, self.cap);
        let mut power = Self::one(&self.vars, self.cap);
        loop {
            power = &power * &neg_x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(inv0))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.reciprocal()?)
    }

    /// Formal substitution of `inner[i]` for the i-th outer variable.
    ///
    /// When the outer series is truncated every inner series must have zero
    /// constant term, and the result cap is lowered so that omitted outer
    /// terms cannot contribute. Exact outer polynomials accept any inner series.
    pub fn compose(&self, inner: &[TruncatedSeries]) -> Result<Self> {
        if inner.len() != self.vars.len() {
            return Err(SeriesError::Arity {
                expected: self.vars.len(),
                got: inner.len(),
            });
        }
        let Some(first) = inner.first() else {
            // no variables: the outer series is a constant
            return Ok(self.clone());
        };
        for s in &inner[1..] {
            first.check_compatible(s)?;
        }
        let target = Arc::clone(&first.vars);
        let mut cap = inner.iter().map(|s| s.cap).min().unwrap_or(self.cap);
        let valuations: Vec<Option<u32>> = inner.iter().map(|s| s.valuation()).collect();
        if !self.is_exact() {
            for (slot, s) in inner.iter().enumerate() {
                if s.constant_term().norm() >= HARD_ZERO {
                    return Err(SeriesError::InvalidSubstitution {
                        slot,
                        name: self.vars.var(slot).name.clone(),
                    });
                }
            }
            // Omitted outer terms have outer weight > self.cap; their images have
            // valuation >= ratio * (self.cap + 1) with ratio = min v_i / w_i.
            let bound = valuations
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| (i, v)))
                .map(|(i, v)| {
                    let w = self.vars.weight(i) as u64;
                    let num = (self.cap as u64 + 1) * v as u64;
                    (num.div_ceil(w) - 1).min(u32::MAX as u64) as u32
                })
                .min();
            if let Some(b) = bound {
                cap = cap.min(b);
            }
        }
        let mut out = Self::zero(&target, cap);
        let mut powers: Vec<Vec<TruncatedSeries>> = inner
            .iter()
            .map(|s| vec![Self::one(&target, cap), s.with_cap(cap)])
            .collect();
        for (m, c) in &self.terms {
            // cheap valuation bound to skip hopeless monomials
            let low: u64 = m
                .exps()
                .iter()
                .zip(&valuations)
                .map(|(&e, v)| match v {
                    Some(v) => e as u64 * *v as u64,
                    None if e > 0 => u64::MAX / 4,
                    None => 0,
                })
                .sum();
            if low > cap as u64 {
                continue;
            }
            let mut term = Self::constant(&target, cap, *c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.accumulate(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitute only the named variables, keeping the others as themselves.
    pub fn substitute(&self, subs: &[(&str, TruncatedSeries)]) -> Result<Self> {
        let mut inner = Vec::with_capacity(self.vars.len());
        let target = match subs.first() {
            Some((_, s)) => Arc::clone(s.vars()),
            None => return Ok(self.clone()),
        };
        let cap = subs.iter().map(|(_, s)| s.cap).min().unwrap();
        for name in subs.iter().map(|(n, _)| *n) {
            if self.vars.index_of(name).is_none() {
                return Err(SeriesError::UnknownVariable(name.to_string()));
            }
        }
        for v in self.vars.vars() {
            match subs.iter().find(|(n, _)| *n == v.name) {
                Some((_, s)) => inner.push(s.clone()),
                None => inner.push(Self::var(&target, cap, &v.name)?),
            }
        }
        self.compose(&inner)
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.vars
            .index_of(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    /// Formal partial derivative; cap drops by `order * weight(var)`.
    pub fn partial(&self, var: &str, order: u32) -> Result<Self> {
        let i = self.index(var)?;
        self.partial_at(i, order)
    }

    pub fn partial_at(&self, i: usize, order: u32) -> Result<Self> {
        let w = self.vars.weight(i);
        let drop = order * w;
        let cap = if self.is_exact() {
            self.cap
        } else if self.cap < drop {
            return Err(SeriesError::CapExhausted {
                var: self.vars.var(i).name.clone(),
                order,
                cap: self.cap,
            });
        } else {
            self.cap - drop
        };
        let mut out = Self::zero(&self.vars, cap);
        for (m, c) in &self.terms {
            let e = m.exps()[i] as u32;
            if e < order {
                continue;
            }
            let falling: f64 = (0..order).map(|k| (e - k) as f64).product();
            let mut exps = m.exps().to_vec();
            exps[i] -= order as u16;
            out.accumulate(
                Monomial::from_parts(m.weight() - drop, exps.into_boxed_slice()),
                c * falling,
            );
        }
        Ok(out)
    }

    /// Drop every term of weight > k.
    pub fn truncate(&self, k: u32) -> Result<Self> {
        if k > self.cap {
            return Err(SeriesError::TruncationAboveCap { k, cap: self.cap });
        }
        Ok(self.with_cap(k))
    }

    /// Coefficient-conjugate and swap each variable with its partner.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; m.exps().len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[self.vars.partner(i)] = e;
            }
            out.accumulate(Monomial::from_parts(m.weight(), exps.into_boxed_slice()), c.conj());
        }
        out
    }

    /// Real part `(s + conj s) / 2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(Complex64::new(0.5, 0.0))
    }

    /// Imaginary part `(s - conj s) / 2i`.
    pub fn imag_part(&self) -> Self {
        (self - &self.conj()).scale(Complex64::new(0.0, -0.5))
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.vars.len() {
            return Err(SeriesError::PointArity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .filter(|(e, _)| **e > 0)
                    .fold(*c, |acc, (&e, x)| acc * x.powu(e as u32))
            })
            .sum())
    }

    /// Evaluate with conjugate slots filled by the conjugates of the holomorphic ones.
    ///
    /// `holo` lists the holomorphic coordinates; `real` the real auxiliary ones.
    pub fn eval_polarized(&self, holo: &[Complex64], real: &[f64]) -> Result<Complex64> {
        let h = self.vars.holomorphic_count();
        let expected = self.vars.len();
        if holo.len() != h || h * 2 + real.len() != expected {
            return Err(SeriesError::PointArity {
                expected,
                got: holo.len() * 2 + real.len(),
            });
        }
        let mut p = Vec::with_capacity(expected);
        p.extend_from_slice(holo);
        p.extend(holo.iter().map(|z| z.conj()));
        p.extend(real.iter().map(|&x| Complex64::new(x, 0.0)));
        self.eval(&p)
    }

    /// Re-express over a larger variable set containing these names (same weights).
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .vars()
            .iter()
            .map(|v| {
                target
                    .index_of(&v.name)
                    .filter(|&j| target.weight(j) == v.weight)
                    .ok_or_else(|| SeriesError::VariableMismatch {
                        left: self.vars.to_string(),
                        right: target.to_string(),
                    })
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target, self.cap);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] = e;
            }
            out.accumulate(Monomial::from_parts(m.weight(), exps.into_boxed_slice()), *c);
        }
        Ok(out)
    }

    /// Coefficient of `var^k`, as a series in the remaining variables.
    pub fn coefficient_of_power(&self, var: &str, k: u16) -> Result<Self> {
        let i = self.index(var)?;
        let drop = k as u32 * self.vars.weight(i);
        let cap = if self.is_exact() {
            self.cap
        } else {
            self.cap.saturating_sub(drop)
        };
        let mut out = Self::zero(&self.vars, cap);
        for (m, c) in &self.terms {
            if m.exps()[i] == k {
                let mut exps = m.exps().to_vec();
                exps[i] = 0;
                out.accumulate(Monomial::from_parts(m.weight() - drop, exps.into_boxed_slice()), *c);
            }
        }
        Ok(out)
    }

    /// Exact division by `var^k`.
    pub fn divide_by_power(&self, var: &str, k: u16) -> Result<Self> {
        let i = self.index(var)?;
        let drop = k as u32 * self.vars.weight(i);
        let cap = if self.is_exact() {
            self.cap
        } else {
            self.cap.saturating_sub(drop)
        };
        let mut out = Self::zero(&self.vars, cap);
        for (m, c) in &self.terms {
            if m.exps()[i] < k {
                return Err(SeriesError::NotDivisible {
                    var: var.to_string(),
                    power: k as u32,
                });
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= k;
            out.accumulate(Monomial::from_parts(m.weight() - drop, exps.into_boxed_slice()), *c);
        }
        Ok(out)
    }

    /// Keep only the terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&[u16]) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m.exps()))
            .map(|(m, c)| (m.clone(), *c))
            .collect();
        TruncatedSeries {
            vars: Arc::clone(&self.vars),
            cap: self.cap,
            terms,
        }
    }

    /// Largest coefficient difference over monomials of weight <= the common cap.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let d = self.with_cap(cap).try_sub(&other.with_cap(cap))?;
        Ok(d.max_abs_coeff())
    }

    /// Terms whose coefficient exceeds `tol`, rounded for display.
    pub fn chop(&self, tol: f64) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (m, c) in &self.terms {
            let re = if c.re.abs() > tol { c.re } else { 0.0 };
            let im = if c.im.abs() > tol { c.im } else { 0.0 };
            out.accumulate(m.clone(), Complex64::new(re, im));
        }
        out
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && *self.vars == *other.vars && self.terms == other.terms
    }
}

fn format_real(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn format_monomial(vars: &VarSet, exps: &[u16]) -> String {
    let h = vars.holomorphic_count();
    let mut parts = Vec::new();
    let power = |name: &str, e: u16| {
        if e == 1 {
            name.to_string()
        } else {
            format!("{name}^{e}")
        }
    };
    for i in 0..h {
        let name = &vars.var(i).name;
        let (a, b) = (exps[i], exps[h + i]);
        let m = a.min(b);
        if m > 0 {
            parts.push(power(&format!("|{name}|"), 2 * m));
        }
        if a > m {
            parts.push(power(name, a - m));
        }
        if b > m {
            parts.push(power(&format!("conj({name})"), b - m));
        }
    }
    for (i, &e) in exps.iter().enumerate().skip(2 * h) {
        if e > 0 {
            parts.push(power(&vars.var(i).name, e));
        }
    }
    parts.join("*")
}

impl fmt::Display for TruncatedSeries {
    /// Canonical printing: terms in (weight, lex) order, polarized pairs as `|z|^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.chop(1e-12);
        if s.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &s.terms {
            let mono = format_monomial(&self.vars, m.exps());
            let real = c.im == 0.0;
            let (neg, body) = if real {
                (c.re < 0.0, format_real(c.re.abs()))
            } else if c.re == 0.0 {
                (c.im < 0.0, format!("{}i", format_real(c.im.abs())))
            } else {
                let sign = if c.im < 0.0 { "-" } else { "+" };
                (
                    false,
                    format!("({}{}{}i)", format_real(c.re), sign, format_real(c.im.abs())),
                )
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$try(rhs).expect("series operands must share a variable list")
            }
        }
        impl $tr<TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.neg_ref()
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.neg_ref()
    }
}

impl Mul<Complex64> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, k: Complex64) -> TruncatedSeries {
        self.scale(k)
    }
}

impl Mul<f64> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, k: f64) -> TruncatedSeries {
        self.scale(Complex64::new(k, 0.0))
    }
}

impl Mul<Complex64> for TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, k: Complex64) -> TruncatedSeries {
        self.scale(k)
    }
}

impl Mul<f64> for TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, k: f64) -> TruncatedSeries {
        self.scale(Complex64::new(k, 0.0))
    }
}

/// Dot product `a . b = sum a_l b_l` of two equally long series vectors.
pub fn dot(a: &[TruncatedSeries], b: &[TruncatedSeries]) -> TruncatedSeries {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    let mut it = a.iter().zip(b);
    let (x, y) = it.next().expect("dot product of empty vectors");
    it.fold(x * y, |acc, (x, y)| acc + x * y)
}

/// `|a|^2 = a . conj(a)` in polarized form.
pub fn norm_sq(a: &[TruncatedSeries]) -> TruncatedSeries {
    let conj: Vec<_> = a.iter().map(TruncatedSeries::conj).collect();
    dot(a, &conj)
}

/// Holomorphic images followed by their conjugates: the inner list for composing a polarized series.
pub fn polarize(holo: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    holo.iter().cloned().chain(holo.iter().map(TruncatedSeries::conj)).collect()
}

/// Label used in reports and JSON for a variable kind.
pub fn kind_label(kind: VarKind) -> &'static str {
    match kind {
        VarKind::HoloZ => "holomorphic-z",
        VarKind::HoloW => "holomorphic-w",
        VarKind::ConjZ => "conjugate-z",
        VarKind::ConjW => "conjugate-w",
        VarKind::Real => "real-auxiliary",
    }
}
