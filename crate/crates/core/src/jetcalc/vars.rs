use std::fmt;

/// Role of a formal variable inside a polarized series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    HoloZ,
    HoloW,
    ConjZ,
    ConjW,
    /// A real auxiliary parameter (`u = Re w`, `t = Im w - |z|^2`). Self-conjugate.
    Real,
}

impl VarKind {
    pub fn default_weight(self) -> u32 {
        match self {
            VarKind::HoloZ | VarKind::ConjZ => 1,
            VarKind::HoloW | VarKind::ConjW | VarKind::Real => 2,
        }
    }

    pub fn is_holomorphic(self) -> bool {
        matches!(self, VarKind::HoloZ | VarKind::HoloW)
    }

    pub fn is_conjugate(self) -> bool {
        matches!(self, VarKind::ConjZ | VarKind::ConjW)
    }

    fn conjugate(self) -> VarKind {
        match self {
            VarKind::HoloZ => VarKind::ConjZ,
            VarKind::HoloW => VarKind::ConjW,
            VarKind::ConjZ => VarKind::HoloZ,
            VarKind::ConjW => VarKind::HoloW,
            VarKind::Real => VarKind::Real,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
    pub weight: u32,
    /// Index of the conjugate partner (itself for real variables).
    pub partner: usize,
}

/// Ordered list of formal variables shared by every series built on it.
///
/// Layout is always `[holomorphic..., conjugates (same order)..., real...]`,
/// so `z_j` and `conj(z_j)` sit `holomorphic_count()` slots apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
    holo: usize,
}

impl VarSet {
    pub fn builder() -> VarSetBuilder {
        VarSetBuilder::default()
    }

    /// Polarized set from holomorphic `(name, kind)` pairs; conjugates are named `name~`.
    pub fn polarized(holo: &[(&str, VarKind)]) -> VarSet {
        let mut b = VarSet::builder();
        for (name, kind) in holo {
            b = b.holomorphic(name, *kind);
        }
        b.build()
    }

    /// `z1..zn` (all weight 1) plus conjugates: the polarized ball chart.
    pub fn ball(n: usize) -> VarSet {
        let mut b = VarSet::builder();
        for j in 1..=n {
            b = b.z(&format!("z{j}"));
        }
        b.build()
    }

    /// `z1..z_{n-1}, w` plus conjugates: the polarized Siegel chart.
    pub fn siegel(n: usize) -> VarSet {
        assert!(n >= 1, "siegel chart needs n >= 1");
        let mut b = VarSet::builder();
        for j in 1..n {
            b = b.z(&format!("z{j}"));
        }
        b.w("w").build()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn holomorphic_count(&self) -> usize {
        self.holo
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn partner(&self, i: usize) -> usize {
        self.vars[i].partner
    }

    pub fn weight_of(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.vars)
            .map(|(&e, v)| e as u32 * v.weight)
            .sum()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "({})", names.join(", "))
    }
}

#[derive(Default)]
pub struct VarSetBuilder {
    holo: Vec<(String, VarKind, u32)>,
    real: Vec<(String, u32)>,
}

impl VarSetBuilder {
    pub fn z(self, name: &str) -> Self {
        self.holomorphic(name, VarKind::HoloZ)
    }

    pub fn w(self, name: &str) -> Self {
        self.holomorphic(name, VarKind::HoloW)
    }

    pub fn holomorphic(mut self, name: &str, kind: VarKind) -> Self {
        assert!(kind.is_holomorphic(), "holomorphic slot needs HoloZ or HoloW");
        self.holo
            .push((name.to_string(), kind, kind.default_weight()));
        self
    }

    /// Holomorphic variable with a custom weight (weights must be >= 1).
    pub fn holomorphic_weighted(mut self, name: &str, kind: VarKind, weight: u32) -> Self {
        assert!(kind.is_holomorphic() && weight >= 1);
        self.holo.push((name.to_string(), kind, weight));
        self
    }

    pub fn real(mut self, name: &str, weight: u32) -> Self {
        assert!(weight >= 1, "variable weights must be positive");
        self.real.push((name.to_string(), weight));
        self
    }

    pub fn build(self) -> VarSet {
        let h = self.holo.len();
        let mut vars = Vec::with_capacity(2 * h + self.real.len());
        for (i, (name, kind, weight)) in self.holo.iter().enumerate() {
            vars.push(Var {
                name: name.clone(),
                kind: *kind,
                weight: *weight,
                partner: h + i,
            });
        }
        for (i, (name, kind, weight)) in self.holo.iter().enumerate() {
            vars.push(Var {
                name: format!("{name}~"),
                kind: kind.conjugate(),
                weight: *weight,
                partner: i,
            });
        }
        for (name, weight) in self.real {
            let idx = vars.len();
            vars.push(Var {
                name,
                kind: VarKind::Real,
                weight,
                partner: idx,
            });
        }
        VarSet { vars, holo: h }
    }
}

/// Exponent vector keyed for the sparse store: ordered by weight, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    weight: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn new(vars: &VarSet, exps: Vec<u16>) -> Monomial {
        assert_eq!(exps.len(), vars.len(), "exponent length must match variable count");
        Monomial {
            weight: vars.weight_of(&exps),
            exps: exps.into_boxed_slice(),
        }
    }

    pub(crate) fn from_parts(weight: u32, exps: Box<[u16]>) -> Monomial {
        Monomial { weight, exps }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}
