//! Cross-ratio moduli of pencils with four or more eigenvalues.
//!
//! For a diagonalizable family with an anchor eigenvalue `a` and further
//! eigenvalues `p₁, p₂, q₁, …, q_{m−2}`, the parameters are
//! `λ⁽ᵏ⁾ = cr(a, p₁, p₂, q_k)`. Reordering the points acts on the parameter
//! vector through the generators `A_i` (swap `q_i, q_{i+1}`), `F` (swap
//! `p₂, q_{m−2}`), `G` (swap `p₁, p₂`) and, when the anchor is itself a
//! simple eigenvalue, `H` (swap `a, p₁`).

mod moduli;
mod reduce;
mod relations;

pub use moduli::{moduli_of, FramedInvariant, Moduli};
pub use reduce::{eigen_family_state, normal_form_state, reduce_to_normal_form};
pub use relations::{verify_group_relations, GroupRelationReport, RelationCheck};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;
use crate::pencil::ProjectivePoint;

/// Cross ratio `[c,a][b,d] / ([d,a][b,c])` with `[x,y] = μ_x ν_y − μ_y ν_x`.
///
/// On finite points this is `(c−a)(b−d) / ((d−a)(b−c))`, so
/// `cr(0, λ₁, λ₂, λ_k) = (λ₂/λ_k)·(λ₁−λ_k)/(λ₁−λ₂)`.
pub fn cross_ratio(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    d: &ProjectivePoint,
) -> Result<GaussianRational> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateConfiguration);
            }
        }
    }
    let num = &c.bracket(a) * &b.bracket(d);
    let den = &d.bracket(a) * &b.bracket(c);
    Ok(&num / &den)
}

/// Nonlocal parameters `(λ⁽¹⁾, …, λ⁽ᵐ⁻²⁾)` of a family with `m` eigenvalues
/// besides the anchor.
///
/// Ordered lexicographically by value, so the minimum of an orbit is a
/// canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamVector {
    values: Vec<GaussianRational>,
    extra_h: bool,
}

impl ParamVector {
    /// Values must avoid `{0, 1}` and be pairwise distinct.
    pub fn new(values: Vec<GaussianRational>, extra_h: bool) -> Result<Self> {
        for (k, v) in values.iter().enumerate() {
            if v.is_zero() || v.is_one() {
                return Err(Error::InvalidParams(format!("parameter {} is {v}", k + 1)));
            }
            if values[..k].contains(v) {
                return Err(Error::InvalidParams(format!("parameter {v} repeated")));
            }
        }
        Ok(ParamVector { values, extra_h })
    }

    pub fn empty(extra_h: bool) -> Self {
        ParamVector { values: Vec::new(), extra_h }
    }

    /// `m` distinct values avoiding `{0, 1}`, numerators in `[−12, 12]` and
    /// denominators in `[1, 6]`.
    pub fn random<R: Rng + ?Sized>(m: usize, extra_h: bool, rng: &mut R) -> Self {
        let mut values: Vec<GaussianRational> = Vec::new();
        while values.len() + 2 < m {
            let v = GaussianRational::ratio(rng.random_range(-12..=12), rng.random_range(1..=6));
            if !v.is_zero() && !v.is_one() && !values.contains(&v) {
                values.push(v);
            }
        }
        ParamVector { values, extra_h }
    }

    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    /// Number of eigenvalues other than the anchor.
    pub fn m(&self) -> usize {
        self.values.len() + 2
    }

    pub fn extra_h(&self) -> bool {
        self.extra_h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_extra_h(mut self, extra_h: bool) -> Self {
        self.extra_h = extra_h;
        self
    }

    fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        ParamVector { values: self.values.iter().map(f).collect(), extra_h: self.extra_h }
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.extra_h {
            f.write_str("+H")?;
        }
        Ok(())
    }
}

impl Serialize for ParamVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `"[4/3, 3/2]"`; the result has `extra_h = false`.
impl FromStr for ParamVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
        let values = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<_>>>()?
        };
        ParamVector::new(values, false)
    }
}

/// One generator of the residual symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `A_i`, 1-based.
    A(usize),
    F,
    G,
    H,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "A{i}"),
            Generator::F => f.write_str("F"),
            Generator::G => f.write_str("G"),
            Generator::H => f.write_str("H"),
        }
    }
}

impl Generator {
    pub fn apply(self, v: &ParamVector) -> Result<ParamVector> {
        match self {
            Generator::A(i) => gen_swap(v, i),
            Generator::F => Ok(gen_f(v)),
            Generator::G => Ok(gen_g(v)),
            Generator::H => gen_h(v),
        }
    }

    /// Generators acting on vectors of this length, with or without `H`.
    pub fn all_for(m: usize, extra_h: bool) -> Vec<Generator> {
        let mut out: Vec<_> = (1..m.saturating_sub(2)).map(Generator::A).collect();
        out.extend([Generator::F, Generator::G]);
        if extra_h {
            out.push(Generator::H);
        }
        out
    }
}

/// A word in the generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    pub word: Vec<Generator>,
}

impl SymmetryElement {
    pub fn new(word: Vec<Generator>) -> Self {
        SymmetryElement { word }
    }

    pub fn apply(&self, v: &ParamVector) -> Result<ParamVector> {
        self.word.iter().try_fold(v.clone(), |acc, g| g.apply(&acc))
    }
}

/// `A_i`: exchanges entries `i` and `i+1` (1-based).
pub fn gen_swap(v: &ParamVector, i: usize) -> Result<ParamVector> {
    if i == 0 || i + 1 > v.len() {
        return Err(Error::IndexOutOfRange { index: i, max: v.len().saturating_sub(1) });
    }
    let mut out = v.clone();
    out.values.swap(i - 1, i);
    Ok(out)
}

/// `F`: divides every entry by the last one and replaces the last by its
/// reciprocal. Identity on the empty vector.
pub fn gen_f(v: &ParamVector) -> ParamVector {
    let Some(last) = v.values.last() else {
        return v.clone();
    };
    let inv = last.inv().expect("parameters are nonzero");
    let mut out = v.map(|x| x * &inv);
    *out.values.last_mut().expect("nonempty") = inv;
    out
}

/// `G`: `λ ↦ 1 − λ` entrywise.
pub fn gen_g(v: &ParamVector) -> ParamVector {
    let one = GaussianRational::one();
    v.map(|x| &one - x)
}

/// `H`: `λ ↦ 1/λ` entrywise; only defined when the anchor is a simple
/// eigenvalue.
pub fn gen_h(v: &ParamVector) -> Result<ParamVector> {
    if !v.extra_h {
        return Err(Error::HNotApplicable);
    }
    Ok(v.map(|x| x.inv().expect("parameters are nonzero")))
}

/// Breadth-first closure of `{v}` under every applicable generator.
pub fn orbit(v: &ParamVector) -> BTreeSet<ParamVector> {
    let gens = Generator::all_for(v.m(), v.extra_h);
    let mut seen = BTreeSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = g.apply(&cur).expect("generator applicable by construction");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// The least member of the orbit of `v`.
pub fn canonical_params(v: &ParamVector) -> ParamVector {
    orbit(v).into_iter().next().expect("orbit contains v")
}

pub fn slocc_equivalent_params(a: &ParamVector, b: &ParamVector) -> bool {
    a.m() == b.m() && a.extra_h == b.extra_h && canonical_params(a) == canonical_params(b)
}
