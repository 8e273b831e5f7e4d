use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};

/// Point `(μ:ν)` of the projective line, stored with `ν = 1` when finite
/// and as `(1:0)` for `∞`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    mu: GaussianRational,
    nu: GaussianRational,
}

impl ProjectivePoint {
    pub fn new(mu: GaussianRational, nu: GaussianRational) -> Result<Self> {
        if nu.is_zero() {
            if mu.is_zero() {
                return Err(Error::DomainError("projective point (0:0)".into()));
            }
            return Ok(Self::infinity());
        }
        Ok(ProjectivePoint { mu: &mu / &nu, nu: GaussianRational::one() })
    }

    pub fn finite(value: GaussianRational) -> Self {
        ProjectivePoint { mu: value, nu: GaussianRational::one() }
    }

    pub fn infinity() -> Self {
        ProjectivePoint { mu: GaussianRational::one(), nu: GaussianRational::zero() }
    }

    pub fn mu(&self) -> &GaussianRational {
        &self.mu
    }

    pub fn nu(&self) -> &GaussianRational {
        &self.nu
    }

    pub fn is_infinite(&self) -> bool {
        self.nu.is_zero()
    }

    /// The affine coordinate `μ/ν`, or `None` at `∞`.
    pub fn value(&self) -> Option<&GaussianRational> {
        (!self.is_infinite()).then_some(&self.mu)
    }

    /// Image of the eigenvalue under the qubit operator `t` of an ILO:
    /// `λ ↦ (t₂₂λ + t₂₁)/(t₁₂λ + t₁₁)`.
    pub fn mobius(&self, t: &ExactMatrix) -> Self {
        let mu = &(&t[(1, 1)] * &self.mu) + &(&t[(1, 0)] * &self.nu);
        let nu = &(&t[(0, 1)] * &self.mu) + &(&t[(0, 0)] * &self.nu);
        Self::new(mu, nu).expect("invertible map sends a point to a point")
    }

    /// The 2×2 determinant `μ_a ν_b − μ_b ν_a`; zero iff the points coincide.
    pub(crate) fn bracket(&self, other: &Self) -> GaussianRational {
        &(&self.mu * &other.nu) - &(&other.mu * &self.nu)
    }
}

/// Finite points by value, `∞` last.
impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.mu.cmp(&other.mu),
        }
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
