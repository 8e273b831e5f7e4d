//! Matrix-pencil view of 2×M×N states and its SLOCC invariants.
//!
//! A state is the pair of slices `(Γ₁, Γ₂)`. An eigenvalue is a projective
//! point `(μ:ν)` at which `νΓ₂ − μΓ₁` drops below the normal rank; the
//! point `∞ = (1:0)` is where `Γ₁` itself drops rank.

mod label;
mod point;
mod structure;

pub use label::{class_label, is_true_tripartite, ClassLabel, SingularShape};
pub use point::ProjectivePoint;
pub use structure::{pencil_structure, EigenGroup, PencilStructure};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};

/// A 2×M×N state as its two M×N slices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PencilState {
    gamma1: ExactMatrix,
    gamma2: ExactMatrix,
}

#[derive(Serialize)]
struct StateDoc<'a> {
    m: usize,
    n: usize,
    gamma1: &'a ExactMatrix,
    gamma2: &'a ExactMatrix,
}

/// `{"m", "n", "gamma1", "gamma2"}` with scalar strings as entries.
impl Serialize for PencilState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateDoc { m: self.m_dim(), n: self.n_dim(), gamma1: &self.gamma1, gamma2: &self.gamma2 }.serialize(s)
    }
}

impl PencilState {
    /// Both slices must share one shape with M, N ≥ 2.
    pub fn new(gamma1: ExactMatrix, gamma2: ExactMatrix) -> Result<Self> {
        if gamma1.shape() != gamma2.shape() {
            return Err(Error::ShapeMismatch(format!(
                "slices of shape {:?} and {:?}",
                gamma1.shape(),
                gamma2.shape()
            )));
        }
        let (m, n) = gamma1.shape();
        if m < 2 || n < 2 {
            return Err(Error::DomainError(format!("state dimensions {m}x{n}, need both >= 2")));
        }
        Ok(PencilState { gamma1, gamma2 })
    }

    pub fn m_dim(&self) -> usize {
        self.gamma1.rows()
    }

    pub fn n_dim(&self) -> usize {
        self.gamma1.cols()
    }

    pub fn gamma1(&self) -> &ExactMatrix {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &ExactMatrix {
        &self.gamma2
    }

    /// The M ↔ N swapped state `(Γ₁ᵀ, Γ₂ᵀ)`.
    pub fn transpose(&self) -> Self {
        PencilState { gamma1: self.gamma1.transpose(), gamma2: self.gamma2.transpose() }
    }
}

/// Invertible local operator `T ⊗ P ⊗ Q` on the qubit, M-level and N-level
/// parties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ILOTriple {
    t: ExactMatrix,
    p: ExactMatrix,
    q: ExactMatrix,
}

impl ILOTriple {
    pub fn new(t: ExactMatrix, p: ExactMatrix, q: ExactMatrix) -> Result<Self> {
        if t.shape() != (2, 2) || !p.is_square() || !q.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "ILO factors of shape {:?}, {:?}, {:?}",
                t.shape(),
                p.shape(),
                q.shape()
            )));
        }
        for f in [&t, &p, &q] {
            if f.rank() < f.rows() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(ILOTriple { t, p, q })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        ILOTriple { t: ExactMatrix::identity(2), p: ExactMatrix::identity(m), q: ExactMatrix::identity(n) }
    }

    /// Entries `a/b` with `a ∈ [−9, 9]`, `b ∈ [1, 9]`, resampled until
    /// each factor is invertible.
    pub fn random<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Self {
        ILOTriple { t: random_invertible(2, rng), p: random_invertible(m, rng), q: random_invertible(n, rng) }
    }

    pub fn t(&self) -> &ExactMatrix {
        &self.t
    }

    pub fn p(&self) -> &ExactMatrix {
        &self.p
    }

    pub fn q(&self) -> &ExactMatrix {
        &self.q
    }

    pub fn inverse(&self) -> Self {
        let inv = |a: &ExactMatrix| a.inverse().expect("ILO factors are invertible by construction");
        ILOTriple { t: inv(&self.t), p: inv(&self.p), q: inv(&self.q) }
    }
}

fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ExactMatrix {
    loop {
        let a = ExactMatrix::from_fn(n, n, |_, _| {
            GaussianRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
        });
        if a.rank() == n {
            return a;
        }
    }
}

/// `Γ'_k = Σ_j t_kj · P Γ_j Q`.
pub fn apply_ilo(s: &PencilState, op: &ILOTriple) -> Result<PencilState> {
    if op.p.rows() != s.m_dim() || op.q.rows() != s.n_dim() {
        return Err(Error::ShapeMismatch(format!(
            "ILO for {}x{} applied to a {}x{} state",
            op.p.rows(),
            op.q.rows(),
            s.m_dim(),
            s.n_dim()
        )));
    }
    let g1 = &(&op.p * &s.gamma1) * &op.q;
    let g2 = &(&op.p * &s.gamma2) * &op.q;
    let t = &op.t;
    let mix = |a: &GaussianRational, b: &GaussianRational| -> Result<ExactMatrix> {
        match (a.is_zero(), b.is_zero()) {
            (false, true) if a.is_one() => Ok(g1.clone()),
            (true, false) if b.is_one() => Ok(g2.clone()),
            _ => g1.combine(a, &g2, b),
        }
    };
    PencilState::new(mix(&t[(0, 0)], &t[(0, 1)])?, mix(&t[(1, 0)], &t[(1, 1)])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> GaussianRational {
        GaussianRational::ratio(a, b)
    }

    fn diag_ints(v: &[i64]) -> ExactMatrix {
        ExactMatrix::diag(&v.iter().map(|&x| GaussianRational::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_triple_is_a_no_op() {
        let s = PencilState::new(diag_ints(&[1, 2, 3]), ExactMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]))
            .unwrap();
        assert_eq!(apply_ilo(&s, &ILOTriple::identity(3, 3)).unwrap(), s);
    }

    #[test]
    fn two_eigenvalue_family_loses_its_parameters() {
        // E = I, J = diag(2, 3, 0, 0, 0)
        let s = PencilState::new(ExactMatrix::identity(5), diag_ints(&[2, 3, 0, 0, 0])).unwrap();
        let t = ExactMatrix::from_rows(vec![vec![q(3, -1), q(3, 2)], vec![q(0, 1), q(1, 2)]]).unwrap();
        let p = ExactMatrix::diag(&[q(1, 1), q(2, 3), q(-1, 3), q(-1, 3), q(-1, 3)]);
        let op = ILOTriple::new(t, p, ExactMatrix::identity(5)).unwrap();
        let out = apply_ilo(&s, &op).unwrap();
        assert_eq!(out.gamma1(), &diag_ints(&[0, 1, 1, 1, 1]));
        assert_eq!(out.gamma2(), &diag_ints(&[1, 1, 0, 0, 0]));
    }

    #[test]
    fn random_ilo_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, n) in [(2, 2), (2, 3), (3, 4), (4, 4)] {
            let s = PencilState::new(
                ExactMatrix::from_fn(m, n, |i, j| q((i * 3 + j) as i64 - 4, 1 + (i + j) as i64 % 3)),
                ExactMatrix::from_fn(m, n, |i, j| q((i as i64 - j as i64) * 2, 1)),
            )
            .unwrap();
            let op = ILOTriple::random(m, n, &mut rng);
            let back = apply_ilo(&apply_ilo(&s, &op).unwrap(), &op.inverse()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn json_form() {
        let s = PencilState::new(diag_ints(&[1, 0]), ExactMatrix::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![GaussianRational::i(), q(-3, 1)]]).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"m":2,"n":2,"gamma1":[["1","0"],["0","0"]],"gamma2":[["1/2","0"],["i","-3"]]}"#
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            PencilState::new(ExactMatrix::zeros(2, 3), ExactMatrix::zeros(3, 2)),
            Err(Error::ShapeMismatch(_))
        ));
        let s = PencilState::new(ExactMatrix::zeros(2, 3), ExactMatrix::zeros(2, 3)).unwrap();
        assert!(matches!(apply_ilo(&s, &ILOTriple::identity(3, 2)), Err(Error::ShapeMismatch(_))));
        assert_eq!(
            ILOTriple::new(ExactMatrix::identity(2), ExactMatrix::zeros(2, 2), ExactMatrix::identity(2)),
            Err(Error::SingularMatrix)
        );
    }
}
