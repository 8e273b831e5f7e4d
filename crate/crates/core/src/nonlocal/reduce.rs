use num_traits::{One, Zero};

use super::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::pencil::{ILOTriple, PencilState};

/// `(I, diag(λ₁, …, λ_m, 0, …, 0))` in 2×N×N.
pub fn eigen_family_state(eigs: &[GaussianRational], n: usize) -> Result<PencilState> {
    if eigs.len() > n {
        return Err(Error::InvalidFamily(format!("{} eigenvalues in dimension {n}", eigs.len())));
    }
    let mut j = eigs.to_vec();
    j.resize(n, GaussianRational::zero());
    PencilState::new(ExactMatrix::identity(n), ExactMatrix::diag(&j))
}

/// `(diag(0, 1, λ⁽¹⁾, …, λ⁽ᵐ⁻²⁾, 1, …, 1), diag(1, …, 1, 0, …, 0))` with `m`
/// ones in the second slice.
pub fn normal_form_state(v: &ParamVector, n: usize) -> Result<PencilState> {
    let m = v.m();
    if m > n {
        return Err(Error::InvalidFamily(format!("{m} eigenvalues in dimension {n}")));
    }
    let one = GaussianRational::one;
    let mut e = vec![GaussianRational::zero(), one()];
    e.extend(v.values().iter().cloned());
    e.resize(n, one());
    let mut j = vec![one(); m];
    j.resize(n, GaussianRational::zero());
    PencilState::new(ExactMatrix::diag(&e), ExactMatrix::diag(&j))
}

/// Parameters of the family [`eigen_family_state`]`(eigs, n)` and the ILO
/// carrying it to [`normal_form_state`].
///
/// Requires `2 ≤ m < N` with distinct nonzero eigenvalues; `m = N` leaves no
/// zero eigenvalue to anchor the reduction and is rejected.
pub fn reduce_to_normal_form(eigs: &[GaussianRational], n: usize) -> Result<(ParamVector, ILOTriple)> {
    let m = eigs.len();
    if m < 2 || m >= n {
        return Err(Error::InvalidFamily(format!("need 2 <= m < N, got m = {m}, N = {n}")));
    }
    for (k, x) in eigs.iter().enumerate() {
        if x.is_zero() {
            return Err(Error::InvalidFamily("zero eigenvalue".into()));
        }
        if eigs[..k].contains(x) {
            return Err(Error::InvalidFamily(format!("eigenvalue {x} repeated")));
        }
    }
    let (l1, l2) = (&eigs[0], &eigs[1]);
    let d12 = l1 - l2;
    let values = eigs[2..].iter().map(|lk| &(&(l1 - lk) / &d12) * &(l2 / lk)).collect();
    let params = ParamVector::new(values, n == m + 1)?;

    let t = ExactMatrix::from_rows(vec![
        vec![l2 / &d12, -&(l2 / &(l1 * &d12))],
        vec![GaussianRational::zero(), l1.inv()?],
    ])?;
    let mut p: Vec<GaussianRational> = eigs.iter().map(|lk| l1 / lk).collect();
    p.resize(n, &d12 / l2);
    let op = ILOTriple::new(t, ExactMatrix::diag(&p), ExactMatrix::identity(n))?;
    Ok((params, op))
}
