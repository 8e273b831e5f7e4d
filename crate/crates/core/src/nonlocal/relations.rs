use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::{Generator, ParamVector, SymmetryElement};
use crate::error::{Error, Result};

/// Outcome of one relation family over all sampled vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRelationReport {
    pub m: usize,
    pub extra_h: bool,
    pub trials: usize,
    pub checks: Vec<RelationCheck>,
}

impl GroupRelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

impl fmt::Display for GroupRelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.extra_h { " with H" } else { "" };
        for c in &self.checks {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            write!(f, "m={}{h} {}: {verdict} ({} checks", self.m, c.relation, c.checked)?;
            if let Some(w) = &c.first_failure {
                write!(f, ", first failure {w}")?;
            }
            writeln!(f, ")")?;
        }
        Ok(())
    }
}

/// Checks the Coxeter relations of the symmetric group on random vectors,
/// with `σ_i = A_i` for `i ≤ m−3`, `σ_{m−2} = F`, `σ_{m−1} = G` and
/// `σ_m = H` when `extra_h`.
pub fn verify_group_relations<R: Rng + ?Sized>(
    m: usize,
    extra_h: bool,
    trials: usize,
    rng: &mut R,
) -> Result<GroupRelationReport> {
    if m < 3 {
        return Err(Error::DomainError(format!("group relations need m >= 3, got {m}")));
    }
    let sigma = Generator::all_for(m, extra_h);
    let word = |ks: &[usize]| SymmetryElement::new(ks.iter().map(|&k| sigma[k]).collect());
    let n = sigma.len();
    let mut families: Vec<(&'static str, Vec<(SymmetryElement, SymmetryElement)>)> = vec![
        ("involution", (0..n).map(|i| (word(&[i, i]), word(&[]))).collect()),
        (
            "commutation",
            (0..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))).map(|(i, j)| (word(&[i, j]), word(&[j, i]))).collect(),
        ),
        ("braid", (0..n.saturating_sub(1)).map(|i| (word(&[i, i + 1, i]), word(&[i + 1, i, i + 1]))).collect()),
    ];
    let samples: Vec<ParamVector> = (0..trials).map(|_| ParamVector::random(m, extra_h, rng)).collect();
    let checks = families
        .drain(..)
        .map(|(relation, pairs)| {
            let mut check = RelationCheck { relation, checked: 0, failures: 0, first_failure: None };
            for v in &samples {
                for (lhs, rhs) in &pairs {
                    check.checked += 1;
                    if lhs.apply(v)? != rhs.apply(v)? {
                        check.failures += 1;
                        check.first_failure.get_or_insert_with(|| format!("{lhs:?} vs {rhs:?} at {v}"));
                    }
                }
            }
            Ok(check)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupRelationReport { m, extra_h, trials, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational;
    use crate::nonlocal::{gen_f, gen_g};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relations_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 3..=7 {
            for h in [false, true] {
                let r = verify_group_relations(m, h, 50, &mut rng).unwrap();
                assert!(r.passed(), "{r}");
                assert_eq!(r.checks.len(), 3);
            }
        }
        assert!(verify_group_relations(2, false, 1, &mut rng).is_err());
    }

    #[test]
    fn single_parameter_braid() {
        // FGF(λ) = GFG(λ) = λ/(λ−1)
        let v = ParamVector::new(vec![GaussianRational::ratio(5, 3)], false).unwrap();
        let fgf = gen_f(&gen_g(&gen_f(&v)));
        assert_eq!(fgf, gen_g(&gen_f(&gen_g(&v))));
        assert_eq!(fgf.values(), &[GaussianRational::ratio(5, 2)]);
    }
}
