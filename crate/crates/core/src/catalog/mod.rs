//! Enumeration of all SLOCC families of 2×M×N states, explicit
//! representatives and cross-checks against the class count.
//!
//! A family is fixed by `(i, j)`, a Segre symbol of size `2M − N − 3i − j`
//! and a singular block: `i + N − M` column indices `ε ≥ 1` and `i` row
//! indices `η ≥ 1` whose excess over all ones totals `j`. Distributing that
//! excess is counted by `F(j, i, i + N − M)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::counting::{omega_total, partitions_with_at_most, segre_enumerate, Counter, Partition};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::pencil::{class_label, is_true_tripartite, ClassLabel, PencilState, SingularShape};

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m < 2 || m > n || n > 2 * m {
        return Err(Error::DomainError(format!("catalog needs 2 <= M <= N <= 2M, got {m}x{n}")));
    }
    Ok(())
}

/// `k` indices `1 + p` for the parts `p` of a partition of `excess` into at
/// most `k` parts, padded with ones.
fn index_lists(excess: usize, k: usize) -> Vec<Vec<usize>> {
    partitions_with_at_most(excess, k)
        .into_iter()
        .map(|p| {
            let mut v: Vec<usize> = p.iter().map(|x| x + 1).collect();
            v.resize(k, 1);
            v
        })
        .collect()
}

/// The singular shapes with `i` row indices, `c` column indices and
/// excess `j`.
fn singular_shapes(j: usize, i: usize, c: usize) -> Vec<SingularShape> {
    let mut out = Vec::new();
    for a in 0..=j {
        for col in index_lists(a, c) {
            for row in index_lists(j - a, i) {
                out.push(SingularShape::new(col.clone(), row));
            }
        }
    }
    out
}

/// Family labels (no parameters) for `2 ≤ M ≤ N ≤ 2M`, ordered by
/// `(i, j)`, then Segre symbol, then singular shape.
pub fn enumerate_labels(m: usize, n: usize) -> Result<Vec<ClassLabel>> {
    check_dims(m, n)?;
    let budget = 2 * m - n;
    let mut out = Vec::new();
    for i in 0..=budget / 3 {
        for j in 0..=budget - 3 * i {
            let shapes = singular_shapes(j, i, i + n - m);
            for symbol in segre_enumerate(budget - 3 * i - j) {
                if m == n && i == 0 && j == 0 && symbol.is_scalar() {
                    continue;
                }
                for shape in &shapes {
                    out.push(ClassLabel::new(m, n, symbol.clone(), shape.clone(), None)?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    State(PencilState),
    Unavailable(String),
}

impl Representative {
    pub fn state(&self) -> Option<&PencilState> {
        match self {
            Representative::State(s) => Some(s),
            Representative::Unavailable(_) => None,
        }
    }
}

/// Sample eigenvalue for the `k`-th Segre group: `0` for the first, then
/// `∞, 1, 1/2, 1/3, …`. With simple eigenvalues this yields the normal form
/// `(diag(0, 1, 2, 3, …, 1, …), diag(1, 1, 1, 1, …, 0, …))`.
fn sample_point(k: usize) -> Option<GaussianRational> {
    match k {
        0 => Some(GaussianRational::zero()),
        1 => None,
        _ => Some(GaussianRational::ratio(1, k as i64 - 1)),
    }
}

/// Jordan block of size `s` at `point` (`None` is `∞`).
fn jordan_block(s: usize, point: Option<&GaussianRational>) -> (ExactMatrix, ExactMatrix) {
    let shift = ExactMatrix::from_fn(s, s, |r, c| if c == r + 1 { GaussianRational::one() } else { GaussianRational::zero() });
    match point {
        None if s == 1 => (ExactMatrix::zeros(1, 1), ExactMatrix::identity(1)),
        None => (shift, ExactMatrix::identity(s)),
        Some(mu) if s == 1 && !mu.is_zero() => {
            (ExactMatrix::diag(&[mu.inv().expect("nonzero")]), ExactMatrix::identity(1))
        }
        Some(mu) => {
            let j = ExactMatrix::from_fn(s, s, |r, c| {
                if r == c {
                    mu.clone()
                } else {
                    shift[(r, c)].clone()
                }
            });
            (ExactMatrix::identity(s), j)
        }
    }
}

/// `L_ε`: `([I_ε | 0], [0 | I_ε])`, of size `ε × (ε+1)`.
fn column_block(eps: usize) -> (ExactMatrix, ExactMatrix) {
    let one = |off: usize| {
        ExactMatrix::from_fn(eps, eps + 1, |r, c| if c == r + off { GaussianRational::one() } else { GaussianRational::zero() })
    };
    (one(0), one(1))
}

fn direct_sum(blocks: &[(ExactMatrix, ExactMatrix)]) -> (ExactMatrix, ExactMatrix) {
    let firsts: Vec<_> = blocks.iter().map(|b| b.0.clone()).collect();
    let seconds: Vec<_> = blocks.iter().map(|b| b.1.clone()).collect();
    (ExactMatrix::block_diag(&firsts), ExactMatrix::block_diag(&seconds))
}

/// A state in the family `label`: Jordan blocks at sample eigenvalues
/// (non-anchor groups first, anchor group at 0 last), then `L_ε` and `L_ηᵀ`
/// blocks.
pub fn representative(label: &ClassLabel) -> Representative {
    let groups: &[Partition] = label.segre_shape().groups();
    let mut blocks = Vec::new();
    for k in (1..groups.len()).chain(groups.iter().take(1).map(|_| 0)) {
        let point = sample_point(k);
        for &s in &groups[k] {
            blocks.push(jordan_block(s, point.as_ref()));
        }
    }
    let shape = label.singular_shape();
    blocks.extend(shape.col.iter().map(|&e| column_block(e)));
    blocks.extend(shape.row.iter().map(|&e| {
        let (a, b) = column_block(e);
        (a.transpose(), b.transpose())
    }));
    let (g1, g2) = direct_sum(&blocks);
    let state = match PencilState::new(g1, g2) {
        Ok(s) => s,
        Err(e) => return Representative::Unavailable(e.to_string()),
    };
    if !is_true_tripartite(&state) {
        return Representative::Unavailable("family is not truly tripartite".into());
    }
    Representative::State(state)
}

/// Per-`(i, j)` comparison of enumerated labels with `ω_{M,N}(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub i: usize,
    pub j: usize,
    pub enumerated: usize,
    pub formula: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub m: usize,
    pub n: usize,
    pub enumerated: usize,
    pub omega_total: u64,
    pub cells: Vec<CellCount>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.enumerated as u64 == self.omega_total
            && self.cells.iter().all(|c| c.enumerated as u64 == c.formula)
    }
}

pub fn count_check(m: usize, n: usize) -> Result<CountReport> {
    let labels = enumerate_labels(m, n)?;
    let mut counter = Counter::new();
    let budget = 2 * m - n;
    let mut cells = Vec::new();
    for i in 0..=budget / 3 {
        for j in 0..=budget - 3 * i {
            let enumerated = labels.iter().filter(|l| l.null_rows() == i && l.b_rank_excess() == j).count();
            let mut formula: u64 = counter.omega(m, n, i, j)?.try_into().expect("cell fits u64");
            if m == n && i == 0 && j == 0 {
                formula -= 1;
            }
            cells.push(CellCount { i, j, enumerated, formula });
        }
    }
    let omega_total = omega_total(m, n)?.try_into().expect("total fits u64");
    Ok(CountReport { m, n, enumerated: labels.len(), omega_total, cells })
}

#[derive(Serialize)]
pub struct CatalogEntry {
    pub label: ClassLabel,
    pub representative: Option<PencilState>,
}

/// JSON-ready catalog of one `(M, N)`.
#[derive(Serialize)]
pub struct CatalogDocument {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub labels: Vec<CatalogEntry>,
}

pub fn catalog_document(m: usize, n: usize) -> Result<CatalogDocument> {
    let labels = enumerate_labels(m, n)?;
    let entries: Vec<CatalogEntry> = labels
        .into_iter()
        .map(|label| {
            let representative = representative(&label).state().cloned();
            CatalogEntry { label, representative }
        })
        .collect();
    Ok(CatalogDocument { m, n, count: entries.len(), labels: entries })
}

/// Whether `representative(label)` classifies back to `label`'s family.
pub fn round_trips(label: &ClassLabel) -> Result<bool> {
    match representative(label) {
        Representative::State(s) => Ok(class_label(&s)?.family() == *label),
        Representative::Unavailable(_) => Ok(false),
    }
}
