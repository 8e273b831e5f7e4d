use super::{PencilState, ProjectivePoint};
use crate::counting::{Partition, SegreSymbol};
use crate::error::{Error, Result};
use crate::exactnum::{poly_roots_partial, ExactMatrix, ExactPolynomial, GaussianRational};

/// Jordan block sizes (descending) of the regular part at one eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenGroup {
    pub point: ProjectivePoint,
    pub blocks: Partition,
}

/// Kronecker structure of `xΓ₁ + yΓ₂`.
///
/// A column minimal index `ε` stands for an `ε × (ε+1)` block `L_ε`, a row
/// minimal index `η` for its `(η+1) × η` transpose. The regular part is
/// described by its eigenvalues and their Jordan partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PencilStructure {
    m_dim: usize,
    n_dim: usize,
    col_min_indices: Vec<usize>,
    row_min_indices: Vec<usize>,
    eigen_groups: Vec<EigenGroup>,
}

impl PencilStructure {
    /// Assembles a structure from its parts, checking that the block
    /// dimensions add up to `m_dim × n_dim`.
    pub fn new(
        m_dim: usize,
        n_dim: usize,
        mut col_min_indices: Vec<usize>,
        mut row_min_indices: Vec<usize>,
        mut eigen_groups: Vec<EigenGroup>,
    ) -> Result<Self> {
        col_min_indices.sort_unstable();
        row_min_indices.sort_unstable();
        for g in &mut eigen_groups {
            g.blocks.sort_unstable_by(|a, b| b.cmp(a));
            if g.blocks.is_empty() || g.blocks.contains(&0) {
                return Err(Error::InvalidFamily(format!("empty Jordan partition at {}", g.point)));
            }
        }
        eigen_groups.sort_by(|a, b| a.point.cmp(&b.point));
        if eigen_groups.windows(2).any(|w| w[0].point == w[1].point) {
            return Err(Error::InvalidFamily("repeated eigenvalue".into()));
        }
        let s = PencilStructure { m_dim, n_dim, col_min_indices, row_min_indices, eigen_groups };
        let (rows, cols) = s.block_dims();
        if (rows, cols) != (m_dim, n_dim) {
            return Err(Error::InvalidFamily(format!("blocks fill {rows}x{cols}, not {m_dim}x{n_dim}")));
        }
        Ok(s)
    }

    fn block_dims(&self) -> (usize, usize) {
        let reg = self.regular_dim();
        let eps: usize = self.col_min_indices.iter().sum();
        let eta: usize = self.row_min_indices.iter().sum();
        (reg + eps + eta + self.row_min_indices.len(), reg + eps + eta + self.col_min_indices.len())
    }

    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn col_min_indices(&self) -> &[usize] {
        &self.col_min_indices
    }

    pub fn row_min_indices(&self) -> &[usize] {
        &self.row_min_indices
    }

    pub fn eigen_groups(&self) -> &[EigenGroup] {
        &self.eigen_groups
    }

    pub fn regular_dim(&self) -> usize {
        self.eigen_groups.iter().flat_map(|g| &g.blocks).sum()
    }

    pub fn normal_rank(&self) -> usize {
        self.m_dim - self.row_min_indices.len()
    }

    pub fn is_regular(&self) -> bool {
        self.col_min_indices.is_empty() && self.row_min_indices.is_empty()
    }

    pub fn segre_symbol(&self) -> SegreSymbol {
        SegreSymbol::new(self.eigen_groups.iter().map(|g| g.blocks.clone()).collect())
    }

    /// The structure of the M ↔ N transposed pencil.
    pub fn transpose(&self) -> Self {
        PencilStructure {
            m_dim: self.n_dim,
            n_dim: self.m_dim,
            col_min_indices: self.row_min_indices.clone(),
            row_min_indices: self.col_min_indices.clone(),
            eigen_groups: self.eigen_groups.clone(),
        }
    }
}

/// Computes the Kronecker structure from exact rank sequences.
///
/// Fails with [`Error::IrreducibleRemainder`] when part of the regular
/// spectrum is not Gaussian-rational.
pub fn pencil_structure(s: &PencilState) -> Result<PencilStructure> {
    let (g1, g2) = (s.gamma1(), s.gamma2());
    let (m, n) = g1.shape();
    let r = normal_rank(g1, g2);
    let col = minimal_indices(g1, g2, n - r);
    let row = minimal_indices(&g1.transpose(), &g2.transpose(), m - r);
    let eps: usize = col.iter().sum();
    let eta: usize = row.iter().sum();
    let reg = r - eps - eta;

    let mut groups = Vec::new();
    if reg > 0 {
        let det = spectral_polynomial(g1, g2, r);
        let regular = m == r && n == r;
        let factored = poly_roots_partial(&det)?;
        for (value, mult) in factored.roots {
            let pencil = g2.combine(&GaussianRational::from(1), g1, &-&value)?;
            if regular || pencil.rank() < r {
                let point = ProjectivePoint::finite(value);
                let blocks = if regular && mult == 1 { vec![1] } else { jordan_partition(g1, g2, &point, r) };
                groups.push(EigenGroup { point, blocks });
            }
        }
        if g1.rank() < r {
            let point = ProjectivePoint::infinity();
            let at_infinity = det.degree().map(|d| r - d);
            let blocks = if regular && at_infinity == Some(1) { vec![1] } else { jordan_partition(g1, g2, &point, r) };
            groups.push(EigenGroup { point, blocks });
        }
        let found: usize = groups.iter().flat_map(|g| &g.blocks).sum();
        assert!(found <= reg, "regular part overfilled: {found} > {reg}");
        if found < reg {
            return Err(Error::IrreducibleRemainder(reg - found));
        }
    }
    let out = PencilStructure::new(m, n, col, row, groups).expect("Kronecker dimension bookkeeping");
    Ok(out)
}

pub(crate) fn normal_rank(g1: &ExactMatrix, g2: &ExactMatrix) -> usize {
    let full = g1.rows().min(g1.cols());
    let mut best = 0;
    // Rank drops at no more than `full` values of t, so one of these is generic.
    for t in 0..=full as i64 {
        let r = g1.combine(&GaussianRational::from(1), g2, &GaussianRational::from(t)).expect("same shape").rank();
        best = best.max(r);
        if best == full {
            break;
        }
    }
    best
}

/// Column minimal indices of `xΓ₁ + yΓ₂`, of which there are `count`.
///
/// Polynomial kernel vectors of degree ≤ k span a space of dimension
/// `Σ_{ε ≤ k} (k − ε + 1)`, read off as the nullity of a block Toeplitz matrix.
fn minimal_indices(g1: &ExactMatrix, g2: &ExactMatrix, count: usize) -> Vec<usize> {
    let (m, n) = g1.shape();
    let mut out = Vec::with_capacity(count);
    let (mut prev_nullity, mut prev_upto) = (0usize, 0usize);
    let mut k = 0;
    while out.len() < count {
        assert!(k <= n, "minimal indices exceed the column dimension");
        let mut t = ExactMatrix::zeros((k + 2) * m, (k + 1) * n);
        for j in 0..=k {
            t.set_block(j * m, j * n, g1);
            t.set_block((j + 1) * m, j * n, g2);
        }
        let nullity = (k + 1) * n - t.rank();
        let upto = nullity - prev_nullity;
        out.extend(std::iter::repeat_n(k, upto - prev_upto));
        prev_nullity = nullity;
        prev_upto = upto;
        k += 1;
    }
    out
}

/// A polynomial in λ vanishing at every finite eigenvalue: `det(Γ₂ − λΓ₁)`
/// for a regular square pencil, otherwise the gcd of determinants of two
/// r×r compressions. Extra roots are filtered out by the caller.
fn spectral_polynomial(g1: &ExactMatrix, g2: &ExactMatrix, r: usize) -> ExactPolynomial {
    let (m, n) = g1.shape();
    let det_poly = |a: &ExactMatrix, b: &ExactMatrix| {
        let samples: Vec<_> = (0..=r as i64)
            .map(|x| {
                let x = GaussianRational::from(x);
                let y = b.combine(&GaussianRational::from(1), a, &-&x).expect("same shape").determinant().expect("square");
                (x, y)
            })
            .collect();
        ExactPolynomial::interpolate(&samples).expect("distinct nodes")
    };
    if m == r && n == r {
        return det_poly(g1, g2);
    }
    let mut acc: Option<ExactPolynomial> = None;
    let mut seen = 0;
    for seed in 0..16u64 {
        let u = small_matrix(r, m, 2 * seed);
        let v = small_matrix(n, r, 2 * seed + 1);
        let p = det_poly(&(&(&u * g1) * &v), &(&(&u * g2) * &v));
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p,
            Some(q) => q.gcd(&p),
        });
        seen += 1;
        if seen == 2 {
            break;
        }
    }
    acc.expect("a generic compression keeps the normal rank")
}

/// Deterministic pseudo-random integer matrix with entries in `[-5, 5]`.
fn small_matrix(rows: usize, cols: usize, seed: u64) -> ExactMatrix {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    ExactMatrix::from_fn(rows, cols, |_, _| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        GaussianRational::from((state % 11) as i64 - 5)
    })
}

/// Jordan partition at `point` from the Weyr sequence.
///
/// `W_k` is block lower bidiagonal with `A₀ = νΓ₂ − μΓ₁` on the diagonal and
/// the pencil derivative on the subdiagonal. Singular blocks and other
/// eigenvalues keep full rank in every `W_k`, so `k·r − rank(W_k)` equals
/// `Σ min(k, s)` over the Jordan blocks `s` at `point`.
fn jordan_partition(g1: &ExactMatrix, g2: &ExactMatrix, point: &ProjectivePoint, r: usize) -> Partition {
    let (m, n) = g1.shape();
    let a0 = g2.combine(point.nu(), g1, &-point.mu()).expect("same shape");
    let d = if point.is_infinite() { g2 } else { g1 };
    let mut at_least = Vec::new();
    let mut prev = 0;
    for k in 1.. {
        let mut w = ExactMatrix::zeros(k * m, k * n);
        for j in 0..k {
            w.set_block(j * m, j * n, &a0);
            if j > 0 {
                w.set_block(j * m, (j - 1) * n, d);
            }
        }
        let deficiency = k * r - w.rank();
        if deficiency == prev {
            break;
        }
        at_least.push(deficiency - prev);
        prev = deficiency;
    }
    let mut blocks = Vec::new();
    for (k, &c) in at_least.iter().enumerate().rev() {
        let exact = c - at_least.get(k + 1).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(k + 1, exact));
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn state(a: &[&[i64]], b: &[&[i64]]) -> PencilState {
        PencilState::new(ExactMatrix::from_ints(a), ExactMatrix::from_ints(b)).unwrap()
    }

    fn groups(s: &PencilStructure) -> Vec<(String, Vec<usize>)> {
        s.eigen_groups().iter().map(|e| (e.point.to_string(), e.blocks.clone())).collect()
    }

    #[test]
    fn diagonal_pencil() {
        let s = PencilState::new(
            ExactMatrix::identity(5),
            ExactMatrix::diag(&[g(2), g(3), g(5), g(0), g(0)]),
        )
        .unwrap();
        let st = pencil_structure(&s).unwrap();
        assert!(st.is_regular());
        assert_eq!(
            groups(&st),
            vec![("0".into(), vec![1, 1]), ("2".into(), vec![1]), ("3".into(), vec![1]), ("5".into(), vec![1])]
        );
    }

    #[test]
    fn identity_pair_is_one_scalar_group() {
        let s = PencilState::new(ExactMatrix::identity(4), ExactMatrix::identity(4)).unwrap();
        let st = pencil_structure(&s).unwrap();
        assert_eq!(groups(&st), vec![("1".into(), vec![1, 1, 1, 1])]);
        assert!(st.segre_symbol().is_scalar());
    }

    #[test]
    fn zero_second_slice() {
        let s = PencilState::new(ExactMatrix::identity(3), ExactMatrix::zeros(3, 3)).unwrap();
        assert_eq!(groups(&pencil_structure(&s).unwrap()), vec![("0".into(), vec![1, 1, 1])]);
    }

    #[test]
    fn jordan_blocks_and_infinity() {
        // Γ₁ = diag(N₂, I₂), Γ₂ = diag(I₂, J₂(3)): a size-2 block at ∞ and at 3.
        let s = state(
            &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 3, 1], &[0, 0, 0, 3]],
        );
        let st = pencil_structure(&s).unwrap();
        assert_eq!(groups(&st), vec![("3".into(), vec![2]), ("inf".into(), vec![2])]);
        assert_eq!(st.segre_symbol().to_string(), "[22]");
    }

    #[test]
    fn singular_blocks() {
        // L₁ ⊕ L₁ᵀ ⊕ (eigenvalue 2): 1×2 + 2×1 + 1×1 = 4×4
        let s = state(
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]],
            &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]],
        );
        let st = pencil_structure(&s).unwrap();
        assert_eq!(st.col_min_indices(), &[1]);
        assert_eq!(st.row_min_indices(), &[1]);
        assert_eq!(groups(&st), vec![("2".into(), vec![1])]);
        assert_eq!(st.normal_rank(), 3);
    }

    #[test]
    fn zero_minimal_indices() {
        let s = state(&[&[1, 0, 0], &[0, 1, 0]], &[&[0, 1, 0], &[0, 0, 0]]);
        let st = pencil_structure(&s).unwrap();
        assert_eq!(st.col_min_indices(), &[0]);
        assert_eq!(groups(&st), vec![("0".into(), vec![2])]);
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        // Γ₂ has characteristic polynomial x² − 2.
        let s = state(&[&[1, 0], &[0, 1]], &[&[0, 2], &[1, 0]]);
        assert_eq!(pencil_structure(&s), Err(Error::IrreducibleRemainder(2)));
    }

    #[test]
    fn gaussian_eigenvalues() {
        // Γ₂ has characteristic polynomial x² + 1.
        let s = state(&[&[1, 0], &[0, 1]], &[&[0, -1], &[1, 0]]);
        let st = pencil_structure(&s).unwrap();
        assert_eq!(groups(&st), vec![("-i".into(), vec![1]), ("i".into(), vec![1])]);
    }
}
