use std::fmt;

use serde::{Serialize, Serializer};

use super::{pencil_structure, PencilState, PencilStructure};
use crate::counting::SegreSymbol;
use crate::error::{Error, Result};
use crate::exactnum::ExactMatrix;
use crate::nonlocal::{moduli_of, Moduli};

/// Column (`ε`) and row (`η`) minimal indices, each sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SingularShape {
    pub col: Vec<usize>,
    pub row: Vec<usize>,
}

impl SingularShape {
    pub fn new(mut col: Vec<usize>, mut row: Vec<usize>) -> Self {
        col.sort_unstable();
        row.sort_unstable();
        SingularShape { col, row }
    }

    pub fn is_empty(&self) -> bool {
        self.col.is_empty() && self.row.is_empty()
    }

    fn index_sum(&self) -> usize {
        self.col.iter().chain(&self.row).sum()
    }
}

/// Complete SLOCC invariant of a true tripartite state.
///
/// `params == None` either means the class has no continuous moduli or, for
/// catalog entries, that the label names the whole family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    m_dim: usize,
    n_dim: usize,
    null_rows: usize,
    b_rank_excess: usize,
    segre_shape: SegreSymbol,
    singular_shape: SingularShape,
    params: Option<Moduli>,
}

impl ClassLabel {
    /// Checks that the Jordan part and the singular blocks fill `m × n`.
    pub fn new(
        m_dim: usize,
        n_dim: usize,
        segre_shape: SegreSymbol,
        singular_shape: SingularShape,
        params: Option<Moduli>,
    ) -> Result<Self> {
        let core = segre_shape.total() + singular_shape.index_sum();
        if core + singular_shape.row.len() != m_dim || core + singular_shape.col.len() != n_dim {
            return Err(Error::InvalidFamily(format!(
                "{segre_shape} with indices {:?}/{:?} does not fill {m_dim}x{n_dim}",
                singular_shape.col, singular_shape.row
            )));
        }
        let normal_rank = m_dim - singular_shape.row.len();
        let null_rows = m_dim.min(n_dim) - normal_rank;
        let b_rank_excess = singular_shape.index_sum() - singular_shape.col.len() - singular_shape.row.len();
        Ok(ClassLabel { m_dim, n_dim, null_rows, b_rank_excess, segre_shape, singular_shape, params })
    }

    fn from_structure(st: &PencilStructure) -> Self {
        let singular = SingularShape::new(st.col_min_indices().to_vec(), st.row_min_indices().to_vec());
        let params = moduli_of(st.eigen_groups());
        Self::new(st.m_dim(), st.n_dim(), st.segre_symbol(), singular, params).expect("structure is balanced")
    }

    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    /// `i`: zero rows of the first slice in the canonical pair.
    pub fn null_rows(&self) -> usize {
        self.null_rows
    }

    /// `j`: rank of the singular block beyond its initial staircase.
    pub fn b_rank_excess(&self) -> usize {
        self.b_rank_excess
    }

    pub fn segre_shape(&self) -> &SegreSymbol {
        &self.segre_shape
    }

    pub fn singular_shape(&self) -> &SingularShape {
        &self.singular_shape
    }

    pub fn params(&self) -> Option<&Moduli> {
        self.params.as_ref()
    }

    /// The label with its continuous moduli dropped.
    pub fn family(&self) -> ClassLabel {
        ClassLabel { params: None, ..self.clone() }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}x{} i={} j={} {} eps=({}) eta=({})",
            self.m_dim,
            self.n_dim,
            self.null_rows,
            self.b_rank_excess,
            self.segre_shape,
            list(&self.singular_shape.col),
            list(&self.singular_shape.row)
        )?;
        if let Some(p) = &self.params {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct LabelDoc<'a> {
    m: usize,
    n: usize,
    null_rows: usize,
    b_rank_excess: usize,
    segre: String,
    col_indices: &'a [usize],
    row_indices: &'a [usize],
    params: Option<&'a Moduli>,
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabelDoc {
            m: self.m_dim,
            n: self.n_dim,
            null_rows: self.null_rows,
            b_rank_excess: self.b_rank_excess,
            segre: self.segre_shape.to_string(),
            col_indices: &self.singular_shape.col,
            row_indices: &self.singular_shape.row,
            params: self.params.as_ref(),
        }
        .serialize(s)
    }
}

/// False for product states across the qubit cut, states that fit in a
/// smaller M or N, and the bipartite pair `(I, I)` up to ILOs.
pub fn is_true_tripartite(s: &PencilState) -> bool {
    let (g1, g2) = (s.gamma1(), s.gamma2());
    let (m, n) = g1.shape();
    let slices = ExactMatrix::from_fn(2, m * n, |k, e| if k == 0 { &g1[(e / n, e % n)] } else { &g2[(e / n, e % n)] }.clone());
    if slices.rank() < 2 {
        return false;
    }
    let side = ExactMatrix::from_fn(m, 2 * n, |i, j| if j < n { &g1[(i, j)] } else { &g2[(i, j - n)] }.clone());
    let stacked = ExactMatrix::from_fn(2 * m, n, |i, j| if i < m { &g1[(i, j)] } else { &g2[(i - m, j)] }.clone());
    // With both flattenings full, independent slices already rule out (I, I).
    side.rank() == m && stacked.rank() == n
}

pub fn class_label(s: &PencilState) -> Result<ClassLabel> {
    if !is_true_tripartite(s) {
        return Err(Error::NotTrueTripartite);
    }
    Ok(ClassLabel::from_structure(&pencil_structure(s)?))
}
