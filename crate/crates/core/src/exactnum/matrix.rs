use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect();
        Self::from_rows(rows).expect("rectangular integer rows")
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { GaussianRational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `a·self + b·other`, the workhorse for evaluating pencils.
    pub fn combine(&self, a: &GaussianRational, other: &Self, b: &GaussianRational) -> Result<Self> {
        self.zip_with(other, |x, y| {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => GaussianRational::zero(),
                (true, false) => b * y,
                (false, true) => a * x,
                (false, false) => a * x + b * y,
            }
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal direct sum; empty blocks (0 rows or 0 columns) are allowed.
    pub fn block_diag(blocks: &[ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn rank(&self) -> usize {
        let (mut work, _) = self.to_gaussian_integers();
        bareiss(&mut work, self.rows, self.cols).rank
    }

    pub fn determinant(&self) -> Result<GaussianRational> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("determinant of {:?}", self.shape())));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(GaussianRational::one());
        }
        let (mut work, scale) = self.to_gaussian_integers();
        let outcome = bareiss(&mut work, n, n);
        if outcome.rank < n {
            return Ok(GaussianRational::zero());
        }
        let (re, im) = work[n * n - 1].clone();
        let mut det = GaussianRational::new(BigRational::from_integer(re), BigRational::from_integer(im));
        if outcome.swaps % 2 == 1 {
            det = -det;
        }
        Ok(&det / &GaussianRational::from(scale))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of {:?}", self.shape())));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                a.axpy_row(r, col, &factor);
                inv.axpy_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &GaussianRational) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * k;
            self[(r, j)] = v;
        }
    }

    /// row[target] -= factor · row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &GaussianRational) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if s.is_zero() {
                continue;
            }
            let v = &self[(target, j)] - &(factor * s);
            self[(target, j)] = v;
        }
    }

    /// Scales each row by the lcm of its denominators, returning Gaussian
    /// integer entries and the product of the row scale factors.
    fn to_gaussian_integers(&self) -> (Vec<(BigInt, BigInt)>, BigInt) {
        let mut out = Vec::with_capacity(self.data.len());
        let mut total = BigInt::one();
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            for x in row {
                let re = x.re() * BigRational::from_integer(l.clone());
                let im = x.im() * BigRational::from_integer(l.clone());
                out.push((re.to_integer(), im.to_integer()));
            }
            total *= l;
        }
        (out, total)
    }
}

struct BareissOutcome {
    rank: usize,
    swaps: usize,
}

type GaussInt = (BigInt, BigInt);

fn gi_is_zero(x: &GaussInt) -> bool {
    x.0.is_zero() && x.1.is_zero()
}

fn gi_mul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gi_sub(a: GaussInt, b: GaussInt) -> GaussInt {
    (a.0 - b.0, a.1 - b.1)
}

/// Exact division; the caller guarantees divisibility.
fn gi_div_exact(a: &GaussInt, b: &GaussInt) -> GaussInt {
    if b.1.is_zero() {
        debug_assert!((&a.0 % &b.0).is_zero() && (&a.1 % &b.0).is_zero());
        return (&a.0 / &b.0, &a.1 / &b.0);
    }
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let num = gi_mul(a, &(b.0.clone(), -&b.1));
    debug_assert!((&num.0 % &norm).is_zero() && (&num.1 % &norm).is_zero());
    (num.0 / &norm, num.1 / norm)
}

/// Fraction-free (Bareiss) row echelon reduction over the Gaussian integers.
/// Every intermediate entry is a minor of the input, which bounds growth.
fn bareiss(a: &mut [GaussInt], rows: usize, cols: usize) -> BareissOutcome {
    let mut prev: GaussInt = (BigInt::one(), BigInt::zero());
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !gi_is_zero(&a[r * cols + col])) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + col].clone();
            for j in col + 1..cols {
                let t = gi_sub(gi_mul(&pivot, &a[i * cols + j]), gi_mul(&lead, &a[rank * cols + j]));
                a[i * cols + j] = gi_div_exact(&t, &prev);
            }
            a[i * cols + col] = (BigInt::zero(), BigInt::zero());
        }
        prev = pivot;
        rank += 1;
    }
    BareissOutcome { rank, swaps }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on incompatible shapes; use [`ExactMatrix::checked_mul`] otherwise.
impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("compatible shapes")
    }
}

/// Rows of exact scalar strings.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact rank.
pub fn mat_rank(a: &ExactMatrix) -> usize {
    a.rank()
}

/// Exact inverse; `SingularMatrix` when rank < dimension.
pub fn mat_inverse(a: &ExactMatrix) -> Result<ExactMatrix> {
    a.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&ExactMatrix::identity(5)), 5);
        assert_eq!(mat_rank(&ExactMatrix::zeros(3, 3)), 0);
        let d = ExactMatrix::diag(&[1, 1, 0, 0, 0].map(GaussianRational::from_int));
        assert_eq!(mat_rank(&d), 2);
        assert_eq!(mat_rank(&ExactMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_with_skipped_columns_and_complex_entries() {
        let a = ExactMatrix::from_ints(&[&[0, 1, 2, 3], &[0, 2, 4, 6], &[0, 0, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        // Second row is i times the first.
        let b = ExactMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i.clone(), &i * &i]]).unwrap();
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mat_inverse(&ExactMatrix::identity(3)).unwrap(), ExactMatrix::identity(3));
        let d = ExactMatrix::diag(&[q(2, 1), q(1, 3)]);
        assert_eq!(mat_inverse(&d).unwrap(), ExactMatrix::diag(&[q(1, 2), q(3, 1)]));
        let u = ExactMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(mat_inverse(&u).unwrap(), ExactMatrix::from_ints(&[&[1, -1], &[0, 1]]));
        let s = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(mat_inverse(&s), Err(Error::SingularMatrix));
        assert!(matches!(mat_inverse(&ExactMatrix::zeros(2, 3)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = ExactMatrix::from_rows(vec![
            vec![q(1, 2), q(2, 1), q(0, 1)],
            vec![q(-1, 3), q(1, 1), q(4, 1)],
            vec![q(2, 1), q(0, 1), q(1, 5)],
        ])
        .unwrap();
        // Cofactor expansion along the first row.
        let expect = q(1, 2) * (q(1, 5) - q(0, 1)) - q(2, 1) * (q(-1, 15) - q(8, 1));
        assert_eq!(a.determinant().unwrap(), expect);
        let swapped = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.determinant().unwrap(), q(-1, 1));
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-4i64..5, 1i64..4, -2i64..3), rows * cols).prop_map(move |v| {
            let data = v
                .into_iter()
                .map(|(n, d, im)| {
                    GaussianRational::new(BigRational::new(n.into(), d.into()), BigRational::from_integer(im.into()))
                })
                .collect();
            ExactMatrix::new(rows, cols, data).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inverse_roundtrip(a in arb_matrix(4, 4)) {
            if let Ok(inv) = a.inverse() {
                prop_assert_eq!(a.rank(), 4);
                prop_assert_eq!(&a * &inv, ExactMatrix::identity(4));
                prop_assert_eq!(&inv * &a, ExactMatrix::identity(4));
                prop_assert_eq!(inv.inverse().unwrap(), a.clone());
                prop_assert!(!a.determinant().unwrap().is_zero());
            } else {
                prop_assert!(a.rank() < 4);
                prop_assert!(a.determinant().unwrap().is_zero());
            }
        }

        #[test]
        fn rank_of_product_is_bounded(a in arb_matrix(3, 4), b in arb_matrix(4, 2)) {
            let ab = &a * &b;
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
