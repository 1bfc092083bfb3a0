//! Exact linear algebra over the rationals.
//!
//! Every rank, kernel, quotient, and solve in this crate goes through the
//! dense matrix type defined here. Elimination is fraction-free
//! (Bareiss) on integer-scaled rows internally; all outputs are reduced
//! fractions and every representative choice is deterministic, so identical
//! inputs give identical outputs bit for bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Integer rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d` in reduced form. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q` with `q > 0`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("input vectors are linearly dependent")]
    DependentInput,
}

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinearError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != width {
                return Err(LinearError::ShapeMismatch {
                    context: "from_rows",
                    expected: width,
                    found: row.len(),
                });
            }
        }
        Ok(QMatrix {
            rows: height,
            cols: width,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, LinearError> {
        if self.cols != rhs.rows {
            return Err(LinearError::ShapeMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        let v = out.at(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinearError> {
        if v.len() != self.cols {
            return Err(LinearError::ShapeMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Reduced row echelon form, pivot columns, and rank.
    ///
    /// Rows are scaled to integers and eliminated fraction-free
    /// (Bareiss one-step with exact divisions by the previous pivot), then
    /// normalized to reduced fractions during back substitution. Pivot
    /// selection is the first nonzero entry in each column, so the result
    /// is deterministic.
    pub fn rref(&self) -> Rref {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| integerize_row(self.row(i)))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(sel) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, sel);
            let pivot = m[pivot_row][col].clone();
            for r in pivot_row + 1..self.rows {
                let factor = m[r][col].clone();
                for c in col..self.cols {
                    let num = &pivot * &m[r][c] - &factor * &m[pivot_row][c];
                    let rem = &num % &prev;
                    assert!(rem.is_zero(), "fraction-free elimination lost exactness");
                    m[r][c] = num / &prev;
                }
            }
            prev = pivot;
            pivots.push(col);
            pivot_row += 1;
        }

        let mut rat: Vec<Vec<Rational>> = m
            .into_iter()
            .map(|row| row.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let inv = rat[i][pc].clone();
            for c in pc..self.cols {
                rat[i][c] = &rat[i][c] / &inv;
            }
            for r in 0..i {
                let factor = rat[r][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in pc..self.cols {
                    rat[r][c] = &rat[r][c] - &factor * &rat[i][c];
                }
            }
        }

        let rank = pivots.len();
        Rref {
            matrix: QMatrix::from_rows(rat).expect("rows keep their length"),
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Echelon-normalized basis of `{v : M v = 0}`, ordered by free column.
    ///
    /// Returns exactly `cols - rank` vectors; each has a 1 in its own free
    /// column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -matrix.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b` exactly, setting free variables to zero.
    ///
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinearError> {
        if b.len() != self.rows {
            return Err(LinearError::ShapeMismatch {
                context: "solve right-hand side",
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut augmented = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                augmented.set(i, j, self.at(i, j).clone());
            }
            augmented.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivots, .. } = augmented.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.at(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` if singular.
    ///
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut augmented = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                augmented.set(i, j, self.at(i, j).clone());
            }
            augmented.set(i, n + i, Rational::one());
        }
        let Rref { matrix, pivots, .. } = augmented.rref();
        // singular iff some pivot falls in the adjoined identity block
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| matrix.at(i, n + j).clone()))
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", format_rational(self.at(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Clears the denominators of one row; preserves row span and kernel.
fn integerize_row(row: &[Rational]) -> Vec<BigInt> {
    let mut scale = BigInt::one();
    for entry in row {
        let d = entry.denom();
        let g = gcd(scale.clone(), d.clone());
        scale = scale / g * d;
    }
    row.iter()
        .map(|entry| entry.numer() * (&scale / entry.denom()))
        .collect()
}

fn gcd(a: BigInt, b: BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Incremental reduced-echelon basis of a growing span.
///
/// Feeding the same set of vectors in any order produces the same rows,
/// since the rows are kept fully reduced (they form the canonical reduced
/// echelon basis of the span).
#[derive(Debug, Clone, Default)]
pub struct EchelonTracker {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }

    /// Reduces `v` against the current rows; returns the residual if nonzero.
    pub fn reduce(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &factor * r;
                }
            }
        }
        if v.iter().all(Zero::is_zero) {
            None
        } else {
            Some(v)
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).is_none()
    }

    /// Inserts `v` if it enlarges the span; returns whether it did.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let Some(mut v) = self.reduce(v) else {
            return false;
        };
        let pivot = v
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero residual");
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x = &*x / &lead;
        }
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert_ne!(p, pivot);
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = &*x - &factor * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }
}

/// Extends the independent set `w` to a basis of the ambient space,
/// adding standard basis vectors in index order.
pub fn complement_basis(
    w: &[Vec<Rational>],
    ambient_dim: usize,
) -> Result<Vec<Vec<Rational>>, LinearError> {
    let mut tracker = EchelonTracker::new();
    for v in w {
        if v.len() != ambient_dim {
            return Err(LinearError::ShapeMismatch {
                context: "complement_basis input vector",
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if !tracker.insert(v) {
            return Err(LinearError::DependentInput);
        }
    }
    let mut completion = Vec::new();
    for i in 0..ambient_dim {
        if tracker.rank() == ambient_dim {
            break;
        }
        let mut e = vec![Rational::zero(); ambient_dim];
        e[i] = Rational::one();
        if tracker.insert(&e) {
            completion.push(e);
        }
    }
    Ok(completion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = QMatrix::identity(2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_tall_matrix() {
        // hand row-reduction: swap to put a pivot in each column
        let r = m(&[&[0, 1], &[1, 0], &[1, 1]]).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, m(&[&[1, 0], &[0, 1], &[0, 0]]));
    }

    #[test]
    fn rref_normalizes_fractions() {
        let a =
            QMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(3), rat(4)]]).unwrap();
        let r = a.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, QMatrix::identity(2));
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[&[2, 4, 1], &[0, 0, 3], &[2, 4, 4]]);
        let once = a.rref();
        let twice = once.matrix.rref();
        assert_eq!(once.matrix, twice.matrix);
        assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let z = QMatrix::zeros(2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 1, 0]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_plus_nullity_is_cols() {
        for mat in [
            m(&[&[1, 2], &[2, 4]]),
            m(&[&[0, 1], &[1, 0], &[1, 1]]),
            QMatrix::zeros(3, 4),
            QMatrix::identity(5),
        ] {
            assert_eq!(mat.rank() + mat.kernel_basis().len(), mat.cols());
        }
    }

    #[test]
    fn solve_identity() {
        let a = QMatrix::identity(2);
        let b = vec![rat(3), ratio(-1, 2)];
        assert_eq!(a.solve(&b).unwrap(), Some(b.clone()));
    }

    #[test]
    fn solve_underdetermined_sets_free_vars_to_zero() {
        let a = m(&[&[1, 1]]);
        let x = a.solve(&[rat(5)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(5), rat(0)]);
        assert_eq!(a.mul_vec(&x).unwrap(), vec![rat(5)]);
    }

    #[test]
    fn solve_inconsistent_returns_none() {
        let a = m(&[&[1], &[1]]);
        assert_eq!(a.solve(&[rat(0), rat(1)]).unwrap(), None);
    }

    #[test]
    fn solve_rejects_wrong_length() {
        let a = m(&[&[1, 1]]);
        assert!(matches!(
            a.solve(&[rat(1), rat(2)]),
            Err(LinearError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn complement_of_e1_in_dim_2() {
        let w = vec![vec![rat(1), rat(0)]];
        let c = complement_basis(&w, 2).unwrap();
        assert_eq!(c, vec![vec![rat(0), rat(1)]]);
    }

    #[test]
    fn complement_of_empty_set() {
        let c = complement_basis(&[], 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0][0], rat(1));
        assert_eq!(c[1][1], rat(1));
        assert_eq!(c[2][2], rat(1));
    }

    #[test]
    fn complement_prefers_lowest_index() {
        // w = {e1 + e2}: e1 already completes it, per the lowest-index rule
        let w = vec![vec![rat(1), rat(1)]];
        let c = complement_basis(&w, 2).unwrap();
        assert_eq!(c, vec![vec![rat(1), rat(0)]]);
        let full = QMatrix::from_rows(vec![w[0].clone(), c[0].clone()]).unwrap();
        assert_eq!(full.rank(), 2);
    }

    #[test]
    fn complement_rejects_dependent_input() {
        let w = vec![vec![rat(1), rat(0)], vec![rat(2), rat(0)]];
        assert_eq!(complement_basis(&w, 2), Err(LinearError::DependentInput));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(2));
        assert_eq!(inv.mul(&a).unwrap(), QMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_tracker_is_order_independent() {
        let vectors = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(0), rat(1), rat(1)],
            vec![rat(1), rat(3), rat(4)],
        ];
        let mut forward = EchelonTracker::new();
        let mut backward = EchelonTracker::new();
        for v in &vectors {
            forward.insert(v);
        }
        for v in vectors.iter().rev() {
            backward.insert(v);
        }
        assert_eq!(forward.rows(), backward.rows());
        assert_eq!(forward.rank(), 2);
    }
}
