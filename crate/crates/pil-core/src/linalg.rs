//! Dense exact linear algebra: reduced row echelon form, kernels, row-space
//! membership and sums of subspaces.
//!
//! Everything here is deterministic: the same input always produces the same
//! reduced basis, which is what makes serialized bases byte-stable.

use crate::scalar::Scalar;

/// Dense row-major matrix over a field scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Result of a reduction to reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<T> {
    /// The unique RREF of the input, same shape (zero rows at the bottom).
    pub reduced: Matrix<T>,
    /// Number of nonzero rows.
    pub rank: usize,
    /// Pivot column indices, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must be rows * cols"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share a length.
    /// An empty row list with an explicit column count is the 0 x cols matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.iter())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref<T> {
        let mut builder = SpanBuilder::new(self.cols);
        for i in 0..self.rows {
            builder.push(self.row(i).to_vec());
        }
        let rank = builder.rank();
        let pivots = builder.pivots.clone();
        let mut rows = builder.into_rref_rows();
        // pad with zero rows to keep the input shape
        while rows.len() < self.rows {
            rows.push(vec![T::zero(); self.cols]);
        }
        Rref {
            reduced: Matrix::from_rows(self.cols, rows),
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut builder = SpanBuilder::new(self.cols);
        for i in 0..self.rows {
            builder.push(self.row(i).to_vec());
        }
        builder.rank()
    }

    /// Canonical RREF basis of the row space: the nonzero RREF rows.
    pub fn row_basis(&self) -> Matrix<T> {
        let mut builder = SpanBuilder::new(self.cols);
        for i in 0..self.rows {
            builder.push(self.row(i).to_vec());
        }
        builder.into_basis()
    }

    /// Canonical basis of the right null space.
    ///
    /// Each basis vector carries a 1 in its free-variable position and zeros
    /// in the other free positions; vectors are ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let rref = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (r, &c) in rref.pivots.iter().enumerate() {
                map[c] = Some(r);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (r, &c) in rref.pivots.iter().enumerate() {
                v[c] = T::zero() - rref.reduced.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn rowspace_contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let mut builder = SpanBuilder::new(self.cols);
        for i in 0..self.rows {
            builder.push(self.row(i).to_vec());
        }
        !builder.would_grow(v)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }
}

/// RREF basis of the sum of the row spaces of the given matrices.
///
/// All inputs must share the column count; an empty list yields the zero
/// subspace of the given ambient dimension.
pub fn subspace_sum<T: Scalar>(cols: usize, bases: &[&Matrix<T>]) -> Matrix<T> {
    let mut builder = SpanBuilder::new(cols);
    for m in bases {
        assert_eq!(m.cols(), cols, "ambient dimensions must agree");
        for i in 0..m.rows() {
            builder.push(m.row(i).to_vec());
        }
    }
    builder.into_basis()
}

/// Incremental echelon-form accumulator for row spans.
///
/// Rows are reduced against the pivots seen so far and inserted in pivot
/// order, normalized to a unit pivot. `into_basis`/`into_rref_rows` finish
/// the back-substitution, producing the canonical RREF.
pub struct SpanBuilder<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> SpanBuilder<T> {
    pub fn new(cols: usize) -> Self {
        SpanBuilder {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [T]) -> Option<usize> {
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in p..self.cols {
                    v[j] = v[j].clone() - factor.clone() * row[j].clone();
                }
            }
        }
        v.iter().position(|x| !x.is_zero())
    }

    /// Adds a row to the span. Returns true if the rank grew.
    pub fn push(&mut self, mut v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.cols, "row length must equal column count");
        if self.is_full() {
            return false;
        }
        let Some(lead) = self.reduce(&mut v) else {
            return false;
        };
        let inv_lead = v[lead].clone();
        for x in v.iter_mut().skip(lead) {
            *x = x.clone() / inv_lead.clone();
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// Whether adding `v` would increase the rank.
    pub fn would_grow(&self, v: &[T]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v).is_some()
    }

    fn back_substitute(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            for k in 0..i {
                if !self.rows[k][p].is_zero() {
                    let factor = self.rows[k][p].clone();
                    for j in p..self.cols {
                        let delta = factor.clone() * self.rows[i][j].clone();
                        self.rows[k][j] = self.rows[k][j].clone() - delta;
                    }
                }
            }
        }
    }

    /// Canonical RREF basis matrix of the accumulated span (no zero rows).
    pub fn into_basis(mut self) -> Matrix<T> {
        self.back_substitute();
        Matrix::from_rows(self.cols, self.rows)
    }

    fn into_rref_rows(mut self) -> Vec<Vec<T>> {
        self.back_substitute();
        self.rows
    }
}
