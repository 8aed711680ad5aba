use std::fmt;

use serde::{Deserialize, Serialize};

use super::SparseVec;
use crate::rational::Rational;

/// Sparse rational matrix stored by columns.
///
/// A matrix with `rows` rows and `cols` columns represents a linear map
/// `Q^cols -> Q^rows`; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for c in &columns {
            if let Some(m) = c.max_index() {
                assert!(m < rows, "column entry {m} out of bounds for {rows} rows");
            }
        }
        Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Row-major dense constructor.
    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries[c].push((r, x.clone()));
                }
            }
        }
        Matrix {
            rows,
            cols,
            columns: entries
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let dense: Vec<Vec<Rational>> = data
            .chunks(cols.max(1))
            .take(rows)
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect();
        let dense = if cols == 0 { vec![Vec::new(); rows] } else { dense };
        Self::from_rows(rows, cols, &dense)
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

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    /// First nonzero entry `(row, col, value)` in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.columns
            .iter()
            .enumerate()
            .find_map(|(c, v)| v.leading().map(|(r, x)| (r, c, x.clone())))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col.iter() {
                out[r][c] = x.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col.iter() {
                buckets[r].push((c, x.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            columns: buckets
                .into_iter()
                .map(SparseVec::from_sorted_unchecked)
                .collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::combination(v.iter().map(|(j, x)| (x, &self.columns[j])))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: indices.len(),
            columns: indices.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// Columns of `self` followed by the columns of `rhs`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Matrix {
            rows: self.rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let top = a.rows;
        let mut columns = Vec::with_capacity(a.cols + b.cols);
        for (upper, lower) in a.columns.iter().zip(&c.columns).chain(b.columns.iter().zip(&d.columns)) {
            let mut e: Vec<(usize, Rational)> = upper.entries().to_vec();
            e.extend(lower.iter().map(|(r, x)| (r + top, x.clone())));
            columns.push(SparseVec::from_sorted_unchecked(e));
        }
        Matrix {
            rows: a.rows + c.rows,
            cols: a.cols + b.cols,
            columns,
        }
    }

    pub fn block_diag(a: &Matrix, d: &Matrix) -> Matrix {
        Matrix::block(
            a,
            &Matrix::zeros(a.rows, d.cols),
            &Matrix::zeros(d.rows, a.cols),
            d,
        )
    }

    /// Kronecker product. Index convention: the pair `(i1, i2)` maps to
    /// `i1 * n2 + i2`, i.e. the left factor is the most significant digit.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut columns = Vec::with_capacity(self.cols * rhs.cols);
        for a in &self.columns {
            for b in &rhs.columns {
                let mut e = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        e.push((i * rhs.rows + k, x * y));
                    }
                }
                columns.push(SparseVec::from_sorted_unchecked(e));
            }
        }
        Matrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            columns,
        }
    }

    /// `self ⊗ self ⊗ … ⊗ self` with `k` factors (`k = 0` gives the 1×1 identity).
    pub fn kron_power(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(1);
        for _ in 0..k {
            acc = acc.kron(self);
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}

/// Row-major dense wire form: `{"rows": r, "cols": c, "data": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.to_dense(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let d = DenseMatrix::deserialize(deserializer)?;
        if d.data.len() != d.rows || d.data.iter().any(|r| r.len() != d.cols) {
            return Err(serde::de::Error::custom("matrix data does not match its shape"));
        }
        Ok(Matrix::from_rows(d.rows, d.cols, &d.data))
    }
}
