//! Exact linear algebra over the rationals.
//!
//! Matrices are sparse and column-major; every rank, kernel, image and
//! cokernel is computed by exact elimination, so no tolerance appears
//! anywhere. Bases are deterministic: kernels use the non-pivot columns as
//! free variables, images keep the leftmost independent columns.

mod echelon;
mod matrix;
mod subspace;
mod vector;

pub use echelon::{ColumnReduction, Echelon, Tracking};
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use vector::SparseVec;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("composite g∘f is not zero (first nonzero at row {row}, column {col})")]
    CompositionNotZero { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `b` lies outside the image of the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no solution: right-hand side is not in the column space")]
pub struct NoSolution;

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    // Feed whichever side has fewer vectors.
    if m.cols() <= m.rows() {
        ColumnReduction::new(m, Tracking::RankOnly).rank()
    } else {
        ColumnReduction::new(&m.transpose(), Tracking::RankOnly).rank()
    }
}

/// Basis of `{x : M x = 0}`, one vector per non-pivot column.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let red = ColumnReduction::new(m, Tracking::Full);
    kernel_from_reduction(&red)
}

pub(crate) fn kernel_from_reduction(red: &ColumnReduction) -> Subspace {
    let rel = red.kernel_vectors();
    let free: Vec<usize> = rel.iter().map(|(f, _)| *f).collect();
    let basis = Matrix::from_columns(red.cols(), rel.iter().map(|(_, v)| v.clone()).collect());
    Subspace::from_free_basis(basis, free)
}

/// Basis of the column space: the leftmost independent columns of `M`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// Solves `M x = b`, setting free variables to zero.
pub fn solve(m: &Matrix, b: &SparseVec) -> Result<SparseVec, NoSolution> {
    assert!(
        b.max_index().is_none_or(|i| i < m.rows()),
        "right-hand side longer than the row count"
    );
    ColumnReduction::new(m, Tracking::Full).solve(b).ok_or(NoSolution)
}

/// Quotient of the target space of `M` by its image.
///
/// The complement used is spanned by the standard basis vectors at the
/// non-pivot rows of the reduced image, so `section` is a coordinate
/// inclusion and `projection ∘ section = id`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub projection: Matrix,
    pub section: Matrix,
    /// Ambient indices spanning the complement, in increasing order.
    pub complement: Vec<usize>,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
}

pub fn cokernel(m: &Matrix) -> Cokernel {
    let n = m.rows();
    let red = ColumnReduction::new(m, Tracking::RankOnly);
    let echelon = red.echelon();
    let full = echelon.fully_reduced();
    let mut index_of = vec![usize::MAX; n];
    let mut complement = Vec::new();
    for x in 0..n {
        if echelon.row_with_pivot(x).is_none() {
            index_of[x] = complement.len();
            complement.push(x);
        }
    }
    let q = complement.len();
    let mut columns = Vec::with_capacity(n);
    for x in 0..n {
        match echelon.row_with_pivot(x) {
            None => columns.push(SparseVec::unit(index_of[x])),
            Some(r) => {
                let v = full[r].reindex(|i| {
                    let k = index_of[i];
                    (k != usize::MAX).then_some(k)
                });
                columns.push(v.scale(&-Rational::one()));
            }
        }
    }
    let projection = Matrix::from_columns(q, columns);
    let section = Matrix::from_columns(n, complement.iter().map(|&x| SparseVec::unit(x)).collect());
    Cokernel {
        projection,
        section,
        complement,
    }
}

pub fn kron(m: &Matrix, n: &Matrix) -> Matrix {
    m.kron(n)
}

/// `dim Ker g − rank f` for a composable pair with `g ∘ f = 0`.
pub fn exactness_defect(f: &Matrix, g: &Matrix) -> Result<usize, LinalgError> {
    if f.rows() != g.cols() {
        return Err(LinalgError::Shape(format!(
            "f is {:?}, g is {:?}",
            f.shape(),
            g.shape()
        )));
    }
    let gf = g.mul(f);
    if let Some((row, col, _)) = gf.first_nonzero() {
        return Err(LinalgError::CompositionNotZero { row, col });
    }
    Ok(g.cols() - rank(g) - rank(f))
}

/// Distance from exactness that also makes sense when `g ∘ f ≠ 0`:
/// `dim(Im f + Ker g) − dim(Im f ∩ Ker g)`.
///
/// Equals [`exactness_defect`] whenever `g ∘ f = 0`, vanishes iff
/// `Im f = Ker g`, and is unchanged by transposing the pair.
pub fn exactness_gap(f: &Matrix, g: &Matrix) -> usize {
    assert_eq!(f.rows(), g.cols(), "maps are not composable");
    let k = kernel_basis(g);
    let r = rank(f);
    let sum = rank(&f.hstack(k.basis()));
    2 * sum - k.dim() - r
}

pub fn is_injective(m: &Matrix) -> bool {
    rank(m) == m.cols()
}

pub fn is_surjective(m: &Matrix) -> bool {
    rank(m) == m.rows()
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}
