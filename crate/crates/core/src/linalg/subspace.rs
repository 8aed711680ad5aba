use std::sync::OnceLock;

use super::echelon::{ColumnReduction, Tracking};
use super::{Matrix, SparseVec};

#[derive(Clone, Debug)]
enum Coordinates {
    /// Basis vector `k` has entry one at `free[k]` and zero at every other
    /// index in `free` (the shape kernel bases come out in).
    Free(Vec<usize>),
    /// Built on first use.
    Reduced(OnceLock<Box<ColumnReduction>>),
}

/// A linear subspace of `Q^ambient_dim` with a fixed basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Matrix,
    coords: Coordinates,
}

impl Subspace {
    /// Wraps columns that are known to be independent.
    ///
    /// Panics if they are not.
    pub fn from_basis(basis: Matrix) -> Self {
        let red = ColumnReduction::new(&basis, Tracking::Full);
        assert_eq!(red.rank(), basis.cols(), "subspace basis is not independent");
        Subspace {
            basis,
            coords: Coordinates::Reduced(OnceLock::from(Box::new(red))),
        }
    }

    /// Caller guarantees independence; coordinates are computed lazily.
    pub(crate) fn from_independent(basis: Matrix) -> Self {
        Subspace {
            basis,
            coords: Coordinates::Reduced(OnceLock::new()),
        }
    }

    /// Span of arbitrary columns; dependent columns are dropped (leftmost kept).
    pub fn span(columns: &Matrix) -> Self {
        let red = ColumnReduction::new(columns, Tracking::RankOnly);
        Self::from_independent(columns.select_columns(red.pivot_columns()))
    }

    pub(crate) fn from_free_basis(basis: Matrix, free: Vec<usize>) -> Self {
        debug_assert_eq!(basis.cols(), free.len());
        Subspace {
            basis,
            coords: Coordinates::Free(free),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_free_basis(Matrix::zeros(ambient, 0), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_free_basis(Matrix::identity(ambient), (0..ambient).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn into_basis(self) -> Matrix {
        self.basis
    }

    fn reduction<'a>(&'a self, cell: &'a OnceLock<Box<ColumnReduction>>) -> &'a ColumnReduction {
        cell.get_or_init(|| Box::new(ColumnReduction::new(&self.basis, Tracking::Full)))
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        match &self.coords {
            Coordinates::Free(free) => {
                let c: SparseVec = free
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &f)| {
                        let x = v.get(f);
                        (!x.is_zero()).then_some((k, x))
                    })
                    .collect();
                (self.basis.apply(&c) == *v).then_some(c)
            }
            Coordinates::Reduced(cell) => self.reduction(cell).solve(v),
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        match &self.coords {
            Coordinates::Free(_) => self.coordinates(v).is_some(),
            Coordinates::Reduced(cell) => self.reduction(cell).in_image(v),
        }
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.columns().iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// `self + other`, basis chosen from the concatenated columns.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Coordinate matrix of `map` (from some space into the ambient space,
    /// with image inside this subspace). `None` if some column escapes.
    pub fn coordinates_of(&self, map: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<SparseVec>> =
            map.columns().iter().map(|c| self.coordinates(c)).collect();
        cols.map(|c| Matrix::from_columns(self.dim(), c))
    }
}
