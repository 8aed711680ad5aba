use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::{ChainComplex, ComplexError};
use crate::linalg::{kernel_basis, ColumnReduction, Echelon, Matrix, SparseVec, Subspace, Tracking};
use crate::rational::Rational;

/// `H_n = Z_n / B_n` with an echelon-deterministic basis of representatives.
///
/// Internally one echelon holds the boundaries first and then the cycle
/// basis vectors that survive reduction; the latter rows are the
/// representative cycles, and the coefficients on them give the class of a
/// cycle.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    degree: usize,
    cycles: Subspace,
    echelon: Echelon,
    boundary_rank: usize,
}

impl HomologyGroup {
    pub fn compute(k: &ChainComplex, n: usize) -> Self {
        assert!(n <= k.top(), "degree {n} beyond top degree {}", k.top());
        let cycles = if n == 0 {
            Subspace::full(k.dim(0))
        } else {
            kernel_basis(k.differential(n - 1))
        };
        let boundaries = k.incoming(n);
        let red = ColumnReduction::new(&boundaries, Tracking::RankOnly);
        let mut echelon = red.echelon().clone();
        let boundary_rank = echelon.rank();
        for z in cycles.basis().columns() {
            echelon.insert(z);
        }
        HomologyGroup {
            degree: n,
            cycles,
            echelon,
            boundary_rank,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank() - self.boundary_rank
    }

    pub fn chain_dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycles.dim()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundary_rank
    }

    /// Echelon basis of the boundaries.
    pub fn boundary_basis(&self) -> Subspace {
        Subspace::from_basis(Matrix::from_columns(
            self.chain_dim(),
            self.echelon.rows()[..self.boundary_rank].to_vec(),
        ))
    }

    pub(crate) fn boundary_vectors(&self) -> &[SparseVec] {
        &self.echelon.rows()[..self.boundary_rank]
    }

    /// Representative cycles, one column per basis class.
    pub fn representatives(&self) -> Matrix {
        Matrix::from_columns(
            self.chain_dim(),
            self.echelon.rows()[self.boundary_rank..].to_vec(),
        )
    }

    pub(crate) fn representative(&self, k: usize) -> &SparseVec {
        &self.echelon.rows()[self.boundary_rank + k]
    }

    /// Class of `z` in the representative basis, or `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &SparseVec) -> Option<SparseVec> {
        let b = self.boundary_rank;
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        let residual = self.echelon.reduce_with(z, |r, c| {
            if r >= b {
                coeffs.push((r - b, c.clone()));
            }
        });
        residual
            .is_zero()
            .then(|| SparseVec::from_entries(coeffs))
    }

    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        self.class_of(z).is_some_and(|c| c.is_zero())
    }
}

/// Homology groups over a contiguous range of degrees.
#[derive(Clone, Debug)]
pub struct HomologyTable {
    start: usize,
    groups: Vec<HomologyGroup>,
}

impl HomologyTable {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.start + self.groups.len() - 1
    }

    pub fn degrees(&self) -> RangeInclusive<usize> {
        self.start..=self.end()
    }

    pub fn get(&self, n: usize) -> Option<&HomologyGroup> {
        n.checked_sub(self.start).and_then(|i| self.groups.get(i))
    }

    pub fn group(&self, n: usize) -> Result<&HomologyGroup, ComplexError> {
        self.get(n).ok_or(ComplexError::DegreeOutOfRange {
            degree: n,
            top: self.end(),
        })
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(HomologyGroup::dim).collect()
    }
}

/// Homology in degrees `0..=n_report` (which must not exceed the top degree).
pub fn homology(k: &ChainComplex, n_report: usize) -> HomologyTable {
    homology_range(k, 0..=n_report)
}

/// Homology in the given degrees, computed in parallel.
pub fn homology_range(k: &ChainComplex, degrees: RangeInclusive<usize>) -> HomologyTable {
    let start = *degrees.start();
    assert!(*degrees.end() <= k.top(), "degree range exceeds the complex");
    assert!(start <= *degrees.end(), "empty degree range");
    let groups = degrees
        .into_par_iter()
        .map(|n| HomologyGroup::compute(k, n))
        .collect();
    HomologyTable { start, groups }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::dualize;

    fn field_like() -> ChainComplex {
        // 1-dim spaces with d alternating 0, 1, 0, 1.
        let diffs = (0..4)
            .map(|n| Matrix::from_i64(1, 1, &[(n % 2) as i64]))
            .collect();
        ChainComplex::new(vec![1; 5], diffs).unwrap()
    }

    #[test]
    fn zero_complex_has_full_homology() {
        let t = homology(&ChainComplex::zero(vec![1, 1, 1]), 2);
        assert_eq!(t.dims(), vec![1, 1, 1]);
    }

    #[test]
    fn alternating_complex() {
        let k = field_like();
        assert_eq!(homology(&k, 3).dims(), vec![1, 0, 0, 0]);
        let d = dualize(&k);
        // Cohomological degree n sits at chain degree top - n.
        let h = homology_range(&d, 1..=4);
        let co: Vec<usize> = (0..=3).map(|n| h.get(4 - n).unwrap().dim()).collect();
        assert_eq!(co, vec![1, 0, 0, 0]);
    }

    #[test]
    fn classes_and_boundaries() {
        // C_1 = Q^2 → C_0 = Q^2 via d_0 = [[1, 1], [0, 0]].
        let k = ChainComplex::new(vec![2, 2], vec![Matrix::from_i64(2, 2, &[1, 1, 0, 0])]).unwrap();
        let h0 = HomologyGroup::compute(&k, 0);
        assert_eq!(h0.dim(), 1);
        assert!(h0.is_boundary(&SparseVec::from_i64(&[3, 0])));
        assert!(!h0.is_boundary(&SparseVec::from_i64(&[0, 1])));
        let h1 = HomologyGroup::compute(&k, 1);
        assert_eq!(h1.dim(), 1);
        assert!(h1.class_of(&SparseVec::from_i64(&[1, 0])).is_none());
        let c = h1.class_of(&SparseVec::from_i64(&[2, -2])).unwrap();
        assert_eq!(c.nnz(), 1);
    }
}
