//! The simplicial (Hochschild), bar and cyclic complexes of an algebra,
//! and the kernel subcomplexes attached to an extension.
//!
//! `C_n(A) = A^{⊗(n+1)}` with basis tensors `e_{i_0} ⊗ … ⊗ e_{i_n}` at flat
//! index `Σ_k i_k d^{n-k}` (leftmost factor most significant), the same
//! ordering as [`Matrix::kron`].
//!
//! Sign conventions, with `d_n : C_{n+1} → C_n`:
//!
//! * `d_n(a_0 ⊗ … ⊗ a_{n+1}) = Σ_{i=0}^{n} (-1)^i a_0 ⊗ … ⊗ a_i a_{i+1} ⊗ … ⊗ a_{n+1}
//!   + (-1)^{n+1} a_{n+1} a_0 ⊗ a_1 ⊗ … ⊗ a_n`
//! * the bar differential `dr_n` is the same sum without the last term;
//! * `t_n(a_0 ⊗ … ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ … ⊗ a_{n-1}`, `t_0 = id`;
//! * `CC_n = C_n / Im(1 - t_n)` with the differential induced by `d_n`.

mod kernel;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use kernel::{
    bar_kernel_subcomplex, cyclic_kernel_subcomplex, kernel_subcomplex, verify_kernel_span,
    ExtensionComplexes, KernelComplex, SpanCounterexample,
};

use crate::algebra::Algebra;
use crate::complexes::{ChainComplex, ComplexError};
use crate::linalg::{cokernel, kernel_basis, Matrix, SparseVec, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("the induced cyclic differential is not well defined at degree {degree}")]
    InducedMapNotWellDefined { degree: usize },
    #[error("the differential does not preserve the kernel subcomplex at degree {degree}")]
    ClosureViolation { degree: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Which of the three complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    Hochschild,
    Cyclic,
    Bar,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::Hochschild, Theory::Bar, Theory::Cyclic];

    pub fn symbol(self) -> &'static str {
        match self {
            Theory::Hochschild => "H",
            Theory::Cyclic => "HC",
            Theory::Bar => "HR",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::Hochschild => "hochschild",
            Theory::Cyclic => "cyclic",
            Theory::Bar => "bar",
        }
    }
}

/// Top degree of the complexes built for results reported up to `n_report`.
pub fn internal_top(n_report: usize) -> usize {
    n_report + 2
}

/// Flat index map for the basis tensors of `C_n(A)`, `n + 1` factors of a
/// `dim`-dimensional algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpaceIndex {
    dim: usize,
    factors: usize,
}

impl ChainSpaceIndex {
    pub fn new(dim: usize, degree: usize) -> Self {
        ChainSpaceIndex {
            dim,
            factors: degree + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.dim.pow(self.factors as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factors);
        digits.iter().fold(0, |acc, &x| acc * self.dim + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors];
        for slot in digits.iter_mut().rev() {
            *slot = index % self.dim;
            index /= self.dim;
        }
        digits
    }
}

/// `dim C_n(A)` for `n = 0..=top`.
pub fn chain_dims(dim: usize, top: usize) -> Vec<usize> {
    (0..=top).map(|n| ChainSpaceIndex::new(dim, n).len()).collect()
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `d_n` (with `wrap`) or `dr_n` (without) as a `d^{n+1} × d^{n+2}` matrix.
fn assemble_differential(alg: &Algebra, n: usize, wrap: bool) -> Matrix {
    let src = ChainSpaceIndex::new(alg.dim(), n + 1);
    let tgt = ChainSpaceIndex::new(alg.dim(), n);
    let cols: Vec<SparseVec> = (0..src.len())
        .into_par_iter()
        .map(|c| {
            let a = src.decode(c);
            let mut out = Vec::new();
            let mut digits = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let s = sign(i % 2 == 1);
                for (k, x) in alg.product(a[i], a[i + 1]).iter() {
                    digits.clear();
                    digits.extend_from_slice(&a[..i]);
                    digits.push(k);
                    digits.extend_from_slice(&a[i + 2..]);
                    out.push((tgt.encode(&digits), &s * x));
                }
            }
            if wrap {
                let s = sign(n % 2 == 0);
                for (k, x) in alg.product(a[n + 1], a[0]).iter() {
                    digits.clear();
                    digits.push(k);
                    digits.extend_from_slice(&a[1..=n]);
                    out.push((tgt.encode(&digits), &s * x));
                }
            }
            SparseVec::from_entries(out)
        })
        .collect();
    Matrix::from_columns(tgt.len(), cols)
}

/// `d_n : C_{n+1}(A) → C_n(A)`.
pub fn hochschild_differential(alg: &Algebra, n: usize) -> Matrix {
    assemble_differential(alg, n, true)
}

/// `dr_n : C_{n+1}(A) → C_n(A)`.
pub fn bar_differential(alg: &Algebra, n: usize) -> Matrix {
    assemble_differential(alg, n, false)
}

fn build(alg: &Algebra, top: usize, wrap: bool) -> ChainComplex {
    let diffs = (0..top)
        .into_par_iter()
        .map(|n| assemble_differential(alg, n, wrap))
        .collect();
    ChainComplex::new(chain_dims(alg.dim(), top), diffs).expect("differential shapes")
}

/// `C_∼(A)` up to degree `top`.
pub fn hochschild_complex_to(alg: &Algebra, top: usize) -> ChainComplex {
    build(alg, top, true)
}

/// `CR_∼(A)` up to degree `top`.
pub fn bar_complex_to(alg: &Algebra, top: usize) -> ChainComplex {
    build(alg, top, false)
}

/// `C_∼(A)` built to degree `n_report + 2`.
pub fn hochschild_complex(alg: &Algebra, n_report: usize) -> ChainComplex {
    hochschild_complex_to(alg, internal_top(n_report))
}

/// `CR_∼(A)` built to degree `n_report + 2`.
pub fn bar_complex(alg: &Algebra, n_report: usize) -> ChainComplex {
    bar_complex_to(alg, internal_top(n_report))
}

/// The signed cyclic permutation `t_n` on `C_n(A)`.
pub fn cyclic_operator(alg: &Algebra, n: usize) -> Matrix {
    let idx = ChainSpaceIndex::new(alg.dim(), n);
    let s = sign(n % 2 == 1);
    let cols = (0..idx.len())
        .map(|c| {
            if n == 0 {
                return SparseVec::unit(c);
            }
            let mut a = idx.decode(c);
            a.rotate_right(1);
            SparseVec::from_entries(vec![(idx.encode(&a), s.clone())])
        })
        .collect();
    Matrix::from_columns(idx.len(), cols)
}

/// The quotient `CC_n = C_n / Im(1 - t_n)` in one degree.
#[derive(Clone, Debug)]
pub struct CyclicQuotientData {
    pub degree: usize,
    pub t_matrix: Matrix,
    pub one_minus_t: Matrix,
    /// `C_n → CC_n`.
    pub projection: Matrix,
    /// `CC_n → C_n`, a coordinate inclusion with `projection ∘ section = id`.
    pub section: Matrix,
    pub cc_dim: usize,
}

impl CyclicQuotientData {
    pub fn compute(alg: &Algebra, n: usize) -> Self {
        let t = cyclic_operator(alg, n);
        let one_minus_t = Matrix::identity(t.rows()).sub(&t);
        let q = cokernel(&one_minus_t);
        let cc_dim = q.dim();
        CyclicQuotientData {
            degree: n,
            t_matrix: t,
            one_minus_t,
            projection: q.projection,
            section: q.section,
            cc_dim,
        }
    }
}

/// `CC_∼(A)` together with the quotient data of every degree.
#[derive(Clone, Debug)]
pub struct CyclicComplex {
    pub complex: ChainComplex,
    pub quotients: Vec<CyclicQuotientData>,
}

/// `CC_∼(A)` up to degree `top`, from the Hochschild complex of `A` built to
/// the same degree.
pub fn cyclic_complex_from(alg: &Algebra, hochschild: &ChainComplex) -> Result<CyclicComplex, HochschildError> {
    let top = hochschild.top();
    let quotients: Vec<CyclicQuotientData> = (0..=top)
        .into_par_iter()
        .map(|n| CyclicQuotientData::compute(alg, n))
        .collect();
    let diffs = (0..top)
        .into_par_iter()
        .map(|n| {
            let d = hochschild.differential(n);
            let (lower, upper) = (&quotients[n], &quotients[n + 1]);
            if !lower.projection.mul(&d.mul(&upper.one_minus_t)).is_zero() {
                return Err(HochschildError::InducedMapNotWellDefined { degree: n });
            }
            Ok(lower.projection.mul(&d.mul(&upper.section)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dims = quotients.iter().map(|q| q.cc_dim).collect();
    let complex = ChainComplex::new(dims, diffs)?;
    Ok(CyclicComplex { complex, quotients })
}

pub fn cyclic_complex_to(alg: &Algebra, top: usize) -> Result<CyclicComplex, HochschildError> {
    cyclic_complex_from(alg, &hochschild_complex_to(alg, top))
}

/// `CC_∼(A)` built to degree `n_report + 2`.
pub fn cyclic_complex(alg: &Algebra, n_report: usize) -> Result<CyclicComplex, HochschildError> {
    cyclic_complex_to(alg, internal_top(n_report))
}

/// The complex of the given theory up to degree `top`.
pub fn complex_for(alg: &Algebra, theory: Theory, top: usize) -> Result<ChainComplex, HochschildError> {
    Ok(match theory {
        Theory::Hochschild => hochschild_complex_to(alg, top),
        Theory::Bar => bar_complex_to(alg, top),
        Theory::Cyclic => cyclic_complex_to(alg, top)?.complex,
    })
}

/// `A^tr = {f ∈ A* : f(ab) = f(ba)}`, as a subspace of `A*` in the dual basis.
pub fn trace_space(alg: &Algebra) -> Subspace {
    kernel_basis(&alg.commutator_map().transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Preset;
    use crate::complexes::{check_complex, dualize, homology, homology_range};

    fn preset(p: Preset) -> Algebra {
        p.build().unwrap()
    }

    fn field() -> Algebra {
        preset(Preset::Field)
    }

    #[test]
    fn index_roundtrip() {
        let idx = ChainSpaceIndex::new(3, 2);
        assert_eq!(idx.len(), 27);
        for c in 0..27 {
            assert_eq!(idx.encode(&idx.decode(c)), c);
        }
        assert_eq!(idx.encode(&[1, 0, 2]), 11);
    }

    #[test]
    fn index_matches_kron() {
        // e_1 ⊗ e_2 in Q^3 ⊗ Q^3 is the kron of unit columns.
        let e1 = Matrix::from_columns(3, vec![SparseVec::unit(1)]);
        let e2 = Matrix::from_columns(3, vec![SparseVec::unit(2)]);
        let k = e1.kron(&e2);
        assert_eq!(*k.column(0), SparseVec::unit(ChainSpaceIndex::new(3, 1).encode(&[1, 2])));
    }

    #[test]
    fn field_differentials_alternate() {
        let c = hochschild_complex_to(&field(), 4);
        let entries: Vec<Rational> = c.differentials().iter().map(|d| d.get(0, 0)).collect();
        let expect: Vec<Rational> = [0, 1, 0, 1].iter().map(|&x| Rational::from_integer(x)).collect();
        assert_eq!(entries, expect);
        check_complex(&c).unwrap();
        assert_eq!(homology(&c, 3).dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn field_bar_differentials() {
        let c = bar_complex(&field(), 3);
        let entries: Vec<Rational> = c.differentials()[..3].iter().map(|d| d.get(0, 0)).collect();
        let expect: Vec<Rational> = [1, 0, 1].iter().map(|&x| Rational::from_integer(x)).collect();
        assert_eq!(entries, expect);
        assert_eq!(homology(&c, 3).dims(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn zero_mult_bar_homology() {
        let c = bar_complex(&preset(Preset::ZeroMult { d: 1 }), 3);
        assert!(c.differentials().iter().all(Matrix::is_zero));
        assert_eq!(homology(&c, 3).dims(), vec![1; 4]);
    }

    #[test]
    fn commutative_algebras_have_zero_d0() {
        let a = preset(Preset::TruncatedPoly { m: 2 });
        assert!(hochschild_differential(&a, 0).is_zero());
        assert_eq!(trace_space(&a).dim(), 2);
    }

    #[test]
    fn matrix_algebra_homology() {
        let a = preset(Preset::Matrix { k: 2 });
        let c = hochschild_complex(&a, 3);
        check_complex(&c).unwrap();
        assert_eq!(homology_range(&c, 0..=3).dims(), vec![1, 0, 0, 0]);
        assert_eq!(trace_space(&a).dim(), 1);
    }

    #[test]
    fn cyclic_operator_examples() {
        let f = field();
        assert_eq!(cyclic_operator(&f, 0), Matrix::identity(1));
        assert_eq!(cyclic_operator(&f, 1), Matrix::from_i64(1, 1, &[-1]));
        for d in 1..=3 {
            let a = preset(Preset::ZeroMult { d });
            for n in 0..=4usize {
                if d.pow(n as u32 + 1) > 300 {
                    continue;
                }
                let t = cyclic_operator(&a, n);
                let mut p = Matrix::identity(t.rows());
                for _ in 0..=n {
                    p = t.mul(&p);
                }
                let s = if (n * (n + 1)) % 2 == 1 { -1 } else { 1 };
                assert_eq!(p, Matrix::identity(t.rows()).scale(&Rational::from_integer(s)));
            }
        }
    }

    #[test]
    fn field_cyclic_homology() {
        let cc = cyclic_complex_to(&field(), 6).unwrap();
        assert_eq!(cc.complex.dims(), &[1, 0, 1, 0, 1, 0, 1]);
        assert!(cc.complex.differentials().iter().all(Matrix::is_zero));
        assert_eq!(homology(&cc.complex, 4).dims(), vec![1, 0, 1, 0, 1]);
        for q in &cc.quotients {
            assert!(q.projection.mul(&q.one_minus_t).is_zero());
        }
    }

    #[test]
    fn cyclic_degree_zero_matches_hochschild() {
        let a = preset(Preset::UpperTriangular { k: 2 });
        let h = hochschild_complex(&a, 1);
        let cc = cyclic_complex(&a, 1).unwrap();
        assert_eq!(cc.complex.dim(0), a.dim());
        check_complex(&cc.complex).unwrap();
        assert_eq!(homology(&h, 0).dims(), homology(&cc.complex, 0).dims());
    }

    #[test]
    fn trace_space_matches_dual_h0() {
        for p in [
            Preset::Matrix { k: 2 },
            Preset::UpperTriangular { k: 2 },
            Preset::ZeroMult { d: 3 },
        ] {
            let a = preset(p);
            let c = hochschild_complex_to(&a, 2);
            let d = dualize(&c);
            let h0 = homology_range(&d, 2..=2).get(2).unwrap().dim();
            assert_eq!(trace_space(&a).dim(), h0);
        }
    }
}
