use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{bar_complex_to, cyclic_complex_from, hochschild_complex_to, internal_top, HochschildError, Theory};
use crate::algebra::Extension;
use crate::complexes::{ChainComplex, ChainMap, ShortExactSequence};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::rational::Rational;

/// The subcomplex `Ker(j^{⊗•})` of the complex of `A` (or its image in the
/// cyclic quotient), packaged with the short exact sequence it sits in and
/// the comparison map from the complex of `B`.
#[derive(Clone, Debug)]
pub struct KernelComplex {
    pub theory: Theory,
    /// The complex of `B`.
    pub source: Arc<ChainComplex>,
    /// Degreewise bases inside the spaces of the complex of `A`.
    pub spaces: Vec<Subspace>,
    /// `0 → K → X(A) → X(D) → 0`.
    pub ses: ShortExactSequence,
    /// Induced by `i^{⊗•}`: `X(B) → K`.
    pub comparison: ChainMap,
}

impl KernelComplex {
    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.ses.k
    }

    fn assemble(
        theory: Theory,
        source: Arc<ChainComplex>,
        ambient: Arc<ChainComplex>,
        quotient: Arc<ChainComplex>,
        spaces: Vec<Subspace>,
        surj: Vec<Matrix>,
        raw_comparison: Vec<Matrix>,
    ) -> Result<Self, HochschildError> {
        let top = ambient.top();
        let diffs = (0..top)
            .map(|n| {
                let image = ambient.differential(n).mul(spaces[n + 1].basis());
                spaces[n]
                    .coordinates_of(&image)
                    .ok_or(HochschildError::ClosureViolation { degree: n })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let k = Arc::new(ChainComplex::new(spaces.iter().map(Subspace::dim).collect(), diffs)?);
        let comparison = raw_comparison
            .iter()
            .enumerate()
            .map(|(n, m)| {
                spaces[n]
                    .coordinates_of(m)
                    .ok_or(HochschildError::ClosureViolation { degree: n })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let comparison = ChainMap::new(source.clone(), k.clone(), comparison)?;
        let inj = ChainMap::new(
            k,
            ambient.clone(),
            spaces.iter().map(|s| s.basis().clone()).collect(),
        )?;
        let surj = ChainMap::new(ambient, quotient, surj)?;
        let ses = ShortExactSequence::new(inj, surj)?;
        Ok(KernelComplex {
            theory,
            source,
            spaces,
            ses,
            comparison,
        })
    }
}

/// `Ker j^{⊗(n+1)}` for `n = 0..=top`.
fn kernel_spaces(ext: &Extension, top: usize) -> Vec<Subspace> {
    use rayon::prelude::*;
    (0..=top)
        .into_par_iter()
        .map(|n| kernel_basis(&ext.j.kron_power(n + 1)))
        .collect()
}

fn powers(m: &Matrix, top: usize) -> Vec<Matrix> {
    (0..=top).map(|n| m.kron_power(n + 1)).collect()
}

fn tensor_kernel(
    ext: &Extension,
    theory: Theory,
    top: usize,
    spaces: Vec<Subspace>,
) -> Result<KernelComplex, HochschildError> {
    let build = match theory {
        Theory::Hochschild => hochschild_complex_to,
        Theory::Bar => bar_complex_to,
        Theory::Cyclic => unreachable!("cyclic kernels are built from the quotient"),
    };
    let (b, (a, d)) = rayon::join(
        || build(&ext.b, top),
        || rayon::join(|| build(&ext.a, top), || build(&ext.d, top)),
    );
    KernelComplex::assemble(
        theory,
        Arc::new(b),
        Arc::new(a),
        Arc::new(d),
        spaces,
        powers(&ext.j, top),
        powers(&ext.i, top),
    )
}

/// `C_∼(A, D) = Ker(j^{⊗•}) ⊂ C_∼(A)` built to degree `n_report + 2`.
pub fn kernel_subcomplex(ext: &Extension, n_report: usize) -> Result<KernelComplex, HochschildError> {
    let top = internal_top(n_report);
    tensor_kernel(ext, Theory::Hochschild, top, kernel_spaces(ext, top))
}

/// The same kernel spaces inside the bar complex `CR_∼(A)`.
pub fn bar_kernel_subcomplex(ext: &Extension, n_report: usize) -> Result<KernelComplex, HochschildError> {
    let top = internal_top(n_report);
    tensor_kernel(ext, Theory::Bar, top, kernel_spaces(ext, top))
}

fn cyclic_kernel(ext: &Extension, top: usize, spaces: &[Subspace]) -> Result<KernelComplex, HochschildError> {
    let (cb, (ca, cd)) = rayon::join(
        || cyclic_complex_from(&ext.b, &hochschild_complex_to(&ext.b, top)),
        || {
            rayon::join(
                || cyclic_complex_from(&ext.a, &hochschild_complex_to(&ext.a, top)),
                || cyclic_complex_from(&ext.d, &hochschild_complex_to(&ext.d, top)),
            )
        },
    );
    let (cb, ca, cd) = (cb?, ca?, cd?);
    let mut cyc_spaces = Vec::with_capacity(top + 1);
    let mut surj = Vec::with_capacity(top + 1);
    let mut comparison = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let pa = &ca.quotients[n].projection;
        cyc_spaces.push(Subspace::span(&pa.mul(spaces[n].basis())));
        let jn = ext.j.kron_power(n + 1);
        surj.push(cd.quotients[n].projection.mul(&jn.mul(&ca.quotients[n].section)));
        let i_n = ext.i.kron_power(n + 1);
        comparison.push(pa.mul(&i_n.mul(&cb.quotients[n].section)));
    }
    KernelComplex::assemble(
        Theory::Cyclic,
        Arc::new(cb.complex),
        Arc::new(ca.complex),
        Arc::new(cd.complex),
        cyc_spaces,
        surj,
        comparison,
    )
}

/// Image of `Ker j^{⊗(n+1)}` in `CC_n(A)`, with the induced differential,
/// built to degree `n_report + 2`.
pub fn cyclic_kernel_subcomplex(ext: &Extension, n_report: usize) -> Result<KernelComplex, HochschildError> {
    let top = internal_top(n_report);
    cyclic_kernel(ext, top, &kernel_spaces(ext, top))
}

/// The three kernel subcomplexes of an extension, sharing one computation
/// of the tensor kernels.
#[derive(Clone, Debug)]
pub struct ExtensionComplexes {
    pub hochschild: KernelComplex,
    pub bar: KernelComplex,
    pub cyclic: KernelComplex,
}

impl ExtensionComplexes {
    /// All complexes built to degree `top`.
    pub fn build(ext: &Extension, top: usize) -> Result<Self, HochschildError> {
        let spaces = kernel_spaces(ext, top);
        let (h, (b, c)) = rayon::join(
            || tensor_kernel(ext, Theory::Hochschild, top, spaces.clone()),
            || {
                rayon::join(
                    || tensor_kernel(ext, Theory::Bar, top, spaces.clone()),
                    || cyclic_kernel(ext, top, &spaces),
                )
            },
        );
        Ok(ExtensionComplexes {
            hochschild: h?,
            bar: b?,
            cyclic: c?,
        })
    }

    pub fn get(&self, theory: Theory) -> &KernelComplex {
        match theory {
            Theory::Hochschild => &self.hochschild,
            Theory::Bar => &self.bar,
            Theory::Cyclic => &self.cyclic,
        }
    }
}

/// Why `Ker j^{⊗n}` differs from the sum of the subspaces with one factor in `i(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("kernel span check failed for {factors} factors: {reason}")]
pub struct SpanCounterexample {
    pub factors: usize,
    pub reason: String,
    pub vector: Option<Vec<Rational>>,
}

/// Checks `Ker j^{⊗n} = Σ_k A^{⊗(k-1)} ⊗ i(B) ⊗ A^{⊗(n-k)}` for `n ≥ 1`
/// factors, both inclusions. Returns the common dimension.
pub fn verify_kernel_span(ext: &Extension, factors: usize) -> Result<usize, SpanCounterexample> {
    assert!(factors >= 1, "at least one tensor factor");
    let a = ext.a.dim();
    let ker = kernel_basis(&ext.j.kron_power(factors));
    let id = Matrix::identity(a);
    let pieces: Vec<Matrix> = (0..factors)
        .map(|k| {
            let mut m = if k == 0 { ext.i.clone() } else { id.kron_power(k) };
            if k > 0 {
                m = m.kron(&ext.i);
            }
            if factors - k - 1 > 0 {
                m = m.kron(&id.kron_power(factors - k - 1));
            }
            m
        })
        .collect();
    let all = pieces
        .iter()
        .skip(1)
        .fold(pieces[0].clone(), |acc, p| acc.hstack(p));
    let sum = Subspace::span(&all);
    let fail = |reason: &str, v: Option<&crate::linalg::SparseVec>| SpanCounterexample {
        factors,
        reason: reason.to_string(),
        vector: v.map(|v| v.to_dense(ker.ambient_dim())),
    };
    for v in sum.basis().columns() {
        if !ker.contains(v) {
            return Err(fail("a tensor with a factor in i(B) is not killed by j", Some(v)));
        }
    }
    for v in ker.basis().columns() {
        if !sum.contains(v) {
            return Err(fail("a kernel vector is outside the span", Some(v)));
        }
    }
    if sum.dim() != ker.dim() {
        return Err(fail("dimensions differ", None));
    }
    Ok(ker.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_extension, Preset};
    use crate::complexes::{check_complex, check_quasi_isomorphism};
    use crate::linalg;

    fn ut2() -> crate::algebra::Algebra {
        Preset::UpperTriangular { k: 2 }.build().unwrap()
    }

    fn split_field() -> Extension {
        let f = Preset::Field.build().unwrap();
        Extension::split(&f, &f)
    }

    fn corner() -> Extension {
        quotient_extension(&ut2(), &Matrix::from_i64(3, 1, &[0, 1, 0])).unwrap()
    }

    #[test]
    fn identity_extension_kernel_is_everything() {
        let ext = Extension::identity(&ut2());
        let k = kernel_subcomplex(&ext, 1).unwrap();
        assert_eq!(k.complex().dims(), k.ses.p.dims());
        for (n, c) in k.comparison.components.iter().enumerate() {
            assert!(linalg::is_invertible(c), "degree {n}");
        }
        let cyc = cyclic_kernel_subcomplex(&ext, 1).unwrap();
        assert_eq!(cyc.complex().dims(), cyc.ses.p.dims());
    }

    #[test]
    fn e1_kernel_dims() {
        let k = kernel_subcomplex(&split_field(), 1).unwrap();
        assert_eq!(k.complex().dims(), &[1, 3, 7, 15]);
        check_complex(k.complex()).unwrap();
        assert_eq!(check_quasi_isomorphism(&k.comparison, 1).unwrap(), vec![true, true]);
        let c = cyclic_kernel_subcomplex(&split_field(), 3).unwrap();
        for (n, m) in c.comparison.components.iter().enumerate() {
            assert!(linalg::is_injective(m), "degree {n}");
        }
    }

    #[test]
    fn e2_comparison_fails_in_degree_zero() {
        let k = kernel_subcomplex(&corner(), 1).unwrap();
        let qi = check_quasi_isomorphism(&k.comparison, 1).unwrap();
        assert!(!qi[0]);
        let c = cyclic_kernel_subcomplex(&corner(), 1).unwrap();
        assert_eq!(c.complex().dim(0), 1);
    }

    #[test]
    fn kernel_span() {
        assert_eq!(verify_kernel_span(&corner(), 1), Ok(1));
        assert_eq!(verify_kernel_span(&corner(), 2), Ok(5));
        assert_eq!(verify_kernel_span(&split_field(), 3), Ok(7));
    }
}
