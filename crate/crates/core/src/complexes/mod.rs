//! Finite chain complexes over the rationals.
//!
//! A [`ChainComplex`] has spaces `C_0 … C_top` and differentials
//! `d_n : C_{n+1} → C_n`. Cochain complexes are stored as chain complexes
//! with the degrees reversed (see [`dualize`]), so one homology routine
//! serves both.

mod homology;
pub mod random;
mod ses;

use std::sync::Arc;

pub use homology::{homology, homology_range, HomologyGroup, HomologyTable};
pub use ses::{
    check_quasi_isomorphism, connecting_homomorphism, induced_map_on_homology, long_exact_sequence,
    DefectRule, LesData, LongSequence, SequenceNode, ShortExactSequence,
};
pub use ses::{connecting_map_between, induced_map_between};
pub(crate) use ses::SequenceBuilder;

use crate::linalg::{self, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d_{degree} ∘ d_{} ≠ 0 (entry ({row}, {col}) = {value})", degree + 1)]
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
        value: Rational,
    },
    #[error("chain map does not commute with the differentials at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("component {degree} of the inclusion is not injective")]
    NotInjective { degree: usize },
    #[error("component {degree} of the projection is not surjective")]
    NotSurjective { degree: usize },
    #[error("image of the inclusion differs from the kernel of the projection at degree {degree}")]
    NotExactInMiddle { degree: usize },
    #[error("chain map sends a cycle or boundary to the wrong class at degree {degree}")]
    WellDefinednessViolation { degree: usize },
    #[error("could not lift through the short exact sequence at degree {degree}")]
    LiftFailure { degree: usize },
    #[error("connecting map at degree {degree} depends on the choice of lift")]
    ChoiceDependence { degree: usize },
    #[error("consecutive maps do not compose to zero at sequence node {node}")]
    CompositionNotZero { node: usize },
    #[error("degree {degree} outside the complex (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
}

/// Spaces `C_0 … C_top` with `d_n : C_{n+1} → C_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `diffs[n]` must be `dims[n] × dims[n+1]`.
    pub fn new(dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self, ComplexError> {
        if dims.is_empty() {
            return Err(ComplexError::Shape("a complex needs at least one space".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(ComplexError::Shape(format!(
                "{} spaces need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[n], dims[n + 1]) {
                return Err(ComplexError::Shape(format!(
                    "d_{n} is {:?}, expected {:?}",
                    d.shape(),
                    (dims[n], dims[n + 1])
                )));
            }
        }
        Ok(ChainComplex { dims, diffs })
    }

    pub fn zero(dims: Vec<usize>) -> Self {
        let diffs = dims.windows(2).map(|w| Matrix::zeros(w[0], w[1])).collect();
        ChainComplex { dims, diffs }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// `d_n : C_{n+1} → C_n`, for `n < top`.
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.diffs[n]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    /// Map into degree `n`, i.e. `d_n`, or a zero map at the top degree.
    pub(crate) fn incoming(&self, n: usize) -> Matrix {
        if n < self.top() {
            self.diffs[n].clone()
        } else {
            Matrix::zeros(self.dims[n], 0)
        }
    }
}

/// Checks `d_n ∘ d_{n+1} = 0` everywhere, reporting the first failure.
pub fn check_complex(k: &ChainComplex) -> Result<(), ComplexError> {
    for n in 0..k.diffs.len().saturating_sub(1) {
        let comp = k.diffs[n].mul(&k.diffs[n + 1]);
        if let Some((row, col, value)) = comp.first_nonzero() {
            return Err(ComplexError::NotAComplex {
                degree: n,
                row,
                col,
                value,
            });
        }
    }
    Ok(())
}

/// The dual cochain complex, stored as a chain complex with degree `m`
/// holding the dual of `C_{top-m}`. Applying it twice gives back `k`.
pub fn dualize(k: &ChainComplex) -> ChainComplex {
    let top = k.top();
    ChainComplex {
        dims: k.dims.iter().rev().copied().collect(),
        diffs: (0..top).map(|m| k.diffs[top - 1 - m].transpose()).collect(),
    }
}

/// Cohomological degree of chain degree `m` in a dualized complex.
pub fn dual_degree(top: usize, m: usize) -> usize {
    top - m
}

/// Degreewise linear maps commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub components: Vec<Matrix>,
}

impl ChainMap {
    /// Validates shapes and `d ∘ ψ = ψ ∘ d`.
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<Matrix>,
    ) -> Result<Self, ComplexError> {
        let map = ChainMap {
            source,
            target,
            components,
        };
        map.check()?;
        Ok(map)
    }

    pub fn identity(k: Arc<ChainComplex>) -> Self {
        let components = k.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ChainMap {
            source: k.clone(),
            target: k,
            components,
        }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(t, s))
            .collect();
        ChainMap {
            source,
            target,
            components,
        }
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        let (s, t) = (&self.source, &self.target);
        if s.top() != t.top() || self.components.len() != s.dims.len() {
            return Err(ComplexError::Shape(format!(
                "chain map between complexes of top degree {} and {} with {} components",
                s.top(),
                t.top(),
                self.components.len()
            )));
        }
        for (n, c) in self.components.iter().enumerate() {
            if c.shape() != (t.dims[n], s.dims[n]) {
                return Err(ComplexError::Shape(format!(
                    "component {n} is {:?}, expected {:?}",
                    c.shape(),
                    (t.dims[n], s.dims[n])
                )));
            }
        }
        for n in 0..s.top() {
            let lhs = t.diffs[n].mul(&self.components[n + 1]);
            let rhs = self.components[n].mul(&s.diffs[n]);
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| g.mul(f))
                .collect(),
        }
    }

    pub fn is_degreewise_injective(&self) -> bool {
        self.components.iter().all(linalg::is_injective)
    }
}

/// Transpose of a chain map between dualized complexes: `ψ : K → L` gives
/// `ψ* : L* → K*`. `source_dual`/`target_dual` must be `dualize(L)`/`dualize(K)`.
pub fn dualize_map(
    psi: &ChainMap,
    source_dual: Arc<ChainComplex>,
    target_dual: Arc<ChainComplex>,
) -> ChainMap {
    let top = psi.source.top();
    ChainMap {
        source: source_dual,
        target: target_dual,
        components: (0..=top).map(|m| psi.components[top - m].transpose()).collect(),
    }
}
