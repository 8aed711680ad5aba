use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::homology::{homology_range, HomologyGroup, HomologyTable};
use super::{dualize, dualize_map, ChainComplex, ChainMap, ComplexError};
use crate::linalg::{self, ColumnReduction, LinalgError, Matrix, SparseVec, Tracking};

/// `0 → K → P → L → 0`, degreewise exact.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub k: Arc<ChainComplex>,
    pub p: Arc<ChainComplex>,
    pub l: Arc<ChainComplex>,
    pub inj: ChainMap,
    pub surj: ChainMap,
}

impl ShortExactSequence {
    pub fn new(inj: ChainMap, surj: ChainMap) -> Result<Self, ComplexError> {
        if !(Arc::ptr_eq(&inj.target, &surj.source) || *inj.target == *surj.source) {
            return Err(ComplexError::Shape(
                "the inclusion's target is not the projection's source".into(),
            ));
        }
        inj.check()?;
        surj.check()?;
        for n in 0..inj.components.len() {
            let (i, s) = (&inj.components[n], &surj.components[n]);
            if !linalg::is_injective(i) {
                return Err(ComplexError::NotInjective { degree: n });
            }
            if !linalg::is_surjective(s) {
                return Err(ComplexError::NotSurjective { degree: n });
            }
            if !s.mul(i).is_zero() || i.cols() + s.rows() != i.rows() {
                return Err(ComplexError::NotExactInMiddle { degree: n });
            }
        }
        Ok(ShortExactSequence {
            k: inj.source.clone(),
            p: inj.target.clone(),
            l: surj.target.clone(),
            inj,
            surj,
        })
    }

    pub fn top(&self) -> usize {
        self.p.top()
    }

    /// `0 → L* → P* → K* → 0` on the dualized complexes.
    pub fn dual(&self) -> ShortExactSequence {
        let (kd, pd, ld) = (
            Arc::new(dualize(&self.k)),
            Arc::new(dualize(&self.p)),
            Arc::new(dualize(&self.l)),
        );
        let inj = dualize_map(&self.surj, ld.clone(), pd.clone());
        let surj = dualize_map(&self.inj, pd.clone(), kd.clone());
        ShortExactSequence {
            k: ld,
            p: pd,
            l: kd,
            inj,
            surj,
        }
    }
}

/// Matrix of the map `src → tgt` induced by the chain-level component `psi_n`.
///
/// Checks that cycles go to cycles and boundaries to boundaries.
pub fn induced_map_between(
    psi_n: &Matrix,
    src: &HomologyGroup,
    tgt: &HomologyGroup,
) -> Result<Matrix, ComplexError> {
    let degree = src.degree();
    let bad = ComplexError::WellDefinednessViolation { degree };
    let mut cols = Vec::with_capacity(src.dim());
    for k in 0..src.dim() {
        let image = psi_n.apply(src.representative(k));
        cols.push(tgt.class_of(&image).ok_or_else(|| bad.clone())?);
    }
    for b in src.boundary_vectors() {
        if !tgt.is_boundary(&psi_n.apply(b)) {
            return Err(bad);
        }
    }
    Ok(Matrix::from_columns(tgt.dim(), cols))
}

/// `H_n(ψ)` in the deterministic homology bases.
pub fn induced_map_on_homology(psi: &ChainMap, n: usize) -> Result<Matrix, ComplexError> {
    let top = psi.source.top();
    if n > top {
        return Err(ComplexError::DegreeOutOfRange { degree: n, top });
    }
    let src = HomologyGroup::compute(&psi.source, n);
    let tgt = HomologyGroup::compute(&psi.target, n);
    induced_map_between(&psi.components[n], &src, &tgt)
}

/// For each degree `0..=n_report`, whether `H_n(ψ)` is invertible.
pub fn check_quasi_isomorphism(psi: &ChainMap, n_report: usize) -> Result<Vec<bool>, ComplexError> {
    let src = homology_range(&psi.source, 0..=n_report);
    let tgt = homology_range(&psi.target, 0..=n_report);
    (0..=n_report)
        .map(|n| {
            let m = induced_map_between(&psi.components[n], src.group(n)?, tgt.group(n)?)?;
            Ok(linalg::is_invertible(&m))
        })
        .collect()
}

/// Zig-zag lifting data for one degree.
struct Lifter {
    surj: ColumnReduction,
    shift: SparseVec,
    inj: ColumnReduction,
}

impl Lifter {
    fn new(ses: &ShortExactSequence, n: usize) -> Self {
        let surj = ColumnReduction::new(&ses.surj.components[n], Tracking::Full);
        let shift = SparseVec::combination(
            surj.kernel_vectors()
                .iter()
                .map(|(_, v)| (&crate::Rational::ONE, v)),
        );
        let inj = ColumnReduction::new(&ses.inj.components[n - 1], Tracking::Full);
        Lifter { surj, shift, inj }
    }
}

/// `ζ_n : H_n(L) → H_{n-1}(K)` given the two homology groups.
///
/// Every class is computed from two different lifts (free variables zero,
/// then shifted by every kernel vector of the projection) and the results
/// compared.
pub fn connecting_map_between(
    ses: &ShortExactSequence,
    n: usize,
    hl: &HomologyGroup,
    hk: &HomologyGroup,
) -> Result<Matrix, ComplexError> {
    assert!(n >= 1 && hl.degree() == n && hk.degree() == n - 1);
    let lifter = Lifter::new(ses, n);
    let dp = ses.p.differential(n - 1);
    let pull = |x: &SparseVec| -> Result<SparseVec, ComplexError> {
        let y = dp.apply(x);
        let k = lifter
            .inj
            .solve(&y)
            .ok_or(ComplexError::LiftFailure { degree: n })?;
        hk.class_of(&k)
            .ok_or(ComplexError::WellDefinednessViolation { degree: n - 1 })
    };
    let mut cols = Vec::with_capacity(hl.dim());
    for c in 0..hl.dim() {
        let x0 = lifter
            .surj
            .solve(hl.representative(c))
            .ok_or(ComplexError::LiftFailure { degree: n })?;
        let first = pull(&x0)?;
        let second = pull(&x0.add(&lifter.shift))?;
        if first != second {
            return Err(ComplexError::ChoiceDependence { degree: n });
        }
        cols.push(first);
    }
    Ok(Matrix::from_columns(hk.dim(), cols))
}

/// `ζ_n : H_n(L) → H_{n-1}(K)` for `1 ≤ n ≤ top`.
pub fn connecting_homomorphism(ses: &ShortExactSequence, n: usize) -> Result<Matrix, ComplexError> {
    let top = ses.top();
    if n == 0 || n > top {
        return Err(ComplexError::DegreeOutOfRange { degree: n, top });
    }
    let hl = HomologyGroup::compute(&ses.l, n);
    let hk = HomologyGroup::compute(&ses.k, n - 1);
    connecting_map_between(ses, n, &hl, &hk)
}

/// Homology groups and maps of the long exact sequence over `lo..=hi`.
///
/// Flank groups are included where the complex has them: `H_{hi+1}(L)` at
/// the top and `H_{lo-1}(K)` at the bottom, so that every node inside the
/// range has both neighbours.
#[derive(Clone, Debug)]
pub struct LesData {
    pub lo: usize,
    pub hi: usize,
    pub k: HomologyTable,
    pub p: HomologyTable,
    pub l: HomologyTable,
    /// `H_n(K) → H_n(P)` keyed by `n`.
    pub f: BTreeMap<usize, Matrix>,
    /// `H_n(P) → H_n(L)` keyed by `n`.
    pub g: BTreeMap<usize, Matrix>,
    /// `ζ_n : H_n(L) → H_{n-1}(K)` keyed by `n`.
    pub delta: BTreeMap<usize, Matrix>,
}

impl LesData {
    pub fn compute(ses: &ShortExactSequence, lo: usize, hi: usize) -> Result<Self, ComplexError> {
        let top = ses.top();
        if lo > hi || hi > top {
            return Err(ComplexError::DegreeOutOfRange { degree: hi, top });
        }
        let k_lo = lo.saturating_sub(1);
        let l_hi = (hi + 1).min(top);
        let ((k, p), l) = rayon::join(
            || {
                rayon::join(
                    || homology_range(&ses.k, k_lo..=hi),
                    || homology_range(&ses.p, lo..=hi),
                )
            },
            || homology_range(&ses.l, lo..=l_hi),
        );
        let mut f = BTreeMap::new();
        let mut g = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for n in lo..=hi {
            f.insert(
                n,
                induced_map_between(&ses.inj.components[n], k.group(n)?, p.group(n)?)?,
            );
            g.insert(
                n,
                induced_map_between(&ses.surj.components[n], p.group(n)?, l.group(n)?)?,
            );
        }
        for n in lo.max(1)..=l_hi {
            delta.insert(
                n,
                connecting_map_between(ses, n, l.group(n)?, k.group(n - 1)?)?,
            );
        }
        Ok(LesData {
            lo,
            hi,
            k,
            p,
            l,
            f,
            g,
            delta,
        })
    }

    /// Flattens into `… → H_n(K) → H_n(P) → H_n(L) → H_{n-1}(K) → …`,
    /// highest degree first. `degree_of` relabels chain degrees (identity
    /// for homology, `top - m` for dualized complexes).
    pub fn to_sequence(
        &self,
        labels: [&str; 3],
        degree_of: impl Fn(usize) -> usize,
        rule: DefectRule,
    ) -> Result<LongSequence, ComplexError> {
        let mut b = SequenceBuilder::default();
        let top_l = self.l.end();
        if top_l > self.hi {
            let n = self.hi + 1;
            b.node(degree_of(n), labels[2], self.l.group(n)?.dim());
            b.map(self.delta[&n].clone());
        } else {
            b.node(degree_of(self.hi), "0", 0);
            b.map(Matrix::zeros(self.k.group(self.hi)?.dim(), 0));
        }
        for n in (self.lo..=self.hi).rev() {
            b.node(degree_of(n), labels[0], self.k.group(n)?.dim());
            b.map(self.f[&n].clone());
            b.node(degree_of(n), labels[1], self.p.group(n)?.dim());
            b.map(self.g[&n].clone());
            b.node(degree_of(n), labels[2], self.l.group(n)?.dim());
            if n > 0 {
                b.map(self.delta[&n].clone());
                if n == self.lo {
                    b.node(degree_of(n - 1), labels[0], self.k.group(n - 1)?.dim());
                }
            } else {
                b.map(Matrix::zeros(0, self.l.group(0)?.dim()));
                b.node(degree_of(0), "0", 0);
            }
        }
        b.finish(rule)
    }
}

/// Computes the long exact sequence of `ses` over degrees `0..=n_report`
/// with strict defects.
pub fn long_exact_sequence(ses: &ShortExactSequence, n_report: usize) -> Result<LongSequence, ComplexError> {
    let data = LesData::compute(ses, 0, n_report)?;
    data.to_sequence(["K", "P", "L"], |n| n, DefectRule::Strict)
}

/// How node defects are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectRule {
    /// `dim Ker g − rank f`; consecutive maps must compose to zero.
    Strict,
    /// `dim(Im f + Ker g) − dim(Im f ∩ Ker g)`; defined for any pair.
    Gap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceNode {
    pub degree: usize,
    pub group: String,
    pub dim: usize,
    /// `None` at the two ends of the sequence.
    pub defect: Option<usize>,
}

/// A finite stretch of a long sequence: `maps[i] : nodes[i] → nodes[i+1]`.
#[derive(Clone, Debug)]
pub struct LongSequence {
    pub nodes: Vec<SequenceNode>,
    pub maps: Vec<Matrix>,
}

impl LongSequence {
    pub fn new(
        nodes: Vec<(usize, String, usize)>,
        maps: Vec<Matrix>,
        rule: DefectRule,
    ) -> Result<Self, ComplexError> {
        if maps.len() + 1 != nodes.len() {
            return Err(ComplexError::Shape(format!(
                "{} nodes need {} maps, got {}",
                nodes.len(),
                nodes.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (nodes[i + 1].2, nodes[i].2) {
                return Err(ComplexError::Shape(format!(
                    "map {i} is {:?}, expected {:?}",
                    m.shape(),
                    (nodes[i + 1].2, nodes[i].2)
                )));
            }
        }
        let last = nodes.len() - 1;
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(i, (degree, group, dim))| {
                let defect = if i == 0 || i == last {
                    None
                } else {
                    let (f, g) = (&maps[i - 1], &maps[i]);
                    Some(match rule {
                        DefectRule::Strict => linalg::exactness_defect(f, g).map_err(|e| match e {
                            LinalgError::CompositionNotZero { .. } => {
                                ComplexError::CompositionNotZero { node: i }
                            }
                            LinalgError::Shape(s) => ComplexError::Shape(s),
                        })?,
                        DefectRule::Gap => linalg::exactness_gap(f, g),
                    })
                };
                Ok(SequenceNode {
                    degree,
                    group,
                    dim,
                    defect,
                })
            })
            .collect::<Result<Vec<_>, ComplexError>>()?;
        Ok(LongSequence { nodes, maps })
    }

    /// True when every defined defect among the selected nodes is zero.
    pub fn is_exact_where(&self, judged: impl Fn(&SequenceNode) -> bool) -> bool {
        self.nodes
            .iter()
            .filter(|n| judged(n))
            .all(|n| n.defect.unwrap_or(0) == 0)
    }

    pub fn is_exact(&self) -> bool {
        self.is_exact_where(|_| true)
    }
}

#[derive(Default)]
pub(crate) struct SequenceBuilder {
    nodes: Vec<(usize, String, usize)>,
    maps: Vec<Matrix>,
}

impl SequenceBuilder {
    pub(crate) fn node(&mut self, degree: usize, group: &str, dim: usize) {
        self.nodes.push((degree, group.to_string(), dim));
    }

    pub(crate) fn map(&mut self, m: Matrix) {
        self.maps.push(m);
    }

    pub(crate) fn finish(self, rule: DefectRule) -> Result<LongSequence, ComplexError> {
        LongSequence::new(self.nodes, self.maps, rule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim(top: usize) -> Arc<ChainComplex> {
        Arc::new(ChainComplex::zero(vec![1; top + 1]))
    }

    #[test]
    fn zero_kernel_gives_isomorphisms() {
        let p = Arc::new(
            ChainComplex::new(vec![1, 1, 1], vec![Matrix::zeros(1, 1), Matrix::identity(1)]).unwrap(),
        );
        let k = Arc::new(ChainComplex::zero(vec![0, 0, 0]));
        let inj = ChainMap::zero(k, p.clone());
        let surj = ChainMap::identity(p);
        let ses = ShortExactSequence::new(inj, surj).unwrap();
        let les = long_exact_sequence(&ses, 1).unwrap();
        assert!(les.is_exact());
        assert_eq!(connecting_homomorphism(&ses, 1).unwrap().shape(), (0, 0));
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        let k = one_dim(2);
        let l = one_dim(2);
        let p = Arc::new(ChainComplex::zero(vec![2; 3]));
        let inj = ChainMap::new(k, p.clone(), vec![Matrix::from_i64(2, 1, &[1, 0]); 3]).unwrap();
        let surj = ChainMap::new(p, l, vec![Matrix::from_i64(1, 2, &[0, 1]); 3]).unwrap();
        let ses = ShortExactSequence::new(inj, surj).unwrap();
        assert!(connecting_homomorphism(&ses, 1).unwrap().is_zero());
        assert!(long_exact_sequence(&ses, 1).unwrap().is_exact());
    }

    #[test]
    fn nonsplit_sequence() {
        // P: Q^2 in degrees 0 and 1 (d = e_0 ↦ 0, e_1 ↦ e_0); K = first summand.
        let p = Arc::new(ChainComplex::new(vec![1, 1], vec![Matrix::identity(1)]).unwrap());
        let k = Arc::new(ChainComplex::new(vec![1, 0], vec![Matrix::zeros(1, 0)]).unwrap());
        let l = Arc::new(ChainComplex::new(vec![0, 1], vec![Matrix::zeros(0, 1)]).unwrap());
        let inj = ChainMap::new(k, p.clone(), vec![Matrix::identity(1), Matrix::zeros(1, 0)]).unwrap();
        let surj = ChainMap::new(p, l, vec![Matrix::zeros(0, 1), Matrix::identity(1)]).unwrap();
        let ses = ShortExactSequence::new(inj, surj).unwrap();
        let z = connecting_homomorphism(&ses, 1).unwrap();
        assert!(linalg::is_invertible(&z));
        let les = long_exact_sequence(&ses, 1).unwrap();
        assert!(les.is_exact());
        let dual = ses.dual();
        let top = dual.top();
        let seq = LesData::compute(&dual, 0, 1)
            .unwrap()
            .to_sequence(["L*", "P*", "K*"], |m| top - m, DefectRule::Strict)
            .unwrap();
        assert!(seq.is_exact());
    }

    #[test]
    fn corrupted_projection_is_rejected() {
        let p = Arc::new(ChainComplex::new(vec![1, 1], vec![Matrix::identity(1)]).unwrap());
        let l = Arc::new(ChainComplex::new(vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap());
        let surj = ChainMap::new(p.clone(), l, vec![Matrix::identity(1), Matrix::identity(1)]);
        assert!(matches!(surj, Err(ComplexError::NotAChainMap { .. })));
    }

    #[test]
    fn strict_defect_rejects_noncomplex() {
        let nodes = vec![(0, "a".into(), 1), (0, "b".into(), 1), (0, "c".into(), 1)];
        let maps = vec![Matrix::identity(1), Matrix::identity(1)];
        assert_eq!(
            LongSequence::new(nodes.clone(), maps.clone(), DefectRule::Strict).unwrap_err(),
            ComplexError::CompositionNotZero { node: 1 }
        );
        let gap = LongSequence::new(nodes, maps, DefectRule::Gap).unwrap();
        assert_eq!(gap.nodes[1].defect, Some(1));
    }
}
