//! Long sequences for one theory of one extension: the snake sequences of
//! `0 → K → X(A) → X(D) → 0` and the candidate excision sequences with
//! `H(B)` in place of `H(K)`.

use serde::{Deserialize, Serialize};

use super::ExcisionError;
use crate::complexes::{
    dualize, dualize_map, homology_range, induced_map_between, DefectRule, HomologyTable, LesData, LongSequence,
    SequenceBuilder, SequenceNode,
};
use crate::hochschild::{KernelComplex, Theory};
use crate::linalg::{self, ColumnReduction, Matrix, SparseVec, Tracking};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    /// From the short exact sequence of complexes; always exact.
    Snake,
    /// `H(B)` substituted for the homology of the kernel complex.
    Excision,
}

/// How the connecting map into (or out of) `H(B)` was obtained from the
/// true connecting map of the snake sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// The comparison map is invertible in that degree.
    Inverse,
    /// Composed with a left inverse of the injective comparison map.
    Retraction,
    /// Composed with a right inverse of the surjective comparison map.
    Section,
    /// The true connecting map factors through the comparison map.
    Factorization,
    /// None of the above; the zero map is used.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionRecord {
    pub degree: usize,
    pub convention: Convention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub name: String,
    pub theory: Theory,
    pub variance: Variance,
    pub layer: Layer,
    pub nodes: Vec<SequenceNode>,
    /// Nodes of degree above this are reported but not judged.
    pub judged_up_to: usize,
    pub conventions: Vec<ConventionRecord>,
    pub exact: bool,
}

impl SequenceRecord {
    pub fn node(&self, degree: usize, group: &str) -> Option<&SequenceNode> {
        self.nodes.iter().find(|n| n.degree == degree && n.group == group)
    }

    /// Defects at judged nodes, in sequence order.
    pub fn judged(&self) -> impl Iterator<Item = &SequenceNode> {
        self.nodes
            .iter()
            .filter(move |n| n.degree <= self.judged_up_to && n.defect.is_some())
    }
}

/// Human-readable sequence name.
pub fn sequence_name(theory: Theory, variance: Variance, layer: Layer) -> String {
    let t = match theory {
        Theory::Hochschild => "simplicial",
        Theory::Cyclic => "cyclic",
        Theory::Bar => "bar",
    };
    let v = match variance {
        Variance::Homology => "homology",
        Variance::Cohomology => "cohomology",
    };
    match layer {
        Layer::Excision => format!("{t} {v}"),
        Layer::Snake => format!("{t} {v} (snake)"),
    }
}

/// Group label such as `H_2(A)` or `HC^1(B)`.
pub fn group_label(theory: Theory, variance: Variance, degree: usize, space: &str) -> String {
    match variance {
        Variance::Homology => format!("{}_{}({})", theory.symbol(), degree, space),
        Variance::Cohomology => format!("{}^{}({})", theory.symbol(), degree, space),
    }
}

/// Homology and cohomology dimensions of the four complexes, degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub b: Vec<usize>,
    pub a: Vec<usize>,
    pub d: Vec<usize>,
    pub kernel: Vec<usize>,
}

/// Everything computed for one theory.
pub(crate) struct TheoryResult {
    pub snake: [SequenceRecord; 2],
    pub candidate: [SequenceRecord; 2],
    pub homology: DimTable,
    pub cohomology: DimTable,
    /// Whether `H_n` of the comparison map is invertible, `n = 0..=N`.
    pub qi_homology: Vec<bool>,
    /// Whether `H^n` of the dual comparison map is invertible, `n = 0..=N`.
    pub qi_cohomology: Vec<bool>,
    pub chain_injective: bool,
}

/// `x` with `c x = δ`-style substitution on the homology side: `c : X → Y`,
/// `δ : Z → Y`, returns `δ' : Z → X`.
fn through_left(c: &Matrix, delta: &Matrix) -> (Matrix, Convention) {
    let (y, x) = c.shape();
    if linalg::is_injective(c) {
        let red = ColumnReduction::new(&c.transpose(), Tracking::Full);
        let rt: Vec<SparseVec> = (0..x)
            .map(|k| red.solve(&SparseVec::unit(k)).expect("injective map has a left inverse"))
            .collect();
        let r = Matrix::from_columns(y, rt).transpose();
        let conv = if x == y { Convention::Inverse } else { Convention::Retraction };
        return (r.mul(delta), conv);
    }
    let red = ColumnReduction::new(c, Tracking::Full);
    let cols: Option<Vec<SparseVec>> = delta.columns().iter().map(|v| red.solve(v)).collect();
    match cols {
        Some(cols) => (Matrix::from_columns(x, cols), Convention::Factorization),
        None => (Matrix::zeros(x, delta.cols()), Convention::Zero),
    }
}

/// Cohomology-side substitution: `c : Y → X`, `ξ : Y → Z`, returns `ξ' : X → Z`.
fn through_right(c: &Matrix, xi: &Matrix) -> (Matrix, Convention) {
    let (x, y) = c.shape();
    if linalg::is_surjective(c) {
        let red = ColumnReduction::new(c, Tracking::Full);
        let s: Vec<SparseVec> = (0..x)
            .map(|k| red.solve(&SparseVec::unit(k)).expect("surjective map has a section"))
            .collect();
        let s = Matrix::from_columns(y, s);
        let conv = if x == y { Convention::Inverse } else { Convention::Section };
        return (xi.mul(&s), conv);
    }
    let red = ColumnReduction::new(&c.transpose(), Tracking::Full);
    let xt = xi.transpose();
    let cols: Option<Vec<SparseVec>> = xt.columns().iter().map(|v| red.solve(v)).collect();
    match cols {
        Some(cols) => (Matrix::from_columns(x, cols).transpose(), Convention::Factorization),
        None => (Matrix::zeros(xi.rows(), x), Convention::Zero),
    }
}

fn dims(t: &HomologyTable, degrees: impl Iterator<Item = usize>) -> Result<Vec<usize>, ExcisionError> {
    degrees.map(|m| Ok(t.group(m)?.dim())).collect()
}

fn relabel(seq: LongSequence, theory: Theory, variance: Variance, spaces: [&str; 3]) -> Vec<SequenceNode> {
    seq.nodes
        .into_iter()
        .map(|mut node| {
            let space = match node.group.as_str() {
                "K" => Some(spaces[0]),
                "P" => Some(spaces[1]),
                "L" => Some(spaces[2]),
                _ => None,
            };
            if let Some(space) = space {
                node.group = group_label(theory, variance, node.degree, space);
            }
            node
        })
        .collect()
}

fn record(
    theory: Theory,
    variance: Variance,
    layer: Layer,
    nodes: Vec<SequenceNode>,
    judged_up_to: usize,
    conventions: Vec<ConventionRecord>,
) -> SequenceRecord {
    let exact = nodes
        .iter()
        .filter(|n| n.degree <= judged_up_to)
        .all(|n| n.defect.unwrap_or(0) == 0);
    SequenceRecord {
        name: sequence_name(theory, variance, layer),
        theory,
        variance,
        layer,
        nodes,
        judged_up_to,
        conventions,
        exact,
    }
}

/// Builds both variances of both layers for one theory, reporting degrees
/// `0..=n`. The complexes must have top degree at least `n + 2`.
pub(crate) fn analyse(kc: &KernelComplex, n: usize) -> Result<TheoryResult, ExcisionError> {
    let theory = kc.theory;
    let top = kc.ses.top();
    let judged = n.saturating_sub(1);
    let labels = |v| move |deg: usize, s: &str| group_label(theory, v, deg, s);

    // Homology side.
    let (les, hb) = rayon::join(
        || LesData::compute(&kc.ses, 0, n),
        || homology_range(&kc.source, 0..=n),
    );
    let les = les?;
    let c: Vec<Matrix> = (0..=n)
        .map(|m| induced_map_between(&kc.comparison.components[m], hb.group(m)?, les.k.group(m)?))
        .collect::<Result<_, _>>()?;
    let snake_h = les.to_sequence(["K", "P", "L"], |m| m, DefectRule::Strict)?;
    let snake_h = relabel(snake_h, theory, Variance::Homology, ["K", "A", "D"]);

    let lh = labels(Variance::Homology);
    let mut b = SequenceBuilder::default();
    let mut conv_h = Vec::new();
    b.node(n + 1, &lh(n + 1, "D"), les.l.group(n + 1)?.dim());
    for m in (0..=n).rev() {
        let (dp, cv) = through_left(&c[m], &les.delta[&(m + 1)]);
        conv_h.push(ConventionRecord {
            degree: m + 1,
            convention: cv,
        });
        b.map(dp);
        b.node(m, &lh(m, "B"), hb.group(m)?.dim());
        b.map(les.f[&m].mul(&c[m]));
        b.node(m, &lh(m, "A"), les.p.group(m)?.dim());
        b.map(les.g[&m].clone());
        b.node(m, &lh(m, "D"), les.l.group(m)?.dim());
    }
    b.map(Matrix::zeros(0, les.l.group(0)?.dim()));
    b.node(0, "0", 0);
    let cand_h = b.finish(DefectRule::Gap)?;

    // Cohomology side, on dualized complexes: chain degree m is cohomological degree top - m.
    let dses = kc.ses.dual();
    let bd = dualize(&kc.source);
    let lo = top - n;
    let (dles, hbd) = rayon::join(
        || LesData::compute(&dses, lo, top),
        || homology_range(&bd, lo..=top),
    );
    let dles = dles?;
    let kd = dses.l.clone();
    let cstar = dualize_map(&kc.comparison, kd, std::sync::Arc::new(bd));
    let cs: Vec<Matrix> = (0..=n)
        .map(|q| {
            let m = top - q;
            induced_map_between(&cstar.components[m], dles.l.group(m)?, hbd.group(m)?)
        })
        .collect::<Result<_, _>>()?;
    let snake_c = dles.to_sequence(["K", "P", "L"], |m| top - m, DefectRule::Strict)?;
    let snake_c = relabel(snake_c, theory, Variance::Cohomology, ["D", "A", "K"]);

    let lc = labels(Variance::Cohomology);
    let mut b = SequenceBuilder::default();
    let mut conv_c = Vec::new();
    b.node(0, "0", 0);
    b.map(Matrix::zeros(dles.k.group(top)?.dim(), 0));
    for q in 0..=n {
        let m = top - q;
        b.node(q, &lc(q, "D"), dles.k.group(m)?.dim());
        b.map(dles.f[&m].clone());
        b.node(q, &lc(q, "A"), dles.p.group(m)?.dim());
        b.map(cs[q].mul(&dles.g[&m]));
        b.node(q, &lc(q, "B"), hbd.group(m)?.dim());
        let (xp, cv) = through_right(&cs[q], &dles.delta[&m]);
        conv_c.push(ConventionRecord {
            degree: q,
            convention: cv,
        });
        b.map(xp);
    }
    b.node(n + 1, &lc(n + 1, "D"), dles.k.group(lo - 1)?.dim());
    let cand_c = b.finish(DefectRule::Gap)?;

    let rev = |v: Vec<usize>| -> Vec<usize> { v.into_iter().rev().collect() };
    let homology = DimTable {
        b: dims(&hb, 0..=n)?,
        a: dims(&les.p, 0..=n)?,
        d: dims(&les.l, 0..=n)?,
        kernel: dims(&les.k, 0..=n)?,
    };
    let cohomology = DimTable {
        b: rev(dims(&hbd, lo..=top)?),
        a: rev(dims(&dles.p, lo..=top)?),
        d: rev(dims(&dles.k, lo..=top)?),
        kernel: rev(dims(&dles.l, lo..=top)?),
    };
    let chain_injective = kc.comparison.is_degreewise_injective();
    Ok(TheoryResult {
        snake: [
            record(theory, Variance::Homology, Layer::Snake, snake_h, n + 1, Vec::new()),
            record(theory, Variance::Cohomology, Layer::Snake, snake_c, n + 1, Vec::new()),
        ],
        candidate: [
            record(theory, Variance::Homology, Layer::Excision, cand_h.nodes, judged, conv_h),
            record(theory, Variance::Cohomology, Layer::Excision, cand_c.nodes, judged, conv_c),
        ],
        homology,
        cohomology,
        qi_homology: c.iter().map(linalg::is_invertible).collect(),
        qi_cohomology: cs.iter().map(linalg::is_invertible).collect(),
        chain_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_substitution_conventions() {
        let delta = Matrix::from_i64(2, 1, &[1, 1]);
        let (m, c) = through_left(&Matrix::identity(2), &delta);
        assert_eq!((m, c), (delta.clone(), Convention::Inverse));
        let (m, c) = through_left(&Matrix::from_i64(2, 1, &[1, 0]), &delta);
        assert_eq!(c, Convention::Retraction);
        assert_eq!(m, Matrix::from_i64(1, 1, &[1]));
        let (_, c) = through_left(&Matrix::from_i64(2, 2, &[1, 1, 1, 1]), &delta);
        assert_eq!(c, Convention::Factorization);
        let (m, c) = through_left(&Matrix::zeros(2, 1), &delta);
        assert_eq!((m, c), (Matrix::zeros(1, 1), Convention::Zero));
    }

    #[test]
    fn right_substitution_conventions() {
        let xi = Matrix::from_i64(1, 2, &[1, 1]);
        let (m, c) = through_right(&Matrix::identity(2), &xi);
        assert_eq!((m, c), (xi.clone(), Convention::Inverse));
        let (m, c) = through_right(&Matrix::from_i64(1, 2, &[1, 0]), &xi);
        assert_eq!(c, Convention::Section);
        assert_eq!(m, Matrix::from_i64(1, 1, &[1]));
        let (_, c) = through_right(&Matrix::from_i64(2, 2, &[1, 1, 1, 1]), &xi);
        assert_eq!(c, Convention::Factorization);
        let (_, c) = through_right(&Matrix::zeros(1, 2), &xi);
        assert_eq!(c, Convention::Zero);
    }
}
