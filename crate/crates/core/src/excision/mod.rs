//! Excision for algebra extensions `0 → B → A → D → 0`.
//!
//! For each of the three theories the report carries two layers of long
//! sequences. The snake sequences come from `0 → K → X(A) → X(D) → 0`, where
//! `K` is the kernel subcomplex; they are exact for every extension. The
//! candidate excision sequences put `H(B)` in place of `H(K)` through the
//! comparison map `X(B) → K`, and are exact when that map is a
//! quasi-isomorphism, which a one-sided unit in `B` guarantees.
//!
//! Defects are judged over degrees `0..=N-1`; degree-`N` nodes are reported
//! but their outgoing maps would need degree `N + 1` data from `B`.

mod candidate;
pub mod corpus;
mod scenario;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use candidate::{
    group_label, sequence_name, Convention, ConventionRecord, DimTable, Layer, SequenceRecord, Variance,
};
pub use scenario::{Pattern, ScenarioCheck, ScenarioReport, ScenarioStatus};

use crate::algebra::{find_unit, validate_extension, Extension, ExtensionViolation, UnitWitness};
use crate::complexes::ComplexError;
use crate::hochschild::{internal_top, ExtensionComplexes, HochschildError, Theory};
use candidate::{analyse, TheoryResult};

/// Largest number of basis tensors in the top chain space before a run is refused.
pub const TENSOR_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExcisionError {
    #[error("dim A = {dim} at max degree {n_report} needs {tensors} basis tensors (cap {TENSOR_CAP})")]
    DegreeCapExceeded { dim: usize, n_report: usize, tensors: u128 },
    #[error("invalid extension: {0}")]
    Invalid(#[from] ExtensionViolation),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Number of basis tensors `dim^(N+3)` in the top chain space built for max degree `N`.
pub fn tensor_count(dim: usize, n_report: usize) -> u128 {
    let exp = (internal_top(n_report) + 1) as u32;
    (dim as u128).checked_pow(exp).unwrap_or(u128::MAX)
}

pub fn check_degree_cap(dim: usize, n_report: usize) -> Result<(), ExcisionError> {
    let tensors = tensor_count(dim, n_report);
    if tensors > TENSOR_CAP {
        Err(ExcisionError::DegreeCapExceeded { dim, n_report, tensors })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub b: String,
    pub a: String,
    pub d: String,
    pub dim_b: usize,
    pub dim_a: usize,
    pub dim_d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    /// Stand-in for a bounded one-sided approximate identity.
    pub surrogate: String,
    pub unit: UnitWitness,
    /// `dim HR_n(B)`, `n = 0..=N`.
    pub bar_homology: Vec<usize>,
    pub h_unital: bool,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub theory: Theory,
    /// Whether the comparison map is invertible on `H_n`, `n = 0..=N`.
    pub homology: Vec<bool>,
    /// Same for the dual map on `H^n`.
    pub cohomology: Vec<bool>,
    pub chain_injective: bool,
    pub quasi_isomorphism: bool,
    pub duality_consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Computed outside the hypothesis; nothing is asserted.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarInvariance {
    pub status: CheckStatus,
    pub homology_a: Vec<usize>,
    pub homology_d: Vec<usize>,
    pub cohomology_a: Vec<usize>,
    pub cohomology_d: Vec<usize>,
    /// `A` has a one-sided unit, so both sides must vanish.
    pub a_has_unit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceVerdict {
    EquivalentAndExact,
    EquivalentAndInexact,
    NotEquivalent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRecord {
    pub theory: Theory,
    pub homology_exact: bool,
    pub cohomology_exact: bool,
    /// `dim H^n = dim H_n` for all four complexes.
    pub betti_duality: bool,
    /// Each judged homology node is exact iff its cohomology partner is.
    pub nodewise_agreement: bool,
    pub verdict: EquivalenceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryTables {
    pub theory: Theory,
    pub homology: DimTable,
    pub cohomology: DimTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Hypothesis met and every assertion holds.
    Exact,
    /// Hypothesis not met; the unconditional assertions hold.
    OutOfHypothesis,
    /// Some assertion that must hold failed.
    AssertionFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcisionReport {
    pub extension: ExtensionSummary,
    pub max_degree: usize,
    pub internal_top: usize,
    pub hypothesis: Hypothesis,
    /// Six candidate sequences, then six snake sequences.
    pub sequences: Vec<SequenceRecord>,
    pub comparison: Vec<ComparisonRecord>,
    pub bar_invariance: BarInvariance,
    pub equivalence: Vec<EquivalenceRecord>,
    pub tables: Vec<TheoryTables>,
    pub scenarios: Vec<ScenarioReport>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

impl ExcisionReport {
    pub fn sequence(&self, theory: Theory, variance: Variance, layer: Layer) -> &SequenceRecord {
        self.sequences
            .iter()
            .find(|s| s.theory == theory && s.variance == variance && s.layer == layer)
            .expect("every sequence is present")
    }

    pub fn candidates(&self) -> impl Iterator<Item = &SequenceRecord> {
        self.sequences.iter().filter(|s| s.layer == Layer::Excision)
    }

    pub fn snakes(&self) -> impl Iterator<Item = &SequenceRecord> {
        self.sequences.iter().filter(|s| s.layer == Layer::Snake)
    }

    pub fn comparison_for(&self, theory: Theory) -> &ComparisonRecord {
        self.comparison.iter().find(|c| c.theory == theory).expect("every theory is present")
    }

    pub fn tables_for(&self, theory: Theory) -> &TheoryTables {
        self.tables.iter().find(|t| t.theory == theory).expect("every theory is present")
    }

    pub fn scenario(&self, pattern: Pattern) -> &ScenarioReport {
        self.scenarios.iter().find(|s| s.pattern == pattern).expect("every pattern is present")
    }
}

/// Runs the full pipeline, respecting the degree cap.
pub fn excision_report(ext: &Extension, n_report: usize) -> Result<ExcisionReport, ExcisionError> {
    excision_report_with(ext, n_report, false)
}

/// As [`excision_report`]; `force` skips the degree cap.
pub fn excision_report_with(ext: &Extension, n_report: usize, force: bool) -> Result<ExcisionReport, ExcisionError> {
    validate_extension(ext)?;
    if !force {
        check_degree_cap(ext.a.dim(), n_report)?;
    }
    let top = internal_top(n_report);
    let complexes = ExtensionComplexes::build(ext, top)?;
    let results: Vec<TheoryResult> = Theory::ALL
        .par_iter()
        .map(|&t| analyse(complexes.get(t), n_report))
        .collect::<Result<_, _>>()?;
    let result = |t: Theory| &results[Theory::ALL.iter().position(|&x| x == t).expect("listed theory")];

    let unit = find_unit(&ext.b);
    let bar = result(Theory::Bar);
    let hypothesis = Hypothesis {
        surrogate: "bounded one-sided approximate identity: an exact left or right unit in B".into(),
        met: unit.exists(),
        unit,
        h_unital: bar.homology.b.iter().all(|&d| d == 0),
        bar_homology: bar.homology.b.clone(),
    };

    let mut sequences = Vec::with_capacity(12);
    for r in &results {
        sequences.extend(r.candidate.iter().cloned());
    }
    for r in &results {
        sequences.extend(r.snake.iter().cloned());
    }

    let comparison: Vec<ComparisonRecord> = Theory::ALL
        .iter()
        .map(|&t| {
            let r = result(t);
            ComparisonRecord {
                theory: t,
                homology: r.qi_homology.clone(),
                cohomology: r.qi_cohomology.clone(),
                chain_injective: r.chain_injective,
                quasi_isomorphism: r.qi_homology.iter().all(|&b| b),
                duality_consistent: r.qi_homology == r.qi_cohomology,
            }
        })
        .collect();

    let a_has_unit = find_unit(&ext.a).exists();
    let bar_invariance = bar_invariance_from(bar, hypothesis.met, a_has_unit);
    let equivalence: Vec<EquivalenceRecord> = Theory::ALL.iter().map(|&t| equivalence_from(t, result(t))).collect();
    let tables = Theory::ALL
        .iter()
        .map(|&t| TheoryTables {
            theory: t,
            homology: result(t).homology.clone(),
            cohomology: result(t).cohomology.clone(),
        })
        .collect();
    let scenarios = scenario::evaluate(
        ext,
        n_report,
        result(Theory::Hochschild),
        result(Theory::Cyclic),
    );

    let mut failures = Vec::new();
    for s in sequences.iter().filter(|s| s.layer == Layer::Snake && !s.exact) {
        failures.push(format!("{} is not exact", s.name));
    }
    for e in &equivalence {
        if !e.betti_duality {
            failures.push(format!("{} Betti numbers differ between homology and cohomology", e.theory.name()));
        }
        if e.verdict == EquivalenceVerdict::NotEquivalent || !e.nodewise_agreement {
            failures.push(format!("{} homology and cohomology exactness disagree", e.theory.name()));
        }
    }
    for c in comparison.iter().filter(|c| !c.duality_consistent) {
        failures.push(format!(
            "{} comparison map: homology and cohomology quasi-isomorphism verdicts differ",
            c.theory.name()
        ));
    }
    if hypothesis.met {
        for s in sequences.iter().filter(|s| s.layer == Layer::Excision && !s.exact) {
            failures.push(format!("{} is not exact although B has a one-sided unit", s.name));
        }
        for c in comparison.iter().filter(|c| !c.quasi_isomorphism) {
            failures.push(format!("{} comparison map is not a quasi-isomorphism", c.theory.name()));
        }
        if !hypothesis.h_unital {
            failures.push("bar homology of B does not vanish although B has a one-sided unit".into());
        }
        if bar_invariance.status == CheckStatus::Fail {
            failures.push("bar homology of A differs from that of D".into());
        }
    }
    for s in scenarios.iter().filter(|s| s.status == ScenarioStatus::Fail) {
        failures.push(format!("{} fails", s.pattern.label()));
    }
    let verdict = if !failures.is_empty() {
        Verdict::AssertionFailure
    } else if hypothesis.met {
        Verdict::Exact
    } else {
        Verdict::OutOfHypothesis
    };

    Ok(ExcisionReport {
        extension: ExtensionSummary {
            b: ext.b.name().into(),
            a: ext.a.name().into(),
            d: ext.d.name().into(),
            dim_b: ext.b.dim(),
            dim_a: ext.a.dim(),
            dim_d: ext.d.dim(),
        },
        max_degree: n_report,
        internal_top: top,
        hypothesis,
        sequences,
        comparison,
        bar_invariance,
        equivalence,
        tables,
        scenarios,
        failures,
        verdict,
    })
}

fn bar_invariance_from(bar: &TheoryResult, met: bool, a_has_unit: bool) -> BarInvariance {
    let (h, c) = (&bar.homology, &bar.cohomology);
    let agree = h.a == h.d && c.a == c.d;
    let vanish = [&h.a, &h.d, &c.a, &c.d].iter().all(|v| v.iter().all(|&d| d == 0));
    let status = if !met {
        CheckStatus::Informational
    } else if agree && (!a_has_unit || vanish) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    BarInvariance {
        status,
        homology_a: h.a.clone(),
        homology_d: h.d.clone(),
        cohomology_a: c.a.clone(),
        cohomology_d: c.d.clone(),
        a_has_unit,
    }
}

/// The space letter in a label such as `HC_2(A)`.
fn space_of(group: &str) -> Option<&str> {
    let open = group.rfind('(')?;
    group[open + 1..].strip_suffix(')')
}

fn equivalence_from(theory: Theory, r: &TheoryResult) -> EquivalenceRecord {
    let [hom, coh] = &r.candidate;
    let betti_duality = r.homology == r.cohomology;
    let nodewise_agreement = hom.judged().all(|h| {
        let Some(space) = space_of(&h.group) else {
            return true;
        };
        let partner = group_label(theory, Variance::Cohomology, h.degree, space);
        match coh.node(h.degree, &partner).and_then(|c| c.defect) {
            Some(d) => (d == 0) == (h.defect == Some(0)),
            None => false,
        }
    });
    let verdict = match (hom.exact, coh.exact) {
        (true, true) => EquivalenceVerdict::EquivalentAndExact,
        (false, false) => EquivalenceVerdict::EquivalentAndInexact,
        _ => EquivalenceVerdict::NotEquivalent,
    };
    EquivalenceRecord {
        theory,
        homology_exact: hom.exact,
        cohomology_exact: coh.exact,
        betti_duality,
        nodewise_agreement,
        verdict,
    }
}

/// Homology-side exactness against cohomology-side exactness, per theory.
pub fn check_hlgy_cohlgy_equivalence(ext: &Extension, n_report: usize) -> Result<Vec<EquivalenceRecord>, ExcisionError> {
    Ok(excision_report(ext, n_report)?.equivalence)
}

/// `HR(A)` against `HR(D)`, in both variances.
pub fn check_bar_invariance(ext: &Extension, n_report: usize) -> Result<BarInvariance, ExcisionError> {
    Ok(excision_report(ext, n_report)?.bar_invariance)
}

/// The amenable pattern for `B`, or with [`Pattern::QuotientAmenable`] its
/// mirror image for `D`.
pub fn amenable_scenario_check(ext: &Extension, n_report: usize, pattern: Pattern) -> Result<ScenarioReport, ExcisionError> {
    assert!(pattern != Pattern::Traceless, "use traceless_scenario_check");
    Ok(excision_report(ext, n_report)?.scenario(pattern).clone())
}

pub fn traceless_scenario_check(ext: &Extension, n_report: usize) -> Result<ScenarioReport, ExcisionError> {
    Ok(excision_report(ext, n_report)?.scenario(Pattern::Traceless).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Preset};

    fn field() -> Algebra {
        Preset::Field.build().unwrap()
    }

    fn corner() -> Extension {
        corpus::non_unital_corpus().remove(0).extension
    }

    #[test]
    fn split_field_is_exact() {
        let r = excision_report(&Extension::split(&field(), &field()), 3).unwrap();
        assert_eq!(r.verdict, Verdict::Exact);
        assert_eq!(r.sequences.len(), 12);
        assert!(r.sequences.iter().all(|s| s.exact));
        assert_eq!(r.bar_invariance.status, CheckStatus::Pass);
        assert!(r
            .equivalence
            .iter()
            .all(|e| e.verdict == EquivalenceVerdict::EquivalentAndExact));
    }

    #[test]
    fn corner_ideal_breaks_excision_at_degree_zero() {
        let r = excision_report(&corner(), 3).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfHypothesis);
        assert!(!r.hypothesis.met);
        assert_eq!(r.hypothesis.bar_homology, vec![1, 1, 1, 1]);
        assert!(!r.comparison_for(Theory::Hochschild).homology[0]);
        let seq = r.sequence(Theory::Hochschild, Variance::Homology, Layer::Excision);
        assert_eq!(seq.node(0, "H_0(B)").unwrap().defect, Some(1));
        assert!(r.snakes().all(|s| s.exact));
        assert_eq!(r.bar_invariance.status, CheckStatus::Informational);
        let eq = &r.equivalence[0];
        assert_eq!(eq.verdict, EquivalenceVerdict::EquivalentAndInexact);
    }

    #[test]
    fn report_is_deterministic_and_round_trips() {
        let ext = corner();
        let a = serde_json::to_string(&excision_report(&ext, 2).unwrap()).unwrap();
        let b = serde_json::to_string(&excision_report(&ext, 2).unwrap()).unwrap();
        assert_eq!(a, b);
        let back: ExcisionReport = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }

    #[test]
    fn degree_cap() {
        assert!(check_degree_cap(5, 3).is_ok());
        assert_eq!(tensor_count(10, 3), 1_000_000);
        assert!(check_degree_cap(10, 3).is_ok());
        assert!(matches!(
            check_degree_cap(11, 3),
            Err(ExcisionError::DegreeCapExceeded { dim: 11, n_report: 3, .. })
        ));
        let big = Extension::identity(&Preset::Matrix { k: 4 }.build().unwrap());
        assert!(matches!(excision_report(&big, 3), Err(ExcisionError::DegreeCapExceeded { .. })));
    }

    #[test]
    fn zero_ideal_passes_traceless_pattern() {
        let ext = Extension::split(&Algebra::trivial(), &field());
        let s = traceless_scenario_check(&ext, 2).unwrap();
        assert_eq!(s.status, ScenarioStatus::Pass);
        let s = traceless_scenario_check(&Extension::split(&field(), &field()), 2).unwrap();
        assert_eq!(s.status, ScenarioStatus::SurrogateNotMet);
    }

    #[test]
    fn amenable_pattern_trace_dims() {
        let ext = Extension::split(&Preset::Matrix { k: 2 }.build().unwrap(), &field());
        let s = amenable_scenario_check(&ext, 2, Pattern::Amenable).unwrap();
        assert_eq!(s.status, ScenarioStatus::Pass);
        assert_eq!(s.trace_dims, vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn invalid_extension_is_rejected() {
        let mut ext = Extension::split(&field(), &field());
        ext.j = crate::linalg::Matrix::zeros(1, 2);
        assert!(matches!(excision_report(&ext, 1), Err(ExcisionError::Invalid(_))));
    }
}
