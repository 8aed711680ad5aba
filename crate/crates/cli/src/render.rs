//! Text renderings. Everything printed here is read off an already computed
//! value; nothing is recomputed.

use std::fmt::Write;

use excision_core::algebra::{Algebra, AssociativityViolation, UnitSide};
use excision_core::excision::{
    CheckStatus, DimTable, EquivalenceVerdict, ExcisionReport, Layer, ScenarioStatus, SequenceRecord, Variance,
    Verdict,
};
use excision_core::hochschild::Theory;
use excision_core::linalg::Subspace;
use excision_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyOutput {
    pub theory: Theory,
    pub variance: String,
    pub algebra: String,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceOutput {
    pub algebra: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// Functionals in the dual basis.
    pub basis: Vec<Vec<Rational>>,
}

impl TraceOutput {
    pub fn new(alg: &Algebra, space: &Subspace) -> Self {
        TraceOutput {
            algebra: alg.name().to_string(),
            dim: space.dim(),
            basis_names: alg.basis_names().to_vec(),
            basis: space
                .basis()
                .columns()
                .iter()
                .map(|c| c.to_dense(alg.dim()))
                .collect(),
        }
    }
}

/// `c_0 x_0 + c_1 x_1 + …` with unit coefficients elided.
fn combination(coeffs: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if abs != Rational::one() {
            let _ = write!(out, "{abs}·");
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn violation(alg: &Algebra, v: &AssociativityViolation) -> String {
    let n = alg.basis_names();
    format!(
        "({i}, {j}, {k}): ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}",
        i = v.i,
        j = v.j,
        k = v.k,
        a = n[v.i],
        b = n[v.j],
        c = n[v.k],
        left = combination(&v.left, n),
        right = combination(&v.right, n),
    )
}

fn group(theory: Theory, variance: &str, q: usize) -> String {
    if variance == "cohomology" {
        format!("{}^{q}", theory.symbol())
    } else {
        format!("{}_{q}", theory.symbol())
    }
}

pub fn homology_text(out: &HomologyOutput) -> String {
    let mut s = format!("{} {} of {}\n", out.theory.name(), out.variance, out.algebra);
    for (q, d) in out.dims.iter().enumerate() {
        let _ = writeln!(s, "  {:<6} {d}", group(out.theory, &out.variance, q));
    }
    s
}

pub fn trace_text(out: &TraceOutput) -> String {
    let mut s = format!("dim {}^tr = {}\n", out.algebra, out.dim);
    let names: Vec<String> = out.basis_names.iter().map(|n| format!("{n}*")).collect();
    for (n, f) in out.basis.iter().enumerate() {
        let _ = writeln!(s, "  f{n} = {}", combination(f, &names));
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn row(values: &[usize]) -> String {
    values.iter().map(|v| format!("{v:>3}")).collect()
}

fn table(s: &mut String, theory: Theory, variance: Variance, t: &DimTable) {
    let sym = theory.symbol();
    let g = |space: &str| match variance {
        Variance::Homology => format!("{sym}_n({space})"),
        Variance::Cohomology => format!("{sym}^n({space})"),
    };
    for (label, v) in [(g("B"), &t.b), (g("A"), &t.a), (g("D"), &t.d), (g("K"), &t.kernel)] {
        let _ = writeln!(s, "    {label:<10}{}", row(v));
    }
}

fn sequence(s: &mut String, seq: &SequenceRecord) {
    let _ = writeln!(
        s,
        "  {}: {} (judged up to degree {})",
        seq.name,
        if seq.exact { "exact" } else { "NOT exact" },
        seq.judged_up_to
    );
    let line: Vec<String> = seq
        .nodes
        .iter()
        .map(|n| match n.defect {
            Some(d) if d > 0 => format!("{}[{}, defect {d}]", n.group, n.dim),
            _ => format!("{}[{}]", n.group, n.dim),
        })
        .collect();
    let _ = writeln!(s, "    {}", line.join(" → "));
    if !seq.conventions.is_empty() {
        let conv: Vec<String> = seq
            .conventions
            .iter()
            .map(|c| format!("{}:{:?}", c.degree, c.convention).to_lowercase())
            .collect();
        let _ = writeln!(s, "    connecting maps: {}", conv.join(" "));
    }
}

pub fn excision_text(r: &ExcisionReport) -> String {
    let mut s = String::new();
    let e = &r.extension;
    let _ = writeln!(
        s,
        "extension 0 → {} → {} → {} → 0 (dims {}, {}, {}), degrees 0..={} (built to {})",
        e.b, e.a, e.d, e.dim_b, e.dim_a, e.dim_d, r.max_degree, r.internal_top
    );

    let h = &r.hypothesis;
    let _ = writeln!(s, "\nhypothesis ({})", h.surrogate);
    let side = match h.unit.side {
        UnitSide::Left => "left",
        UnitSide::Right => "right",
        UnitSide::TwoSided => "two-sided",
        UnitSide::None => "none",
    };
    let _ = writeln!(s, "  unit in B: {side}");
    let _ = writeln!(s, "  HR_n(B):  {}", row(&h.bar_homology));
    let _ = writeln!(s, "  H-unital: {}; hypothesis {}", yes(h.h_unital), if h.met { "met" } else { "unmet" });

    let _ = writeln!(s, "\ndimensions (n = 0..={})", r.max_degree);
    for t in &r.tables {
        table(&mut s, t.theory, Variance::Homology, &t.homology);
        table(&mut s, t.theory, Variance::Cohomology, &t.cohomology);
    }

    let _ = writeln!(s, "\ncandidate excision sequences");
    for seq in r.sequences.iter().filter(|q| q.layer == Layer::Excision) {
        sequence(&mut s, seq);
    }
    let _ = writeln!(s, "\nsnake sequences of the kernel subcomplex");
    for seq in r.sequences.iter().filter(|q| q.layer == Layer::Snake) {
        let _ = writeln!(s, "  {}: {}", seq.name, if seq.exact { "exact" } else { "NOT exact" });
    }

    let _ = writeln!(s, "\ncomparison map X(B) → kernel subcomplex");
    for c in &r.comparison {
        let flags = |v: &[bool]| v.iter().map(|&b| if b { " iso" } else { "  no" }).collect::<String>();
        let _ = writeln!(
            s,
            "  {:<10} homology{}  cohomology{}  quasi-isomorphism: {}",
            c.theory.name(),
            flags(&c.homology),
            flags(&c.cohomology),
            yes(c.quasi_isomorphism)
        );
    }

    let b = &r.bar_invariance;
    let status = match b.status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Informational => "informational",
    };
    let _ = writeln!(s, "\nbar invariance HR(A) = HR(D): {status}");
    let _ = writeln!(s, "  HR_n(A): {}   HR_n(D): {}", row(&b.homology_a), row(&b.homology_d));

    let _ = writeln!(s, "\nhomology/cohomology equivalence");
    for q in &r.equivalence {
        let v = match q.verdict {
            EquivalenceVerdict::EquivalentAndExact => "equivalent and exact",
            EquivalenceVerdict::EquivalentAndInexact => "equivalent and inexact",
            EquivalenceVerdict::NotEquivalent => "NOT equivalent",
        };
        let _ = writeln!(
            s,
            "  {:<10} {v}; Betti duality {}; nodewise agreement {}",
            q.theory.name(),
            yes(q.betti_duality),
            yes(q.nodewise_agreement)
        );
    }

    let _ = writeln!(s, "\nscenarios");
    for sc in &r.scenarios {
        let status = match sc.status {
            ScenarioStatus::Pass => "pass".to_string(),
            ScenarioStatus::Fail => "FAIL".to_string(),
            ScenarioStatus::SurrogateNotMet => {
                format!("surrogate not met ({})", sc.reason.as_deref().unwrap_or(""))
            }
        };
        let _ = writeln!(s, "  {}: {status}", sc.pattern.label());
        let _ = writeln!(s, "    surrogate: {}", sc.surrogate);
        if !sc.trace_dims.is_empty() {
            let _ = writeln!(s, "    trace sequence dims: {:?}", sc.trace_dims);
        }
        for c in sc.checks.iter().filter(|c| !c.holds) {
            let _ = writeln!(s, "    failed: {}", c.description);
        }
    }

    let verdict = match r.verdict {
        Verdict::Exact => "exact",
        Verdict::OutOfHypothesis => "out of hypothesis",
        Verdict::AssertionFailure => "ASSERTION FAILURE",
    };
    let _ = writeln!(s, "\nverdict: {verdict}");
    for f in &r.failures {
        let _ = writeln!(s, "  {f}");
    }
    s
}
