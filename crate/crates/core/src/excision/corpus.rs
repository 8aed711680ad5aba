//! Small extensions used by tests, benchmarks and the acceptance suite.

use crate::algebra::{quotient_extension, Algebra, Extension, Preset};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub extension: Extension,
}

fn preset(p: Preset) -> Algebra {
    p.build().expect("corpus presets are valid")
}

fn field() -> Algebra {
    preset(Preset::Field)
}

fn matrix2() -> Algebra {
    preset(Preset::Matrix { k: 2 })
}

fn ut2() -> Algebra {
    preset(Preset::UpperTriangular { k: 2 })
}

fn truncated(m: usize) -> Algebra {
    preset(Preset::TruncatedPoly { m })
}

/// `A/I` where `I` is spanned by the given standard basis vectors of `A`.
fn by_units(a: &Algebra, units: &[usize]) -> Extension {
    let gens = Matrix::from_columns(
        a.dim(),
        units.iter().map(|&u| crate::linalg::SparseVec::unit(u)).collect(),
    );
    quotient_extension(a, &gens).expect("corpus ideals are ideals")
}

/// Extensions whose ideal `B` has a one-sided unit.
pub fn unital_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "field-split",
            extension: Extension::split(&field(), &field()),
        },
        CorpusEntry {
            name: "matrix-ideal-split",
            extension: Extension::split(&matrix2(), &field()),
        },
        CorpusEntry {
            name: "matrix-quotient-split",
            extension: Extension::split(&field(), &matrix2()),
        },
        CorpusEntry {
            name: "triangular-first-row",
            extension: by_units(&ut2(), &[0, 1]),
        },
        CorpusEntry {
            name: "triangular-last-column",
            extension: by_units(&ut2(), &[1, 2]),
        },
        CorpusEntry {
            name: "dual-numbers-split",
            extension: Extension::split(&truncated(2), &field()),
        },
        CorpusEntry {
            name: "matrix-identity",
            extension: Extension::identity(&matrix2()),
        },
        CorpusEntry {
            name: "field-over-triangular",
            extension: Extension::split(&field(), &ut2()),
        },
    ]
}

/// Extensions whose ideal has no one-sided unit.
pub fn non_unital_corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "triangular-corner",
            extension: by_units(&ut2(), &[1]),
        },
        CorpusEntry {
            name: "truncated-cube-square",
            extension: by_units(&truncated(3), &[2]),
        },
        CorpusEntry {
            name: "dual-numbers-radical",
            extension: by_units(&truncated(2), &[1]),
        },
    ]
}

pub fn full_corpus() -> Vec<CorpusEntry> {
    let mut all = unital_corpus();
    all.extend(non_unital_corpus());
    all
}
