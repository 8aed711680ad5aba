//! Fixtures shared by the benchmarks.

use excision_core::algebra::{Algebra, Extension, Preset};

pub fn algebra(p: Preset) -> Algebra {
    p.build().expect("presets are valid")
}

/// `0 → M_2 → M_2 × Q → Q → 0`, the largest unital corpus entry.
pub fn matrix_split() -> Extension {
    Extension::split(&algebra(Preset::Matrix { k: 2 }), &algebra(Preset::Field))
}

/// `0 → e12 Q → UT_2 → Q × Q → 0`.
pub fn triangular_corner() -> Extension {
    excision_core::excision::corpus::non_unital_corpus()
        .into_iter()
        .find(|e| e.name == "triangular-corner")
        .expect("corpus entry")
        .extension
}
