use excision_core::algebra::Preset;
use excision_core::complexes::random::{random_ses, SesBudget};
use excision_core::complexes::{dualize, homology, homology_range};
use excision_core::hochschild::{bar_complex, cyclic_complex, hochschild_complex, trace_space};
use proptest::prelude::*;

fn hh(p: Preset, n: usize) -> Vec<usize> {
    homology(&hochschild_complex(&p.build().unwrap(), n), n).dims()
}

fn hc(p: Preset, n: usize) -> Vec<usize> {
    homology(&cyclic_complex(&p.build().unwrap(), n).unwrap().complex, n).dims()
}

#[test]
fn hochschild_of_truncated_polynomials() {
    // Q[x]/(x^m): HH_0 = m, HH_n = m - 1 for n ≥ 1.
    assert_eq!(hh(Preset::TruncatedPoly { m: 2 }, 3), [2, 1, 1, 1]);
    assert_eq!(hh(Preset::TruncatedPoly { m: 3 }, 3), [3, 2, 2, 2]);
}

#[test]
fn morita_invariance_for_matrices() {
    assert_eq!(hh(Preset::Matrix { k: 2 }, 3), hh(Preset::Field, 3));
    assert_eq!(hc(Preset::Matrix { k: 2 }, 3), [1, 0, 1, 0]);
}

#[test]
fn triangular_matrices_look_like_two_points() {
    // Path algebra of a quiver with two vertices and one arrow: HH is spanned by the vertices.
    assert_eq!(hh(Preset::UpperTriangular { k: 2 }, 3), [2, 0, 0, 0]);
    assert_eq!(hc(Preset::UpperTriangular { k: 2 }, 3), [2, 0, 2, 0]);
}

#[test]
fn bar_homology_of_zero_multiplication() {
    // The bar differential vanishes, so HR_n = d^{n+1}.
    let alg = Preset::ZeroMult { d: 2 }.build().unwrap();
    assert_eq!(homology(&bar_complex(&alg, 2), 2).dims(), [2, 4, 8]);
}

#[test]
fn trace_space_dimensions() {
    for (p, d) in [
        (Preset::Field, 1),
        (Preset::Matrix { k: 2 }, 1),
        (Preset::UpperTriangular { k: 2 }, 2),
        (Preset::TruncatedPoly { m: 3 }, 3),
        (Preset::ZeroMult { d: 2 }, 2),
    ] {
        assert_eq!(trace_space(&p.build().unwrap()).dim(), d, "{}", p.label());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn betti_numbers_match_under_duality(seed in any::<u64>()) {
        let ses = random_ses(seed, SesBudget::DEFAULT);
        for k in [&*ses.k, &*ses.l, &*ses.p] {
            let top = k.top();
            let dual = homology_range(&dualize(k), 0..=top);
            let hom = homology_range(k, 0..=top);
            for n in 0..=top {
                prop_assert_eq!(hom.get(n).unwrap().dim(), dual.get(top - n).unwrap().dim());
            }
        }
    }
}
