use excision_core::linalg::{exactness_gap, kron, rank, solve, Matrix, SparseVec};
use excision_core::Rational;
use proptest::prelude::*;

/// Rank of a 2×3 integer matrix from its minors.
fn minor_rank(m: &[i64; 6]) -> usize {
    let at = |r: usize, c: usize| m[r * 3 + c];
    let two = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .any(|&(p, q)| at(0, p) * at(1, q) - at(0, q) * at(1, p) != 0);
    if two {
        2
    } else if m.iter().any(|&x| x != 0) {
        1
    } else {
        0
    }
}

fn small() -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(-2i64..=2)
}

proptest! {
    #[test]
    fn kron_entries_and_rank(a in small(), b in small()) {
        let (ma, mb) = (Matrix::from_i64(2, 3, &a), Matrix::from_i64(2, 3, &b));
        let k = kron(&ma, &mb);
        prop_assert_eq!(k.shape(), (4, 9));
        for i in 0..2 {
            for j in 0..3 {
                for p in 0..2 {
                    for q in 0..3 {
                        let want = Rational::from_integer(a[i * 3 + j] * b[p * 3 + q]);
                        prop_assert_eq!(k.get(i * 2 + p, j * 3 + q), want);
                    }
                }
            }
        }
        prop_assert_eq!(rank(&ma), minor_rank(&a));
        prop_assert_eq!(rank(&k), minor_rank(&a) * minor_rank(&b));
    }

    #[test]
    fn gap_is_transpose_invariant(f in prop::collection::vec(-2i64..=2, 6), g in prop::collection::vec(-2i64..=2, 6)) {
        let f = Matrix::from_i64(3, 2, &f);
        let g = Matrix::from_i64(2, 3, &g);
        prop_assert_eq!(exactness_gap(&f, &g), exactness_gap(&g.transpose(), &f.transpose()));
    }

    #[test]
    fn solve_reproduces_right_hand_side(m in prop::collection::vec(-3i64..=3, 12), x in prop::collection::vec(-3i64..=3, 4)) {
        let m = Matrix::from_i64(3, 4, &m);
        let b = m.apply(&SparseVec::from_i64(&x));
        let y = solve(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.apply(&y), b);
    }
}

#[test]
fn exact_pair_has_zero_gap() {
    // 0 → Q --(1,1)--> Q² --(1,-1)--> Q → 0
    let f = Matrix::from_i64(2, 1, &[1, 1]);
    let g = Matrix::from_i64(1, 2, &[1, -1]);
    assert_eq!(g.mul(&f).is_zero(), true);
    assert_eq!(exactness_gap(&f, &g), 0);
    assert_eq!(exactness_gap(&Matrix::zeros(2, 1), &g), 1);
}

#[test]
fn large_entries_stay_exact() {
    let big = i64::MAX / 3;
    let m = Matrix::from_i64(2, 2, &[big, big - 1, big - 1, big - 2]);
    // det = big(big-2) - (big-1)² = -1
    assert_eq!(rank(&m), 2);
    let y = solve(&m, &SparseVec::from_i64(&[1, 0])).unwrap();
    assert_eq!(m.apply(&y), SparseVec::from_i64(&[1, 0]));
}
