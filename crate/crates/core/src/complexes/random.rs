//! Seeded random short exact sequences of complexes, for property tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChainComplex, ChainMap, ShortExactSequence};
use crate::linalg::{kernel_basis, Matrix, SparseVec};
use crate::rational::Rational;

/// Size limits for [`random_ses`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SesBudget {
    /// Largest dimension of a space of `K` or of `L` (so `P` is at most twice this).
    pub max_dim: usize,
    /// Number of degrees, `0..degrees`.
    pub degrees: usize,
}

impl SesBudget {
    pub const TRIVIAL: SesBudget = SesBudget {
        max_dim: 0,
        degrees: 1,
    };

    /// Up to 6-dimensional spaces in `P`, five degrees.
    pub const DEFAULT: SesBudget = SesBudget {
        max_dim: 3,
        degrees: 5,
    };
}

/// A complex in normal form `C_n = X_n ⊕ Y_n ⊕ H_n`, where `d_n` maps
/// `Y_{n+1}` identically onto `X_n` and kills everything else.
struct NormalForm {
    dims: Vec<usize>,
    ranks: Vec<usize>,
}

impl NormalForm {
    fn random(rng: &mut ChaCha8Rng, budget: SesBudget) -> Self {
        let dims: Vec<usize> = (0..budget.degrees)
            .map(|_| rng.random_range(0..=budget.max_dim))
            .collect();
        let mut ranks = Vec::with_capacity(budget.degrees.saturating_sub(1));
        let mut prev = 0;
        for n in 0..budget.degrees.saturating_sub(1) {
            let cap = (dims[n] - prev).min(dims[n + 1]);
            let r = rng.random_range(0..=cap);
            ranks.push(r);
            prev = r;
        }
        NormalForm { dims, ranks }
    }

    fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// Offset of `Y_n` inside `C_n`.
    fn y_start(&self, n: usize) -> usize {
        self.rank(n)
    }

    /// Offset of `H_n` inside `C_n`.
    fn h_start(&self, n: usize) -> usize {
        self.rank(n) + if n == 0 { 0 } else { self.rank(n - 1) }
    }

    fn differential(&self, n: usize) -> Matrix {
        let cols = (0..self.dims[n + 1])
            .map(|c| {
                let y = self.y_start(n + 1);
                if c >= y && c < y + self.rank(n) {
                    SparseVec::unit(c - y)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        Matrix::from_columns(self.dims[n], cols)
    }

    fn complex(&self) -> ChainComplex {
        let diffs = (0..self.dims.len() - 1).map(|n| self.differential(n)).collect();
        ChainComplex::new(self.dims.clone(), diffs).expect("normal form shapes")
    }
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_integer(rng.random_range(-2i64..=2))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<Rational>> = (0..rows)
        .map(|_| (0..cols).map(|_| small(rng)).collect())
        .collect();
    Matrix::from_rows(rows, cols, &data)
}

/// Random integer matrix of determinant ±1 together with its inverse,
/// built from elementary operations.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(n);
    let mut inv = Matrix::identity(n);
    if n < 2 {
        if n == 1 && rng.random_bool(0.5) {
            let m = Matrix::from_i64(1, 1, &[-1]);
            return (m.clone(), m);
        }
        return (g, inv);
    }
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Rational::from_integer(if rng.random_bool(0.5) { 1 } else { -1 });
        let mut e = vec![vec![Rational::zero(); n]; n];
        let mut f = e.clone();
        for (k, row) in e.iter_mut().enumerate() {
            row[k] = Rational::one();
            f[k][k] = Rational::one();
        }
        e[i][j] = c.clone();
        f[i][j] = -c;
        let (e, f) = (Matrix::from_rows(n, n, &e), Matrix::from_rows(n, n, &f));
        g = e.mul(&g);
        inv = inv.mul(&f);
    }
    (g, inv)
}

/// Conjugates a complex degreewise; returns the new complex and the
/// change-of-basis matrices with their inverses.
fn scramble(rng: &mut ChaCha8Rng, c: &ChainComplex) -> (ChainComplex, Vec<(Matrix, Matrix)>) {
    let gs: Vec<(Matrix, Matrix)> = c.dims().iter().map(|&d| unimodular(rng, d)).collect();
    let diffs = (0..c.top())
        .map(|n| gs[n].0.mul(c.differential(n)).mul(&gs[n + 1].1))
        .collect();
    (
        ChainComplex::new(c.dims().to_vec(), diffs).expect("conjugation keeps shapes"),
        gs,
    )
}

/// A valid short exact sequence `0 → K → P → L → 0`, deterministic in `seed`.
///
/// `K` and `L` are random normal-form complexes in disguise; `P` is
/// `K ⊕ L` with differential `[[d_K, τ], [0, d_L]]`, where `τ` combines a
/// map from the homology of `L` to cycles of `K` (which makes the connecting
/// map nonzero) with a random null-homotopic term.
pub fn random_ses(seed: u64, budget: SesBudget) -> ShortExactSequence {
    assert!(budget.degrees >= 1, "at least one degree");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kf = NormalForm::random(&mut rng, budget);
    let lf = NormalForm::random(&mut rng, budget);
    let (k0, l0) = (kf.complex(), lf.complex());
    let top = budget.degrees - 1;

    // φ_n : L_{n+1} → K_n, nonzero only on H_{n+1}(L), landing in cycles of K_n.
    let phi: Vec<Matrix> = (0..top)
        .map(|n| {
            let cycles = if n == 0 {
                Matrix::identity(kf.dims[0])
            } else {
                kernel_basis(k0.differential(n - 1)).into_basis()
            };
            let h = lf.h_start(n + 1);
            let cols = (0..lf.dims[n + 1])
                .map(|c| {
                    if c >= h && cycles.cols() > 0 {
                        let coeffs = random_matrix(&mut rng, cycles.cols(), 1);
                        cycles.apply(coeffs.column(0))
                    } else {
                        SparseVec::new()
                    }
                })
                .collect();
            Matrix::from_columns(kf.dims[n], cols)
        })
        .collect();
    let h: Vec<Matrix> = (0..=top)
        .map(|n| random_matrix(&mut rng, kf.dims[n], lf.dims[n]))
        .collect();
    let p_dims: Vec<usize> = (0..=top).map(|n| kf.dims[n] + lf.dims[n]).collect();
    let p_diffs: Vec<Matrix> = (0..top)
        .map(|n| {
            let tau = phi[n]
                .add(&k0.differential(n).mul(&h[n + 1]))
                .sub(&h[n].mul(l0.differential(n)));
            Matrix::block(
                k0.differential(n),
                &tau,
                &Matrix::zeros(lf.dims[n], kf.dims[n + 1]),
                l0.differential(n),
            )
        })
        .collect();
    let p0 = ChainComplex::new(p_dims, p_diffs).expect("block shapes");

    let (k, gk) = scramble(&mut rng, &k0);
    let (l, gl) = scramble(&mut rng, &l0);
    let (p, gp) = scramble(&mut rng, &p0);
    let inj: Vec<Matrix> = (0..=top)
        .map(|n| {
            let std = Matrix::from_columns(
                kf.dims[n] + lf.dims[n],
                (0..kf.dims[n]).map(SparseVec::unit).collect(),
            );
            gp[n].0.mul(&std).mul(&gk[n].1)
        })
        .collect();
    let surj: Vec<Matrix> = (0..=top)
        .map(|n| {
            let std = Matrix::zeros(lf.dims[n], kf.dims[n]).hstack(&Matrix::identity(lf.dims[n]));
            gl[n].0.mul(&std).mul(&gp[n].1)
        })
        .collect();
    let (k, p, l) = (Arc::new(k), Arc::new(p), Arc::new(l));
    let inj = ChainMap::new(k, p.clone(), inj).expect("random inclusion is a chain map");
    let surj = ChainMap::new(p, l, surj).expect("random projection is a chain map");
    ShortExactSequence::new(inj, surj).expect("random sequence is exact")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{check_complex, long_exact_sequence};

    #[test]
    fn trivial_budget_gives_zero_complexes() {
        let ses = random_ses(0, SesBudget::TRIVIAL);
        assert_eq!(ses.k.dims(), &[0]);
        assert_eq!(ses.l.dims(), &[0]);
    }

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..20 {
            let a = random_ses(seed, SesBudget::DEFAULT);
            let b = random_ses(seed, SesBudget::DEFAULT);
            assert_eq!(a.p.differentials(), b.p.differentials());
            check_complex(&a.p).unwrap();
            let les = long_exact_sequence(&a, a.top()).unwrap();
            assert!(les.is_exact(), "seed {seed}");
        }
    }
}
