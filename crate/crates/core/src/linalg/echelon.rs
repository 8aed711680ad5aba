//! Incremental exact row echelon forms.
//!
//! Everything in this crate that needs a rank, a kernel, an image or a
//! solution of a linear system goes through [`ColumnReduction`]: the columns
//! of a matrix are fed, left to right, into an [`Echelon`] basis of the
//! target space. A column that survives reduction becomes a new echelon row
//! with its leading entry normalised to one; a column that reduces to zero
//! yields a kernel relation. The pivot of an echelon row is its leftmost
//! nonzero entry, which makes every derived basis a deterministic function
//! of the input.

use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Matrix, SparseVec};
use crate::rational::Rational;

const NO_PIVOT: usize = usize::MAX;

/// Dense accumulator reused across reductions on the same thread.
#[derive(Default)]
struct Scratch {
    acc: Vec<Rational>,
    seen: Vec<bool>,
    touched: Vec<usize>,
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::default());
}

/// A set of linearly independent row vectors in `Q^dim`, each with a
/// distinct pivot (leading index) and leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row].leading().expect("echelon rows are nonzero").0
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.rows.len()).map(|r| self.pivot(r)).collect()
    }

    pub fn row_with_pivot(&self, col: usize) -> Option<usize> {
        match self.pivot_row[col] {
            NO_PIVOT => None,
            r => Some(r),
        }
    }

    /// Reduces `v` against the rows, calling `on_step(row, coefficient)` for
    /// every subtraction of `coefficient * rows[row]`. Returns the residual,
    /// which has no entry at any pivot column.
    pub fn reduce_with(&self, v: &SparseVec, mut on_step: impl FnMut(usize, &Rational)) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        if let Some(m) = v.max_index() {
            assert!(m < self.dim, "vector index {m} outside ambient dimension {}", self.dim);
        }
        SCRATCH.with(|cell| {
            let mut guard = cell.borrow_mut();
            let s = &mut *guard;
            if s.acc.len() < self.dim {
                s.acc.resize(self.dim, Rational::zero());
                s.seen.resize(self.dim, false);
            }
            let mut heap = BinaryHeap::with_capacity(v.nnz());
            for (i, x) in v.iter() {
                s.acc[i] = x.clone();
                s.seen[i] = true;
                s.touched.push(i);
                heap.push(Reverse(i));
            }
            let mut residual = Vec::new();
            // Row entries beyond the pivot all lie to its right, so popped
            // indices are never touched again.
            while let Some(Reverse(c)) = heap.pop() {
                let x = std::mem::take(&mut s.acc[c]);
                if x.is_zero() {
                    continue;
                }
                match self.pivot_row[c] {
                    NO_PIVOT => residual.push((c, x)),
                    r => {
                        on_step(r, &x);
                        for (k, y) in self.rows[r].iter().skip(1) {
                            if !s.seen[k] {
                                s.seen[k] = true;
                                s.touched.push(k);
                                heap.push(Reverse(k));
                            }
                            let t = &x * y;
                            s.acc[k] -= &t;
                        }
                    }
                }
            }
            for t in s.touched.drain(..) {
                s.seen[t] = false;
                s.acc[t] = Rational::zero();
            }
            SparseVec::from_sorted_unchecked(residual)
        })
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v, |_, _| {})
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds an already-reduced nonzero residual as a new row; returns its index.
    fn push_residual(&mut self, residual: SparseVec) -> (usize, Rational) {
        let (p, lead) = residual.leading().expect("nonzero residual");
        let lead = lead.clone();
        let row = residual.scale(&lead.recip());
        let idx = self.rows.len();
        self.pivot_row[p] = idx;
        self.rows.push(row);
        (idx, lead)
    }

    /// Reduces and, if independent, inserts `v`. Returns the new row index.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        if r.is_zero() {
            None
        } else {
            Some(self.push_residual(r).0)
        }
    }

    /// Rows rewritten so that every row vanishes at every other row's pivot
    /// (reduced row echelon form), in the original row order.
    pub fn fully_reduced(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| Reverse(self.pivot(r)));
        let mut done: Vec<Option<SparseVec>> = vec![None; self.rows.len()];
        for r in order {
            let row = &self.rows[r];
            let mut out = row.clone();
            for (c, x) in row.iter().skip(1) {
                if let Some(q) = self.row_with_pivot(c) {
                    let other = done[q].as_ref().expect("higher pivots are reduced first");
                    out = out.add_scaled(&-x.clone(), other);
                }
            }
            done[r] = Some(out);
        }
        done.into_iter().map(|r| r.expect("all rows reduced")).collect()
    }
}

/// How much bookkeeping a [`ColumnReduction`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tracking {
    /// Rank and pivot columns only.
    RankOnly,
    /// Also express echelon rows through the original columns, enabling
    /// `solve` and kernel relations.
    Full,
}

/// Column-by-column reduction of a matrix.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    cols: usize,
    echelon: Echelon,
    pivot_cols: Vec<usize>,
    transforms: Option<Vec<SparseVec>>,
    relations: Option<Vec<(usize, SparseVec)>>,
}

impl ColumnReduction {
    pub fn new(m: &Matrix, tracking: Tracking) -> Self {
        let mut echelon = Echelon::new(m.rows());
        let mut pivot_cols = Vec::new();
        let track = tracking == Tracking::Full;
        let mut transforms: Vec<SparseVec> = Vec::new();
        let mut relations = Vec::new();
        for (k, col) in m.columns().iter().enumerate() {
            if !track {
                if echelon.insert(col).is_some() {
                    pivot_cols.push(k);
                }
                continue;
            }
            let mut steps: Vec<(usize, Rational)> = Vec::new();
            let residual = echelon.reduce_with(col, |r, c| steps.push((r, c.clone())));
            // col = residual + Σ c_r row_r, and row_r = Σ T_r[s] col_s.
            let mut expr: Vec<(usize, Rational)> = vec![(k, Rational::one())];
            for (r, c) in &steps {
                expr.extend(transforms[*r].iter().map(|(s, t)| (s, -(c * t))));
            }
            let expr = SparseVec::from_entries(expr);
            if residual.is_zero() {
                relations.push((k, expr));
            } else {
                let (_, lead) = echelon.push_residual(residual);
                transforms.push(expr.scale(&lead.recip()));
                pivot_cols.push(k);
            }
        }
        ColumnReduction {
            cols: m.cols(),
            echelon,
            pivot_cols,
            transforms: track.then_some(transforms),
            relations: track.then_some(relations),
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn rows(&self) -> usize {
        self.echelon.dim()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Indices of the columns that are independent of the columns to their left.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Kernel basis: one vector per non-pivot column `f`, with entry one at
    /// `f`, zero at every other non-pivot column.
    pub fn kernel_vectors(&self) -> &[(usize, SparseVec)] {
        self.relations
            .as_deref()
            .expect("kernel requires Tracking::Full")
    }

    /// Some `x` with `M x = b`, supported on pivot columns, or `None` when
    /// `b` is outside the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let transforms = self
            .transforms
            .as_ref()
            .expect("solve requires Tracking::Full");
        let mut steps: Vec<(usize, Rational)> = Vec::new();
        let residual = self.echelon.reduce_with(b, |r, c| steps.push((r, c.clone())));
        if !residual.is_zero() {
            return None;
        }
        Some(SparseVec::combination(
            steps.iter().map(|(r, c)| (c, &transforms[*r])),
        ))
    }

    pub fn in_image(&self, b: &SparseVec) -> bool {
        self.echelon.contains(b)
    }
}
