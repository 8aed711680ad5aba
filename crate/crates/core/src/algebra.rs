//! Finite-dimensional associative algebras given by structure constants,
//! algebra homomorphisms, and extensions `0 → B → A → D → 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, ColumnReduction, Matrix, SparseVec, Subspace, Tracking};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{name}`: parameter `{param}` must be positive, got {value}")]
    NonPositiveParameter {
        name: String,
        param: String,
        value: i64,
    },
    #[error("preset `{name}` is missing parameter `{param}`")]
    MissingParameter { name: String, param: String },
    #[error("structure constant index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("basis has {names} names but dimension is {dim}")]
    BasisLength { names: usize, dim: usize },
    #[error("ideal generators do not span a two-sided ideal")]
    NotAnIdeal,
}

/// An associative algebra with basis `e_0 … e_{d-1}` and products
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    basis: Vec<String>,
    // table[i * dim + j] = e_i e_j
    table: Vec<SparseVec>,
}

impl Algebra {
    /// Builds an algebra from nonzero structure constants `(i, j, k, c)`.
    /// Repeated triples are summed.
    pub fn from_constants(
        name: impl Into<String>,
        basis: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        let mut raw: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            raw[i * dim + j].push((k, c));
        }
        Ok(Algebra {
            name: name.into(),
            basis,
            table: raw.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    fn from_fn(name: impl Into<String>, basis: Vec<String>, f: impl Fn(usize, usize) -> SparseVec) -> Self {
        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(f(i, j));
            }
        }
        Algebra {
            name: name.into(),
            basis,
            table,
        }
    }

    /// The zero-dimensional algebra.
    pub fn trivial() -> Self {
        Algebra {
            name: "0".into(),
            basis: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product(i, j).get(k)
    }

    /// Nonzero structure constants in `(i, j)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let d = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / d, ij % d, k, c)))
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut all = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                all.extend(self.product(i, j).iter().map(|(k, c)| (k, &ab * c)));
            }
        }
        SparseVec::from_entries(all)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// The commutator map `A ⊗ A → A`, `a ⊗ b ↦ ab − ba`.
    pub fn commutator_map(&self) -> Matrix {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                cols.push(self.product(i, j).sub(self.product(j, i)));
            }
        }
        Matrix::from_columns(d, cols)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim())
    }
}

/// One failure of `(e_i e_j) e_k = e_i (e_j e_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
}

/// Checks associativity on every basis triple, returning all violations.
pub fn validate_algebra(alg: &Algebra) -> Result<(), Vec<AssociativityViolation>> {
    let d = alg.dim();
    let mut bad = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = alg.product(i, j);
            for k in 0..d {
                let left = alg.multiply(ij, &SparseVec::unit(k));
                let right = alg.multiply(&SparseVec::unit(i), alg.product(j, k));
                if left != right {
                    bad.push(AssociativityViolation {
                        i,
                        j,
                        k,
                        left: left.to_dense(d),
                        right: right.to_dense(d),
                    });
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Named families of algebras with canonical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    /// Full `k×k` matrices, basis `e_pq` in row-major order.
    Matrix { k: usize },
    /// `Q[x]/(x^m)`, basis `1, x, …, x^{m-1}`.
    TruncatedPoly { m: usize },
    /// `d`-dimensional space with all products zero.
    ZeroMult { d: usize },
    /// Upper-triangular `k×k` matrices, basis `e_pq` (`p ≤ q`) row-major.
    UpperTriangular { k: usize },
    /// `a × b` with componentwise product; basis of `a` first.
    DirectSum(Box<Preset>, Box<Preset>),
    /// The one-dimensional unital algebra `Q`.
    Field,
}

fn matrix_unit_name(p: usize, q: usize, k: usize) -> String {
    if k < 10 {
        format!("e{}{}", p + 1, q + 1)
    } else {
        format!("e{},{}", p + 1, q + 1)
    }
}

fn positive(name: &str, param: &str, value: usize) -> Result<usize, AlgebraError> {
    if value == 0 {
        Err(AlgebraError::NonPositiveParameter {
            name: name.into(),
            param: param.into(),
            value: 0,
        })
    } else {
        Ok(value)
    }
}

impl Preset {
    pub fn label(&self) -> String {
        match self {
            Preset::Matrix { k } => format!("matrix({k})"),
            Preset::TruncatedPoly { m } => format!("truncated_poly({m})"),
            Preset::ZeroMult { d } => format!("zero_mult({d})"),
            Preset::UpperTriangular { k } => format!("upper_triangular({k})"),
            Preset::DirectSum(a, b) => format!("direct_sum({}, {})", a.label(), b.label()),
            Preset::Field => "field()".into(),
        }
    }

    pub fn build(&self) -> Result<Algebra, AlgebraError> {
        let alg = match self {
            Preset::Matrix { k } => {
                let k = positive("matrix", "k", *k)?;
                let names = (0..k * k).map(|i| matrix_unit_name(i / k, i % k, k)).collect();
                Algebra::from_fn(self.label(), names, |a, b| {
                    let (p, q) = (a / k, a % k);
                    let (r, s) = (b / k, b % k);
                    if q == r {
                        SparseVec::unit(p * k + s)
                    } else {
                        SparseVec::new()
                    }
                })
            }
            Preset::TruncatedPoly { m } => {
                let m = positive("truncated_poly", "m", *m)?;
                let names = (0..m)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    })
                    .collect();
                Algebra::from_fn(self.label(), names, |a, b| {
                    if a + b < m {
                        SparseVec::unit(a + b)
                    } else {
                        SparseVec::new()
                    }
                })
            }
            Preset::ZeroMult { d } => {
                let d = positive("zero_mult", "d", *d)?;
                let names = (1..=d).map(|i| format!("z{i}")).collect();
                Algebra::from_fn(self.label(), names, |_, _| SparseVec::new())
            }
            Preset::UpperTriangular { k } => {
                let k = positive("upper_triangular", "k", *k)?;
                let units: Vec<(usize, usize)> =
                    (0..k).flat_map(|p| (p..k).map(move |q| (p, q))).collect();
                let names = units.iter().map(|&(p, q)| matrix_unit_name(p, q, k)).collect();
                let index = |p: usize, q: usize| units.iter().position(|&u| u == (p, q));
                Algebra::from_fn(self.label(), names, |a, b| {
                    let (p, q) = units[a];
                    let (r, s) = units[b];
                    match (q == r).then(|| index(p, s)).flatten() {
                        Some(t) => SparseVec::unit(t),
                        None => SparseVec::new(),
                    }
                })
            }
            Preset::DirectSum(a, b) => direct_sum(&a.build()?, &b.build()?).with_name(self.label()),
            Preset::Field => Algebra::from_fn(self.label(), vec!["1".into()], |_, _| SparseVec::unit(0)),
        };
        Ok(alg)
    }
}

/// `a × b` with componentwise multiplication.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let da = a.dim();
    let names = a
        .basis_names()
        .iter()
        .map(|n| format!("({n},0)"))
        .chain(b.basis_names().iter().map(|n| format!("(0,{n})")))
        .collect();
    Algebra::from_fn(format!("{} x {}", a.name(), b.name()), names, |x, y| {
        if x < da && y < da {
            a.product(x, y).clone()
        } else if x >= da && y >= da {
            b.product(x - da, y - da).reindex(|k| Some(k + da))
        } else {
            SparseVec::new()
        }
    })
}

/// A linear map between algebras, recorded together with its endpoints.
#[derive(Debug, Clone)]
pub struct AlgebraHom {
    pub source: Algebra,
    pub target: Algebra,
    /// `target.dim() × source.dim()`.
    pub matrix: Matrix,
}

impl AlgebraHom {
    /// First basis pair `(x, y)` with `f(e_x e_y) ≠ f(e_x) f(e_y)`, if any.
    pub fn multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let d = self.source.dim();
        for x in 0..d {
            for y in 0..d {
                let lhs = self.matrix.apply(self.source.product(x, y));
                let rhs = self
                    .target
                    .multiply(self.matrix.column(x), self.matrix.column(y));
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// `0 → B --i--> A --j--> D → 0`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub b: Algebra,
    pub a: Algebra,
    pub d: Algebra,
    /// `dim A × dim B`.
    pub i: Matrix,
    /// `dim D × dim A`.
    pub j: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ExtensionViolation {
    #[error("dimension mismatch: dim A = {a} but dim B + dim D = {b} + {d}")]
    DimensionMismatch { a: usize, b: usize, d: usize },
    #[error("map `{map}` has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        map: String,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("map `{map}` is not multiplicative on basis pair ({x}, {y})")]
    NotMultiplicative { map: String, x: usize, y: usize },
    #[error("i is not injective")]
    NotInjective,
    #[error("j is not surjective")]
    NotSurjective,
    #[error("image of i differs from kernel of j")]
    ImageNotKernel,
    #[error("image of i is not a two-sided ideal (fails for A-basis element {a} and B-basis element {b})")]
    NotIdeal { a: usize, b: usize },
}

impl Extension {
    pub fn i_hom(&self) -> AlgebraHom {
        AlgebraHom {
            source: self.b.clone(),
            target: self.a.clone(),
            matrix: self.i.clone(),
        }
    }

    pub fn j_hom(&self) -> AlgebraHom {
        AlgebraHom {
            source: self.a.clone(),
            target: self.d.clone(),
            matrix: self.j.clone(),
        }
    }

    /// `B = A`, `D = 0`.
    pub fn identity(a: &Algebra) -> Self {
        Extension {
            b: a.clone(),
            a: a.clone(),
            d: Algebra::trivial(),
            i: Matrix::identity(a.dim()),
            j: Matrix::zeros(0, a.dim()),
        }
    }

    /// `B → B × D → D` with the coordinate inclusion and projection.
    pub fn split(b: &Algebra, d: &Algebra) -> Self {
        let a = direct_sum(b, d);
        let (nb, nd) = (b.dim(), d.dim());
        let i = Matrix::from_columns(nb + nd, (0..nb).map(SparseVec::unit).collect());
        let j = Matrix::from_columns(
            nd,
            (0..nb + nd)
                .map(|x| if x < nb { SparseVec::new() } else { SparseVec::unit(x - nb) })
                .collect(),
        );
        Extension {
            b: b.clone(),
            a,
            d: d.clone(),
            i,
            j,
        }
    }
}

/// Checks every extension invariant, reporting the first failure.
pub fn validate_extension(ext: &Extension) -> Result<(), ExtensionViolation> {
    let (nb, na, nd) = (ext.b.dim(), ext.a.dim(), ext.d.dim());
    if na != nb + nd {
        return Err(ExtensionViolation::DimensionMismatch { a: na, b: nb, d: nd });
    }
    for (name, m, r, c) in [("i", &ext.i, na, nb), ("j", &ext.j, nd, na)] {
        if m.shape() != (r, c) {
            return Err(ExtensionViolation::Shape {
                map: name.into(),
                rows: m.rows(),
                cols: m.cols(),
                expected_rows: r,
                expected_cols: c,
            });
        }
    }
    for (name, hom) in [("i", ext.i_hom()), ("j", ext.j_hom())] {
        if let Some((x, y)) = hom.multiplicativity_failure() {
            return Err(ExtensionViolation::NotMultiplicative { map: name.into(), x, y });
        }
    }
    if !linalg::is_injective(&ext.i) {
        return Err(ExtensionViolation::NotInjective);
    }
    if !linalg::is_surjective(&ext.j) {
        return Err(ExtensionViolation::NotSurjective);
    }
    if !ext.j.mul(&ext.i).is_zero() {
        return Err(ExtensionViolation::ImageNotKernel);
    }
    // With j∘i = 0, injective i and surjective j, the dimension count forces
    // Im i = Ker j; check the containment explicitly anyway.
    let image = Subspace::from_basis(ext.i.clone());
    if !image.same_span(&linalg::kernel_basis(&ext.j)) {
        return Err(ExtensionViolation::ImageNotKernel);
    }
    for x in 0..na {
        let ex = SparseVec::unit(x);
        for y in 0..nb {
            let iy = ext.i.column(y);
            if !image.contains(&ext.a.multiply(&ex, iy)) || !image.contains(&ext.a.multiply(iy, &ex)) {
                return Err(ExtensionViolation::NotIdeal { a: x, b: y });
            }
        }
    }
    Ok(())
}

/// `A → A/I` for an ideal `I` spanned by the columns of `generators`.
///
/// `B` gets the leftmost independent generators as basis; `D` gets the
/// standard basis vectors of `A` not hit by a pivot of `I` (their names are
/// bracketed).
pub fn quotient_extension(a: &Algebra, generators: &Matrix) -> Result<Extension, AlgebraError> {
    assert_eq!(generators.rows(), a.dim(), "ideal generators live in A");
    let ideal = linalg::image_basis(generators);
    for x in 0..a.dim() {
        let ex = SparseVec::unit(x);
        for v in ideal.basis().columns() {
            if !ideal.contains(&a.multiply(&ex, v)) || !ideal.contains(&a.multiply(v, &ex)) {
                return Err(AlgebraError::NotAnIdeal);
            }
        }
    }
    let nb = ideal.dim();
    let mut b_consts = Vec::new();
    for p in 0..nb {
        for q in 0..nb {
            let prod = a.multiply(ideal.basis().column(p), ideal.basis().column(q));
            let c = ideal.coordinates(&prod).ok_or(AlgebraError::NotAnIdeal)?;
            b_consts.extend(c.iter().map(|(k, x)| (p, q, k, x.clone())));
        }
    }
    let b_names = (1..=nb).map(|n| format!("b{n}")).collect();
    let b = Algebra::from_constants(format!("ideal of {}", a.name()), b_names, b_consts)?;

    let quot = linalg::cokernel(ideal.basis());
    let nd = quot.dim();
    let mut d_consts = Vec::new();
    for p in 0..nd {
        for q in 0..nd {
            let prod = a.multiply(quot.section.column(p), quot.section.column(q));
            let c = quot.projection.apply(&prod);
            d_consts.extend(c.iter().map(|(k, x)| (p, q, k, x.clone())));
        }
    }
    let d_names = quot
        .complement
        .iter()
        .map(|&x| format!("[{}]", a.basis_names()[x]))
        .collect();
    let d = Algebra::from_constants(format!("{} / ideal", a.name()), d_names, d_consts)?;
    Ok(Extension {
        b,
        a: a.clone(),
        d,
        i: ideal.into_basis(),
        j: quot.projection,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSide {
    Left,
    Right,
    TwoSided,
    None,
}

/// An exact one-sided unit, standing in for a bounded approximate identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitWitness {
    pub side: UnitSide,
    pub element: Option<Vec<Rational>>,
}

impl UnitWitness {
    pub fn none() -> Self {
        UnitWitness {
            side: UnitSide::None,
            element: None,
        }
    }

    pub fn exists(&self) -> bool {
        self.side != UnitSide::None
    }

    pub fn is_left(&self) -> bool {
        matches!(self.side, UnitSide::Left | UnitSide::TwoSided)
    }

    pub fn is_right(&self) -> bool {
        matches!(self.side, UnitSide::Right | UnitSide::TwoSided)
    }
}

/// The linear system `e·b = b` for all basis `b` (left), or `b·e = b` (right),
/// as a `d²×d` matrix with right-hand side; row `(b, k)` is `b * d + k`.
fn unit_system(alg: &Algebra, side: Side) -> (Matrix, SparseVec) {
    let d = alg.dim();
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = Vec::new();
        for b in 0..d {
            let prod = match side {
                Side::Left => alg.product(i, b),
                Side::Right => alg.product(b, i),
            };
            e.extend(prod.iter().map(|(k, c)| (b * d + k, c.clone())));
        }
        cols.push(SparseVec::from_entries(e));
    }
    let rhs = SparseVec::from_entries((0..d).map(|b| (b * d + b, Rational::one())).collect());
    (Matrix::from_columns(d * d, cols), rhs)
}

fn satisfies_unit(alg: &Algebra, e: &SparseVec, side: Side) -> bool {
    (0..alg.dim()).all(|b| {
        let eb = SparseVec::unit(b);
        let prod = match side {
            Side::Left => alg.multiply(e, &eb),
            Side::Right => alg.multiply(&eb, e),
        };
        prod == eb
    })
}

/// Solves for a unit on the requested side. A witness that is a unit on
/// both sides is reported as two-sided.
pub fn find_one_sided_unit(alg: &Algebra, side: Side) -> UnitWitness {
    let (m, rhs) = unit_system(alg, side);
    let Ok(e) = linalg::solve(&m, &rhs) else {
        return UnitWitness::none();
    };
    let other = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let side = if satisfies_unit(alg, &e, other) {
        UnitSide::TwoSided
    } else {
        match side {
            Side::Left => UnitSide::Left,
            Side::Right => UnitSide::Right,
        }
    };
    UnitWitness {
        side,
        element: Some(e.to_dense(alg.dim())),
    }
}

/// Left unit if there is one, else right unit, else none.
pub fn find_unit(alg: &Algebra) -> UnitWitness {
    let left = find_one_sided_unit(alg, Side::Left);
    if left.exists() {
        return left;
    }
    find_one_sided_unit(alg, Side::Right)
}

/// A linear right inverse `α : D → A` of `j`.
pub fn find_splitting(ext: &Extension) -> Matrix {
    let red = ColumnReduction::new(&ext.j, Tracking::Full);
    let cols = (0..ext.d.dim())
        .map(|k| {
            red.solve(&SparseVec::unit(k))
                .expect("j is surjective on a valid extension")
        })
        .collect();
    Matrix::from_columns(ext.a.dim(), cols)
}
