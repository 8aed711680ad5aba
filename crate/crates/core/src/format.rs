//! JSON files for algebras and extensions.
//!
//! An algebra is either inline,
//!
//! ```json
//! {"dim": 2, "basis": ["a", "b"], "mult": [[0, 0, {"0": "1"}], [0, 1, {"1": "1/2"}]]}
//! ```
//!
//! listing the nonzero structure constants `e_i e_j = Σ c_k e_k`, or a preset
//! descriptor such as `{"preset": "matrix", "k": 2}` or
//! `{"preset": "direct_sum", "a": {...}, "b": {...}}`.
//!
//! An extension has `B`, `A`, `D` and the maps `i`, `j` as row-major arrays
//! (nested rows or one flat array), or just `A` and `ideal`, a list of
//! vectors in `A` spanning the ideal.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{quotient_extension, Algebra, AlgebraError, Extension, Preset};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(at) => message[..at].to_string(),
            None => message,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Either form of an algebra in a file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Box<AlgebraDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Box<AlgebraDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<(usize, usize, BTreeMap<usize, Rational>)>>,
}

/// A matrix as nested rows or as one flat row-major array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Rows(Vec<Vec<Rational>>),
    Flat(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<AlgebraDoc>,
    #[serde(rename = "A")]
    pub a: AlgebraDoc,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<Vec<Rational>>>,
}

/// What a file turned out to contain.
#[derive(Debug, Clone)]
pub enum Document {
    Algebra(Algebra),
    Extension(Extension),
}

fn param(name: &str, key: &str, value: Option<i64>) -> Result<usize, AlgebraError> {
    match value {
        None => Err(AlgebraError::MissingParameter {
            name: name.into(),
            param: key.into(),
        }),
        Some(v) if v <= 0 => Err(AlgebraError::NonPositiveParameter {
            name: name.into(),
            param: key.into(),
            value: v,
        }),
        Some(v) => Ok(v as usize),
    }
}

impl AlgebraDoc {
    pub fn preset(&self) -> Result<Option<Preset>, FormatError> {
        let Some(name) = &self.preset else {
            return Ok(None);
        };
        let p = match name.as_str() {
            "matrix" => Preset::Matrix {
                k: param(name, "k", self.k)?,
            },
            "truncated_poly" => Preset::TruncatedPoly {
                m: param(name, "m", self.m)?,
            },
            "zero_mult" => Preset::ZeroMult {
                d: param(name, "d", self.d)?,
            },
            "upper_triangular" => Preset::UpperTriangular {
                k: param(name, "k", self.k)?,
            },
            "field" => Preset::Field,
            "direct_sum" => {
                let part = |x: &Option<Box<AlgebraDoc>>, key: &str| -> Result<Preset, FormatError> {
                    let doc = x.as_ref().ok_or_else(|| AlgebraError::MissingParameter {
                        name: name.clone(),
                        param: key.into(),
                    })?;
                    doc.preset()?.ok_or_else(|| {
                        FormatError::Invalid(format!("direct_sum part `{key}` must be a preset descriptor"))
                    })
                };
                Preset::DirectSum(Box::new(part(&self.a, "a")?), Box::new(part(&self.b, "b")?))
            }
            other => return Err(AlgebraError::UnknownPreset(other.into()).into()),
        };
        Ok(Some(p))
    }

    pub fn build(&self) -> Result<Algebra, FormatError> {
        if let Some(p) = self.preset()? {
            let alg = p.build()?;
            return Ok(match &self.name {
                Some(n) => alg.with_name(n.clone()),
                None => alg,
            });
        }
        let dim = self
            .dim
            .or(self.basis.as_ref().map(Vec::len))
            .ok_or_else(|| FormatError::Invalid("inline algebra needs `dim` or `basis`".into()))?;
        let basis = match &self.basis {
            Some(b) if b.len() != dim => {
                return Err(AlgebraError::BasisLength { names: b.len(), dim }.into());
            }
            Some(b) => b.clone(),
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let consts = self
            .mult
            .iter()
            .flatten()
            .flat_map(|(i, j, row)| row.iter().map(move |(k, c)| (*i, *j, *k, c.clone())));
        let name = self.name.clone().unwrap_or_else(|| format!("algebra of dim {dim}"));
        Ok(Algebra::from_constants(name, basis, consts)?)
    }

    /// Inline form of an algebra, listing every nonzero structure constant.
    pub fn inline(alg: &Algebra) -> Self {
        let d = alg.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let row: BTreeMap<usize, Rational> = alg.product(i, j).iter().map(|(k, c)| (k, c.clone())).collect();
                if !row.is_empty() {
                    mult.push((i, j, row));
                }
            }
        }
        AlgebraDoc {
            name: Some(alg.name().to_string()),
            dim: Some(d),
            basis: Some(alg.basis_names().to_vec()),
            mult: Some(mult),
            ..Default::default()
        }
    }
}

impl MatrixDoc {
    pub fn build(&self, rows: usize, cols: usize, what: &str) -> Result<Matrix, FormatError> {
        let data: Vec<Vec<Rational>> = match self {
            MatrixDoc::Rows(r) => r.clone(),
            MatrixDoc::Flat(f) => {
                if f.len() != rows * cols {
                    return Err(FormatError::Invalid(format!(
                        "map `{what}` has {} entries, expected {rows}x{cols} = {}",
                        f.len(),
                        rows * cols
                    )));
                }
                f.chunks(cols.max(1)).map(<[Rational]>::to_vec).collect()
            }
        };
        let flat_empty = matches!(self, MatrixDoc::Flat(_)) && rows * cols == 0;
        if !flat_empty && (data.len() != rows || data.iter().any(|r| r.len() != cols)) {
            return Err(FormatError::Invalid(format!(
                "map `{what}` must be {rows}x{cols} (rows of equal length)"
            )));
        }
        let data = if flat_empty { vec![Vec::new(); rows] } else { data };
        Ok(Matrix::from_rows(rows, cols, &data))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixDoc::Rows(m.to_dense())
    }
}

impl ExtensionDoc {
    pub fn build(&self) -> Result<Extension, FormatError> {
        let a = self.a.build()?;
        if let Some(ideal) = &self.ideal {
            if self.b.is_some() || self.d.is_some() || self.i.is_some() || self.j.is_some() {
                return Err(FormatError::Invalid(
                    "give either `ideal` or all of `B`, `D`, `i`, `j`, not both".into(),
                ));
            }
            if let Some(bad) = ideal.iter().position(|v| v.len() != a.dim()) {
                return Err(FormatError::Invalid(format!(
                    "ideal vector {bad} has length {}, expected dim A = {}",
                    ideal[bad].len(),
                    a.dim()
                )));
            }
            let gens = Matrix::from_rows(ideal.len(), a.dim(), ideal).transpose();
            return Ok(quotient_extension(&a, &gens)?);
        }
        let missing = |k: &str| FormatError::Invalid(format!("extension needs `{k}` (or `ideal`)"));
        let b = self.b.as_ref().ok_or_else(|| missing("B"))?.build()?;
        let d = self.d.as_ref().ok_or_else(|| missing("D"))?.build()?;
        let i = self.i.as_ref().ok_or_else(|| missing("i"))?.build(a.dim(), b.dim(), "i")?;
        let j = self.j.as_ref().ok_or_else(|| missing("j"))?.build(d.dim(), a.dim(), "j")?;
        Ok(Extension { b, a, d, i, j })
    }

    pub fn inline(ext: &Extension) -> Self {
        ExtensionDoc {
            b: Some(AlgebraDoc::inline(&ext.b)),
            a: AlgebraDoc::inline(&ext.a),
            d: Some(AlgebraDoc::inline(&ext.d)),
            i: Some(MatrixDoc::from_matrix(&ext.i)),
            j: Some(MatrixDoc::from_matrix(&ext.j)),
            ideal: None,
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    serde_json::from_str::<AlgebraDoc>(text)?.build()
}

pub fn parse_extension(text: &str) -> Result<Extension, FormatError> {
    serde_json::from_str::<ExtensionDoc>(text)?.build()
}

/// An extension if the top-level object has an `A` key, otherwise an algebra.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("A").is_some() {
        parse_extension(text).map(Document::Extension)
    } else {
        parse_algebra(text).map(Document::Algebra)
    }
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::inline(alg)).expect("algebra documents serialize")
}

pub fn extension_to_json(ext: &Extension) -> String {
    serde_json::to_string_pretty(&ExtensionDoc::inline(ext)).expect("extension documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_algebra, validate_extension};

    #[test]
    fn preset_descriptors() {
        let m = parse_algebra(r#"{"preset": "matrix", "k": 2}"#).unwrap();
        assert_eq!(m.dim(), 4);
        let s = parse_algebra(
            r#"{"preset": "direct_sum", "a": {"preset": "field"}, "b": {"preset": "upper_triangular", "k": 2}}"#,
        )
        .unwrap();
        assert_eq!(s.dim(), 4);
        assert!(matches!(
            parse_algebra(r#"{"preset": "matrix", "k": 0}"#),
            Err(FormatError::Algebra(AlgebraError::NonPositiveParameter { .. }))
        ));
        assert!(matches!(
            parse_algebra(r#"{"preset": "octonions"}"#),
            Err(FormatError::Algebra(AlgebraError::UnknownPreset(_)))
        ));
    }

    #[test]
    fn inline_round_trip() {
        let alg = Preset::UpperTriangular { k: 2 }.build().unwrap();
        let back = parse_algebra(&algebra_to_json(&alg)).unwrap();
        assert_eq!(back, alg);
        let text = r#"{"dim": 1, "mult": [[0, 0, {"0": "1/2"}]]}"#;
        let half = parse_algebra(text).unwrap();
        assert_eq!(half.constant(0, 0, 0), Rational::new(1, 2));
        assert!(validate_algebra(&half).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_algebra("{\n  \"dim\": 2,\n  \"mult\": [[0, 0, {\"0\": \"1/0\"}]]\n}").unwrap_err();
        match err {
            FormatError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_algebra("{\"dim\": 2,,}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, column: 11, .. }), "{err:?}");
    }

    #[test]
    fn extension_forms() {
        let explicit = r#"{
            "B": {"preset": "field"}, "A": {"preset": "direct_sum", "a": {"preset": "field"}, "b": {"preset": "field"}},
            "D": {"preset": "field"}, "i": [["1"], ["0"]], "j": ["0", "1"]
        }"#;
        let ext = parse_extension(explicit).unwrap();
        validate_extension(&ext).unwrap();
        let ideal = r#"{"A": {"preset": "upper_triangular", "k": 2}, "ideal": [["0", "1", "0"]]}"#;
        let ext = parse_extension(ideal).unwrap();
        validate_extension(&ext).unwrap();
        assert_eq!((ext.b.dim(), ext.d.dim()), (1, 2));
        let back = parse_extension(&extension_to_json(&ext)).unwrap();
        assert_eq!((back.i, back.j), (ext.i, ext.j));
        assert!(matches!(parse_document(ideal).unwrap(), Document::Extension(_)));
        assert!(matches!(
            parse_document(r#"{"preset": "field"}"#).unwrap(),
            Document::Algebra(_)
        ));
        assert!(matches!(
            parse_extension(r#"{"A": {"preset": "field"}, "B": {"preset": "field"}}"#),
            Err(FormatError::Invalid(_))
        ));
    }
}
