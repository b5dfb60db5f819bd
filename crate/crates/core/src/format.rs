//! On-disk algebra files and serde helpers for exact rationals.
//!
//! ```json
//! {
//!   "even": 3,
//!   "odd": 0,
//!   "brackets": [ { "i": 0, "j": 1, "coeffs": { "2": "1" } } ]
//! }
//! ```
//!
//! Rationals are written as `"p"` or `"p/q"` strings so files stay exact.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{GradedDim, GradedSubspace, StructureError, SuperAlgebra};
use crate::linalg::{format_rational, parse_rational, Rational};

pub mod rational {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::linalg::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}")))
    }
}

pub mod rational_vec {
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use crate::linalg::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| parse_rational(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))))
            .collect()
    }
}

pub mod rational_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::linalg::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        use serde::de::Error;
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => parse_rational(&s).map(Some).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub even: usize,
    pub odd: usize,
    pub brackets: Vec<BracketRecord>,
    /// Optional graded subspace (e.g. the kernel of a stem cover), one
    /// homogeneous vector per row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bracket record {record}: coefficient index {index} out of range")]
    CoefficientIndex { record: usize, index: usize },
    #[error("bracket record {record}: cannot parse coefficient {value:?} as a rational")]
    CoefficientValue { record: usize, value: String },
    #[error("ideal row {row}: {reason}")]
    Ideal { row: usize, reason: String },
    #[error("bracket record {record}: {source}")]
    Structure { record: usize, source: StructureError },
}

/// An algebra loaded from a file, with its optional marked subspace.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub algebra: SuperAlgebra,
    pub ideal: Option<GradedSubspace>,
}

impl AlgebraFile {
    pub fn from_algebra(algebra: &SuperAlgebra, ideal: Option<&GradedSubspace>) -> Self {
        let brackets = algebra
            .table()
            .iter()
            .map(|(&(i, j), v)| BracketRecord {
                i,
                j,
                coeffs: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, format_rational(c)))
                    .collect(),
            })
            .collect();
        let ideal =
            ideal.map(|s| s.basis_vectors().iter().map(|row| row.iter().map(format_rational).collect()).collect());
        Self { even: algebra.dim().even, odd: algebra.dim().odd, brackets, ideal }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("algebra file serializes");
        s.push('\n');
        s
    }

    pub fn load(&self) -> Result<LoadedAlgebra, FormatError> {
        let dim = GradedDim::new(self.even, self.odd);
        let total = dim.total();
        let mut algebra_entries = Vec::with_capacity(self.brackets.len());
        for (record, b) in self.brackets.iter().enumerate() {
            let mut coeffs = vec![Rational::zero(); total];
            for (&k, value) in &b.coeffs {
                if k >= total {
                    return Err(FormatError::CoefficientIndex { record, index: k });
                }
                coeffs[k] = parse_rational(value)
                    .ok_or_else(|| FormatError::CoefficientValue { record, value: value.clone() })?;
            }
            algebra_entries.push(((b.i, b.j), coeffs));
        }
        // Validate one record at a time so errors carry a location.
        for (record, entry) in algebra_entries.iter().enumerate() {
            SuperAlgebra::new(dim, [entry.clone()]).map_err(|source| FormatError::Structure { record, source })?;
        }
        let algebra = SuperAlgebra::new(dim, algebra_entries).map_err(|source| {
            let record = match &source {
                StructureError::DuplicatePair { i, j } => {
                    self.brackets.iter().rposition(|b| b.i == *i && b.j == *j).unwrap_or(0)
                }
                _ => 0,
            };
            FormatError::Structure { record, source }
        })?;
        let ideal = match &self.ideal {
            None => None,
            Some(rows) => {
                let mut vectors = Vec::with_capacity(rows.len());
                for (row, r) in rows.iter().enumerate() {
                    if r.len() != total {
                        return Err(FormatError::Ideal { row, reason: format!("expected {total} entries") });
                    }
                    let v: Option<Vec<Rational>> = r.iter().map(|s| parse_rational(s)).collect();
                    vectors.push(v.ok_or_else(|| FormatError::Ideal { row, reason: "bad rational".into() })?);
                }
                Some(
                    GradedSubspace::from_vectors(dim, &vectors)
                        .map_err(|e| FormatError::Ideal { row: 0, reason: e.to_string() })?,
                )
            }
        };
        Ok(LoadedAlgebra { algebra, ideal })
    }
}
