//! JSON algebra files.
//!
//! ```json
//! {
//!   "alpha": [["1", "0"], ["0", "2"]],
//!   "arity": 2,
//!   "brackets": [{ "args": [0, 1], "value": [{ "coeff": "1", "index": 1 }] }],
//!   "dim": 2,
//!   "parity": [0, 0]
//! }
//! ```
//!
//! Indices are 0-based. Rationals are `"p"` or `"p/q"` strings; plain JSON
//! integers are accepted on input. Tuples not listed have zero bracket.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, NHomAlgebra};
use crate::linalg::{format_scalar, parse_scalar, Mat, Scalar};
use crate::parity::Parity;
use crate::report::to_canonical_json;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message} (line {line}, column {column})")]
    Schema {
        path: String,
        message: String,
        line: usize,
        column: usize,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("bracket of {tuple:?} breaks the degree law at output index {index}")]
    DegreeLaw { tuple: Vec<usize>, index: usize },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

/// A rational read from a string or an integer, written as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p\" or \"p/q\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_scalar(v).map(Rational).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Rational,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: Vec<Term>,
}

/// The document as written on disk, before any semantic checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub alpha: Vec<Vec<Rational>>,
    pub arity: usize,
    pub brackets: Vec<BracketEntry>,
    pub dim: usize,
    pub parity: Vec<u8>,
}

impl AlgebraFile {
    /// Canonical form: nonzero brackets only, sorted by tuple, terms sorted by index.
    pub fn from_algebra(alg: &NHomAlgebra) -> Self {
        let brackets = alg
            .table()
            .iter()
            .map(|(args, value)| BracketEntry {
                args: args.clone(),
                value: value
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(index, c)| Term {
                        coeff: Rational(c.clone()),
                        index,
                    })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            alpha: alg.alpha().to_rows().into_iter().map(|r| r.into_iter().map(Rational).collect()).collect(),
            arity: alg.arity(),
            brackets,
            dim: alg.dim(),
            parity: alg.parity().iter().map(|p| p.bit()).collect(),
        }
    }

    pub fn into_algebra(self) -> Result<NHomAlgebra, FormatError> {
        let d = self.dim;
        if self.arity < 2 {
            return Err(invalid("arity", format!("must be at least 2, got {}", self.arity)));
        }
        if self.parity.len() != d {
            return Err(invalid("parity", format!("has length {}, expected dim = {d}", self.parity.len())));
        }
        let parity: Vec<Parity> = self
            .parity
            .iter()
            .enumerate()
            .map(|(i, &b)| Parity::from_bit(b).ok_or_else(|| invalid(format!("parity[{i}]"), format!("must be 0 or 1, got {b}"))))
            .collect::<Result<_, _>>()?;
        if self.alpha.len() != d {
            return Err(invalid("alpha", format!("has {} rows, expected {d}", self.alpha.len())));
        }
        for (r, row) in self.alpha.iter().enumerate() {
            if row.len() != d {
                return Err(invalid(format!("alpha[{r}]"), format!("has {} entries, expected {d}", row.len())));
            }
        }
        let alpha = Mat::from_fn(d, d, |r, c| self.alpha[r][c].0.clone());

        let mut seen = BTreeSet::new();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (b, entry) in self.brackets.into_iter().enumerate() {
            let at = |field: &str| format!("brackets[{b}].{field}");
            let args = entry.args;
            if args.len() != self.arity {
                return Err(invalid(at("args"), format!("has length {}, expected arity = {}", args.len(), self.arity)));
            }
            if let Some(&i) = args.iter().find(|&&i| i >= d) {
                return Err(invalid(at("args"), format!("index {i} out of range for dim {d}")));
            }
            if args.windows(2).any(|w| w[0] > w[1]) {
                return Err(invalid(at("args"), format!("{args:?} is not weakly increasing")));
            }
            if let Some(w) = args.windows(2).find(|w| w[0] == w[1] && !parity[w[0]].is_odd()) {
                return Err(invalid(
                    at("args"),
                    format!("repeats the even index {}; such brackets vanish by skew-symmetry", w[0]),
                ));
            }
            if !seen.insert(args.clone()) {
                return Err(invalid(at("args"), format!("{args:?} is listed twice")));
            }
            let mut value = vec![Scalar::zero(); d];
            let mut indices = BTreeSet::new();
            for (t, term) in entry.value.into_iter().enumerate() {
                let here = format!("brackets[{b}].value[{t}].index");
                if term.index >= d {
                    return Err(invalid(here, format!("index {} out of range for dim {d}", term.index)));
                }
                if !indices.insert(term.index) {
                    return Err(invalid(here, format!("index {} is listed twice", term.index)));
                }
                value[term.index] = term.coeff.0;
            }
            brackets.push((args, value));
        }

        let alg = NHomAlgebra::new(self.arity, parity, brackets, alpha).map_err(|e| invalid("", e.to_string()))?;
        match alg.check_degree_law() {
            Ok(()) => Ok(alg),
            Err(AlgebraError::DegreeLaw { tuple, index }) => Err(FormatError::DegreeLaw { tuple, index }),
            Err(e) => Err(invalid("brackets", e.to_string())),
        }
    }
}

/// Parses an algebra document; rejects anything that is not in range,
/// not weakly increasing, or breaks the degree law.
pub fn parse_algebra_str(text: &str) -> Result<NHomAlgebra, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: AlgebraFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        FormatError::Schema {
            path,
            message: inner.to_string(),
            line: inner.line(),
            column: inner.column(),
        }
    })?;
    file.into_algebra()
}

pub fn parse_algebra(path: impl AsRef<Path>) -> Result<NHomAlgebra, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra_str(&text)
}

/// Canonical text: sorted keys, lowest-terms rationals, fixed indentation.
pub fn serialize_algebra(alg: &NHomAlgebra) -> String {
    to_canonical_json(&AlgebraFile::from_algebra(alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const AFF1: &str = r#"{"arity": 2, "dim": 2, "parity": [0, 0],
        "alpha": [[1, 0], ["0", "1"]],
        "brackets": [{"args": [0, 1], "value": [{"index": 1, "coeff": "1"}]}]}"#;

    fn err(text: &str) -> FormatError {
        parse_algebra_str(text).unwrap_err()
    }

    #[test]
    fn parses_aff1_with_mixed_rationals() {
        assert_eq!(parse_algebra_str(AFF1).unwrap(), fixtures::aff1());
    }

    #[test]
    fn empty_brackets_give_an_abelian_algebra() {
        let a = parse_algebra_str(r#"{"arity":2,"dim":2,"parity":[0,0],"alpha":[[1,0],[0,1]],"brackets":[]}"#).unwrap();
        assert_eq!(a, fixtures::abelian2());
    }

    #[test]
    fn rejects_decreasing_args() {
        let e = err(&AFF1.replace("[0, 1]", "[1, 0]"));
        assert!(matches!(&e, FormatError::Invalid { path, .. } if path == "brackets[0].args"), "{e}");
        assert!(e.to_string().contains("not weakly increasing"));
    }

    #[test]
    fn rejects_bad_fields_with_paths() {
        let e = err(&AFF1.replace("\"coeff\": \"1\"", "\"coeff\": \"1/0\""));
        assert!(matches!(&e, FormatError::Schema { path, .. } if path == "brackets[0].value[0].coeff"), "{e}");
        let e = err(&AFF1.replace("\"index\": 1", "\"index\": 5"));
        assert!(e.to_string().starts_with("brackets[0].value[0].index"), "{e}");
        let e = err(&AFF1.replace("[0, 1]", "[0, 2]"));
        assert!(e.to_string().contains("out of range"), "{e}");
        let e = err(&AFF1.replace("[0, 1]", "[1, 1]"));
        assert!(e.to_string().contains("even index 1"), "{e}");
        let e = err(&AFF1.replace("\"parity\": [0, 0]", "\"parity\": [0, 2]"));
        assert!(e.to_string().starts_with("parity[1]"), "{e}");
        let e = err(&AFF1.replace("\"parity\": [0, 0]", "\"parity\": [0]"));
        assert!(e.to_string().starts_with("parity"), "{e}");
        let e = err("{\"arity\": 2,");
        assert!(matches!(e, FormatError::Schema { line: 1, .. }), "{e}");
    }

    #[test]
    fn rejects_degree_law_violations() {
        let text = serialize_algebra(&fixtures::super2()).replace("\"index\": 1", "\"index\": 0");
        assert!(matches!(err(&text), FormatError::DegreeLaw { tuple, index: 0 } if tuple == vec![0, 1]));
    }

    #[test]
    fn serialization_round_trips() {
        for (_, alg) in fixtures::bundled() {
            let text = serialize_algebra(&alg);
            let back = parse_algebra_str(&text).unwrap();
            assert_eq!(back, alg);
            assert_eq!(serialize_algebra(&back), text);
        }
    }

    #[test]
    fn bundled_files_match_fixtures() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        for (name, alg) in fixtures::bundled() {
            let path = dir.join(format!("{name}.json"));
            let text = std::fs::read_to_string(&path).unwrap();
            assert_eq!(text, serialize_algebra(&alg), "{}", path.display());
        }
    }
}
